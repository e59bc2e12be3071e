#include "mtk1/linear_groups.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "mtk1/constructions.hpp"

namespace mtk1 {

namespace {

struct FieldSpec {
  int p;
  int e;
  std::vector<int> modulus;  // monic, constant term first, length e + 1
};

const std::map<int, FieldSpec>& prime_power_fields() {
  static const std::map<int, FieldSpec> table = {
      {4, {2, 2, {1, 1, 1}}},     {8, {2, 3, {1, 1, 0, 1}}},  {9, {3, 2, {1, 0, 1}}},
      {16, {2, 4, {1, 1, 0, 0, 1}}}, {25, {5, 2, {2, 1, 1}}}, {27, {3, 3, {1, 2, 0, 1}}},
  };
  return table;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<int> digits(int a, int p, int e) {
  std::vector<int> d(e);
  for (int i = 0; i < e; ++i) {
    d[i] = a % p;
    a /= p;
  }
  return d;
}

int from_digits(const std::vector<int>& d, int p) {
  int a = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p + d[i];
  return a;
}

}  // namespace

MatRing MatRing::integers_mod(int m) {
  if (m < 2 || m > 256) throw std::invalid_argument("Z_m supported for 2 <= m <= 256");
  MatRing r;
  r.kind_ = Kind::IntegersMod;
  r.size_ = m;
  r.characteristic_ = m;
  r.add_.resize(m * m);
  r.mul_.resize(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      r.add_[a * m + b] = (a + b) % m;
      r.mul_[a * m + b] = (a * b) % m;
    }
  r.finish();
  return r;
}

MatRing MatRing::finite_field(int q) {
  MatRing r;
  r.kind_ = Kind::FiniteField;
  r.size_ = q;
  if (is_prime(q)) {
    if (q > 251) throw std::invalid_argument("prime fields supported up to F_251");
    r.characteristic_ = q;
    r.add_.resize(q * q);
    r.mul_.resize(q * q);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        r.add_[a * q + b] = (a + b) % q;
        r.mul_[a * q + b] = (a * b) % q;
      }
  } else {
    auto it = prime_power_fields().find(q);
    if (it == prime_power_fields().end())
      throw std::invalid_argument("no field table for q = " + std::to_string(q));
    const FieldSpec& f = it->second;
    r.characteristic_ = f.p;
    r.add_.resize(q * q);
    r.mul_.resize(q * q);
    for (int a = 0; a < q; ++a) {
      auto da = digits(a, f.p, f.e);
      for (int b = 0; b < q; ++b) {
        auto db = digits(b, f.p, f.e);
        std::vector<int> s(f.e);
        for (int i = 0; i < f.e; ++i) s[i] = (da[i] + db[i]) % f.p;
        r.add_[a * q + b] = from_digits(s, f.p);
        std::vector<int> prod(2 * f.e - 1, 0);
        for (int i = 0; i < f.e; ++i)
          for (int j = 0; j < f.e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % f.p;
        // reduce modulo the monic modulus from the top degree down
        for (int k = 2 * f.e - 2; k >= f.e; --k) {
          int c = prod[k];
          if (c == 0) continue;
          for (int i = 0; i <= f.e; ++i) {
            int& slot = prod[k - f.e + i];
            slot = ((slot - c * f.modulus[i]) % f.p + f.p) % f.p;
          }
        }
        prod.resize(f.e);
        r.mul_[a * q + b] = from_digits(prod, f.p);
      }
    }
  }
  r.finish();
  if (static_cast<int>(r.units_.size()) != q - 1)
    throw std::logic_error("field table for q = " + std::to_string(q) + " has zero divisors");
  if (q <= 16) {
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        if (r.add(a, b) != r.add(b, a) || r.mul(a, b) != r.mul(b, a))
          throw std::logic_error("field table not commutative");
        for (int c = 0; c < q; ++c) {
          if (r.mul(a, r.mul(b, c)) != r.mul(r.mul(a, b), c) ||
              r.add(a, r.add(b, c)) != r.add(r.add(a, b), c) ||
              r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
            throw std::logic_error("field table violates the ring axioms");
        }
      }
  }
  return r;
}

void MatRing::finish() {
  const int n = size_;
  neg_.assign(n, -1);
  inv_.assign(n, -1);
  units_.clear();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (add(a, b) == 0) neg_[a] = b;
      if (mul(a, b) == 1 % n) inv_[a] = b;
    }
  for (int a = 0; a < n; ++a)
    if (inv_[a] >= 0) units_.push_back(a);
}

std::string MatRing::name() const {
  return (kind_ == Kind::FiniteField ? "F_" : "Z_") + std::to_string(size_);
}

int MatRing::inv(int a) const {
  if (inv_[a] < 0) throw std::domain_error(std::to_string(a) + " is not a unit of " + name());
  return inv_[a];
}

UnitSumWitness MatRing::unit_sum_witness() const {
  for (int u : units_) {
    int v = sub(1, u);
    if (is_unit(v)) return {true, u, v};
  }
  return {};
}

// ---------------------------------------------------------------------------

MatrixRep::MatrixRep(int n, MatRing ring) : n_(n), ring_(std::move(ring)) {
  if (n < 1 || n > 4) throw std::invalid_argument("matrix size must be between 1 and 4");
}

Code MatrixRep::identity() const {
  Code c(n_ * n_, 0);
  for (int i = 0; i < n_; ++i) c[i * n_ + i] = 1;
  return c;
}

Code MatrixRep::multiply(const Code& a, const Code& b) const {
  Code c(n_ * n_, 0);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      int aik = a[i * n_ + k];
      if (aik == 0) continue;
      for (int j = 0; j < n_; ++j)
        c[i * n_ + j] = ring_.add(c[i * n_ + j], ring_.mul(aik, b[k * n_ + j]));
    }
  return c;
}

namespace {

int det_rec(const MatRing& r, const std::vector<int>& m, int n) {
  if (n == 1) return m[0];
  if (n == 2) return r.sub(r.mul(m[0], m[3]), r.mul(m[1], m[2]));
  int d = 0;
  std::vector<int> minor((n - 1) * (n - 1));
  for (int col = 0; col < n; ++col) {
    if (m[col] == 0) continue;
    int k = 0;
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (j != col) minor[k++] = m[i * n + j];
    int term = r.mul(m[col], det_rec(r, minor, n - 1));
    d = (col % 2 == 0) ? r.add(d, term) : r.sub(d, term);
  }
  return d;
}

}  // namespace

int MatrixRep::determinant(const Code& a) const {
  return det_rec(ring_, std::vector<int>(a.begin(), a.end()), n_);
}

Code MatrixRep::inverse(const Code& a) const {
  int dinv = ring_.inv(determinant(a));
  if (n_ == 1) return {dinv};
  Code c(n_ * n_);
  std::vector<int> minor((n_ - 1) * (n_ - 1));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      // adjugate entry (j, i) is the (i, j) cofactor
      int k = 0;
      for (int r = 0; r < n_; ++r)
        for (int s = 0; s < n_; ++s)
          if (r != i && s != j) minor[k++] = a[r * n_ + s];
      int cof = det_rec(ring_, minor, n_ - 1);
      if ((i + j) % 2) cof = ring_.neg(cof);
      c[j * n_ + i] = ring_.mul(dinv, cof);
    }
  return c;
}

bool MatrixRep::is_valid(const Code& a) const {
  if (static_cast<int>(a.size()) != n_ * n_) return false;
  for (auto v : a)
    if (v < 0 || v >= ring_.size()) return false;
  return ring_.is_unit(determinant(a));
}

std::string MatrixRep::format(const Code& a) const {
  std::ostringstream out;
  out << '[';
  for (int i = 0; i < n_; ++i) {
    out << (i ? ",[" : "[");
    for (int j = 0; j < n_; ++j) out << (j ? "," : "") << a[i * n_ + j];
    out << ']';
  }
  out << ']';
  return out.str();
}

std::string MatrixRep::name() const {
  return "GL_" + std::to_string(n_) + "(" + ring_.name() + ")";
}

VectorRep::VectorRep(int dim, MatRing ring) : dim_(dim), ring_(std::move(ring)) {
  if (dim < 1) throw std::invalid_argument("vector dimension must be positive");
}

Code VectorRep::identity() const { return Code(dim_, 0); }

Code VectorRep::multiply(const Code& a, const Code& b) const {
  Code c(dim_);
  for (int i = 0; i < dim_; ++i) c[i] = ring_.add(a[i], b[i]);
  return c;
}

Code VectorRep::inverse(const Code& a) const {
  Code c(dim_);
  for (int i = 0; i < dim_; ++i) c[i] = ring_.neg(a[i]);
  return c;
}

bool VectorRep::is_valid(const Code& a) const {
  if (static_cast<int>(a.size()) != dim_) return false;
  for (auto v : a)
    if (v < 0 || v >= ring_.size()) return false;
  return true;
}

std::string VectorRep::format(const Code& a) const {
  std::ostringstream out;
  out << '(';
  for (int i = 0; i < dim_; ++i) out << (i ? "," : "") << a[i];
  out << ')';
  return out.str();
}

std::string VectorRep::name() const {
  return ring_.name() + "^" + std::to_string(dim_);
}

// ---------------------------------------------------------------------------

std::uint64_t gl_order(int n, int q) {
  std::uint64_t qn = 1;
  for (int i = 0; i < n; ++i) qn *= static_cast<std::uint64_t>(q);
  std::uint64_t order = 1;
  std::uint64_t qi = 1;
  for (int i = 0; i < n; ++i) {
    order *= qn - qi;
    qi *= static_cast<std::uint64_t>(q);
  }
  return order;
}

namespace {

std::vector<Code> transvections(const MatrixRep& rep) {
  const int n = rep.dimension();
  std::vector<Code> gens;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int c = 1; c < rep.ring().size(); ++c) {
        Code t = rep.identity();
        t[i * n + j] = c;
        gens.push_back(std::move(t));
      }
    }
  return gens;
}

}  // namespace

FiniteGroup gl_group(int n, const MatRing& ring, std::size_t cap) {
  if (ring.is_field() && gl_order(n, ring.size()) > cap) throw CapExceeded(cap);
  auto rep = std::make_shared<MatrixRep>(n, ring);
  std::vector<Code> gens = transvections(*rep);
  for (int u : ring.units()) {
    if (u == 1) continue;
    Code d = rep->identity();
    d[0] = u;
    gens.push_back(std::move(d));
  }
  FiniteGroup g = enumerate_group(rep, gens, cap);
  if (ring.is_field() && g.order() != gl_order(n, ring.size()))
    throw std::logic_error("internal: GL generators do not generate GL");
  return g;
}

FiniteGroup sl_group(int n, const MatRing& ring, std::size_t cap) {
  FiniteGroup gl = gl_group(n, ring, cap);
  const auto& rep = static_cast<const MatrixRep&>(*gl.rep());
  std::vector<Code> gens;
  FiniteGroup sl = enumerate_group(gl.rep(), gens, cap);
  for (const auto& code : gl.elements()) {
    if (rep.determinant(code) != 1 || sl.contains(code)) continue;
    gens.push_back(code);
    sl = enumerate_group(gl.rep(), gens, cap);
  }
  return sl;
}

FiniteGroup elementary_closure(int n, const MatRing& ring, std::size_t cap) {
  auto rep = std::make_shared<MatrixRep>(n, ring);
  return enumerate_group(rep, transvections(*rep), cap);
}

FiniteGroup affine_group(int n, const MatRing& field, int copies, std::size_t cap) {
  if (copies < 1) throw std::invalid_argument("affine_group needs at least one module copy");
  FiniteGroup gl = gl_group(n, field, cap);
  const int dim = n * copies;
  std::uint64_t module_order = 1;
  for (int i = 0; i < dim; ++i) module_order *= static_cast<std::uint64_t>(field.size());
  if (module_order * gl.order() > cap) throw CapExceeded(cap);

  auto vrep = std::make_shared<VectorRep>(dim, field);
  std::vector<Code> vgens;
  for (int i = 0; i < dim; ++i)
    for (int c = 1; c < field.size(); ++c) {
      Code v(dim, 0);
      v[i] = c;
      vgens.push_back(std::move(v));
    }
  FiniteGroup module = enumerate_group(vrep, vgens, cap);

  const FiniteGroup* gl_ptr = &gl;
  const FiniteGroup* module_ptr = &module;
  auto act = [&, gl_ptr, module_ptr](std::size_t k, std::size_t h) {
    const Code& a = gl_ptr->element(k);
    const Code& v = module_ptr->element(h);
    Code w(dim, 0);
    for (int block = 0; block < copies; ++block)
      for (int i = 0; i < n; ++i) {
        int s = 0;
        for (int j = 0; j < n; ++j) s = field.add(s, field.mul(a[i * n + j], v[block * n + j]));
        w[block * n + i] = s;
      }
    return module_ptr->index_of(w);
  };
  GroupAction action = GroupAction::from_function(gl, module, act);
  return semidirect(action, cap);
}

int det_class(const MatRing& ring, int n, std::span<const std::int32_t> matrix) {
  if (static_cast<int>(matrix.size()) != n * n)
    throw std::invalid_argument("matrix has the wrong number of entries");
  MatrixRep rep(n, ring);
  int d = rep.determinant(Code(matrix.begin(), matrix.end()));
  if (!ring.is_unit(d)) throw std::domain_error("matrix is singular over " + ring.name());
  return d;
}

bool is_known_gl_exception(int n, int q) { return n == 2 && q == 2; }

GlAbReport verify_gl_ab(int n, const MatRing& field, std::size_t cap) {
  if (!field.is_field()) throw std::invalid_argument("verify_gl_ab needs a finite field");
  GlAbReport r;
  r.n = n;
  r.q = field.size();
  FiniteGroup gl = gl_group(n, field, cap);
  FiniteGroup comm = commutator_subgroup(gl, gl.order());
  r.abelianization = quotient_invariants(gl, comm);
  r.units = AbInvariants::of({static_cast<std::uint64_t>(field.size() - 1)});
  r.matches = abelian_iso(r.abelianization, r.units);
  const auto& rep = static_cast<const MatrixRep&>(*gl.rep());
  bool all_det_one = true;
  for (const auto& code : comm.elements())
    if (rep.determinant(code) != 1) all_det_one = false;
  r.commutator_is_sl = all_det_one && comm.order() * (field.size() - 1) == gl.order();
  r.witness = field.unit_sum_witness();
  r.hypotheses_hold = n == 1 || n >= 3 || (n == 2 && r.witness.exists);
  r.known_exception = !r.matches && is_known_gl_exception(n, field.size());
  return r;
}

}  // namespace mtk1
