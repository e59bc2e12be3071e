#include "mtk1/definable.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mtk1 {

std::string dim_to_string(Dim d) { return d ? std::to_string(*d) : "-inf"; }

// ---------------------------------------------------------------------------
// AffineCoset

AffineCoset AffineCoset::whole(int n) {
  AffineCoset c;
  c.n_ = n;
  return c;
}

AffineCoset AffineCoset::empty(int n) {
  AffineCoset c;
  c.n_ = n;
  c.empty_ = true;
  return c;
}

AffineCoset AffineCoset::from_equations(int n, const std::vector<RatVec>& rows) {
  if (rows.empty()) return whole(n);
  RatMatrix m = RatMatrix::from_rows(rows, n + 1);
  auto pivots = rref(m);
  if (!pivots.empty() && pivots.back() == n) return empty(n);
  AffineCoset c = whole(n);
  for (std::size_t i = 0; i < pivots.size(); ++i) c.rows_.push_back(m.row(static_cast<int>(i)));
  return c;
}

AffineCoset AffineCoset::from_point(const RatVec& p, const std::vector<RatVec>& directions) {
  const int n = static_cast<int>(p.size());
  std::vector<RatVec> normals;
  if (directions.empty()) {
    for (int i = 0; i < n; ++i) {
      RatVec e(n);
      e[i] = 1;
      normals.push_back(std::move(e));
    }
  } else {
    normals = null_space(RatMatrix::from_rows(directions, n));
  }
  std::vector<RatVec> rows;
  for (auto& y : normals) {
    Rational rhs = dot(y, p);
    y.push_back(rhs);
    rows.push_back(std::move(y));
  }
  return from_equations(n, rows);
}

Dim AffineCoset::dim() const {
  if (empty_) return std::nullopt;
  return n_ - static_cast<int>(rows_.size());
}

namespace {

int pivot_of(const RatVec& row) {
  for (std::size_t j = 0; j + 1 < row.size(); ++j)
    if (row[j] != 0) return static_cast<int>(j);
  return -1;
}

}  // namespace

RatVec AffineCoset::base_point() const {
  if (empty_) throw std::logic_error("empty coset has no points");
  RatVec x(n_);
  for (const auto& row : rows_) x[pivot_of(row)] = row[n_];
  return x;
}

std::vector<RatVec> AffineCoset::directions() const {
  if (empty_) return {};
  std::vector<int> pivots;
  for (const auto& row : rows_) pivots.push_back(pivot_of(row));
  std::vector<RatVec> out;
  for (int f = 0; f < n_; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    RatVec v(n_);
    v[f] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) v[pivots[i]] = -rows_[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

AffineCoset AffineCoset::direction_subgroup() const {
  if (empty_) return *this;
  AffineCoset c = *this;
  for (auto& row : c.rows_) row[n_] = 0;
  return c;
}

bool AffineCoset::contains_point(const RatVec& x) const {
  if (empty_) return false;
  for (const auto& row : rows_) {
    Rational s = 0;
    for (int j = 0; j < n_; ++j) s += row[j] * x[j];
    if (s != row[n_]) return false;
  }
  return true;
}

bool AffineCoset::contains(const AffineCoset& other) const {
  if (other.empty_) return true;
  if (empty_) return false;
  if (!contains_point(other.base_point())) return false;
  for (const auto& d : other.directions())
    for (const auto& row : rows_) {
      Rational s = 0;
      for (int j = 0; j < n_; ++j) s += row[j] * d[j];
      if (s != 0) return false;
    }
  return true;
}

std::string AffineCoset::to_string() const {
  if (empty_) return "empty";
  if (rows_.empty()) return "Q^" + std::to_string(n_);
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) out << " & ";
    bool first = true;
    for (int j = 0; j < n_; ++j) {
      const Rational& a = rows_[i][j];
      if (a == 0) continue;
      Rational mag = abs(a);
      if (first) {
        if (a < 0) out << '-';
      } else {
        out << (a < 0 ? " - " : " + ");
      }
      if (mag != 1) out << mtk1::to_string(mag) << '*';
      out << 'x' << (j + 1);
      first = false;
    }
    out << " = " << mtk1::to_string(rows_[i][n_]);
  }
  return out.str();
}

bool operator<(const AffineCoset& a, const AffineCoset& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  if (a.empty_ != b.empty_) return a.empty_;
  if (a.rows_.size() != b.rows_.size()) return a.rows_.size() < b.rows_.size();
  for (std::size_t i = 0; i < a.rows_.size(); ++i)
    for (std::size_t j = 0; j < a.rows_[i].size(); ++j) {
      int c = cmp(a.rows_[i][j], b.rows_[i][j]);
      if (c != 0) return c < 0;
    }
  return false;
}

AffineCoset coset_intersect(const AffineCoset& p, const AffineCoset& q) {
  if (p.ambient() != q.ambient()) throw std::invalid_argument("coset ambient mismatch");
  if (p.is_empty() || q.is_empty()) return AffineCoset::empty(p.ambient());
  std::vector<RatVec> rows = p.equations();
  rows.insert(rows.end(), q.equations().begin(), q.equations().end());
  return AffineCoset::from_equations(p.ambient(), rows);
}

AffineCoset coset_project(const AffineCoset& p, int keep) {
  if (keep < 0 || keep > p.ambient()) throw std::invalid_argument("bad projection width");
  if (p.is_empty()) return AffineCoset::empty(keep);
  if (keep == 0) return AffineCoset::whole(0);
  RatVec point = p.base_point();
  point.resize(keep);
  std::vector<RatVec> dirs;
  for (auto d : p.directions()) {
    d.resize(keep);
    if (std::any_of(d.begin(), d.end(), [](const Rational& r) { return r != 0; }))
      dirs.push_back(std::move(d));
  }
  return AffineCoset::from_point(point, dirs);
}

AffineCoset coset_affine_image(const AffineCoset& p, const RatMatrix& a, const RatVec& b) {
  if (p.is_empty()) return p;
  RatVec point = a * p.base_point() + b;
  std::vector<RatVec> dirs;
  for (const auto& d : p.directions()) dirs.push_back(a * d);
  return AffineCoset::from_point(point, dirs);
}

// ---------------------------------------------------------------------------
// Blocks

bool Block::contains_point(const RatVec& x) const {
  if (!carrier.contains_point(x)) return false;
  return std::none_of(holes.begin(), holes.end(),
                      [&](const AffineCoset& h) { return h.contains_point(x); });
}

namespace {

// Drops empty cosets and cosets contained in another, then sorts. The union
// is unchanged.
std::vector<AffineCoset> reduce_antichain(std::vector<AffineCoset> cs) {
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  std::vector<AffineCoset> out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].is_empty()) continue;
    bool redundant = false;
    for (std::size_t j = 0; j < cs.size() && !redundant; ++j)
      if (i != j && !cs[j].is_empty() && cs[j].contains(cs[i])) redundant = true;
    if (!redundant) out.push_back(cs[i]);
  }
  return out;
}

}  // namespace

std::optional<Block> make_block(AffineCoset carrier, std::vector<AffineCoset> holes) {
  if (carrier.is_empty()) return std::nullopt;
  std::vector<AffineCoset> cut;
  for (const auto& h : holes) {
    AffineCoset c = coset_intersect(carrier, h);
    if (c.is_empty()) continue;
    // a coset over Q is never a finite union of proper sub-cosets
    if (c == carrier) return std::nullopt;
    cut.push_back(std::move(c));
  }
  return Block{std::move(carrier), reduce_antichain(std::move(cut))};
}

RatVec witness_point(const Block& b) {
  RatVec p = b.carrier.base_point();
  auto dirs = b.carrier.directions();
  // Each hole meets the moment curve t -> p + sum t^i d_i in at most
  // dim(carrier) parameters, so this loop terminates.
  const std::size_t limit = (b.holes.size() + 1) * (dirs.size() + 1) + 1;
  for (std::size_t t = 0; t <= limit; ++t) {
    RatVec x = p;
    Rational power = 1;
    for (const auto& d : dirs) {
      power *= static_cast<long>(t);
      x = x + scale(power, d);
    }
    if (b.contains_point(x)) return x;
  }
  throw std::logic_error("internal: no witness point for a nonempty block");
}

// ---------------------------------------------------------------------------
// K0Class

K0Class::K0Class(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

K0Class K0Class::monomial(int degree, std::int64_t coeff) {
  std::vector<std::int64_t> c(degree + 1, 0);
  c[degree] = coeff;
  return K0Class(std::move(c));
}

void K0Class::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Dim K0Class::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return static_cast<int>(coeffs_.size()) - 1;
}

std::int64_t K0Class::evaluate(std::int64_t x) const {
  std::int64_t v = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

K0Class K0Class::operator+(const K0Class& o) const {
  std::vector<std::int64_t> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return K0Class(std::move(c));
}

K0Class K0Class::operator-(const K0Class& o) const {
  std::vector<std::int64_t> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] -= o.coeffs_[i];
  return K0Class(std::move(c));
}

K0Class K0Class::operator*(const K0Class& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<std::int64_t> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return K0Class(std::move(c));
}

std::string K0Class::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int d = static_cast<int>(coeffs_.size()) - 1; d >= 0; --d) {
    std::int64_t c = coeffs_[d];
    if (c == 0) continue;
    std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || d == 0) out << mag;
    if (d >= 1) out << 'X';
    if (d >= 2) out << '^' << d;
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// DefinableSet

DefinableSet DefinableSet::whole(int n) {
  return from_coset(AffineCoset::whole(n));
}

DefinableSet DefinableSet::from_coset(const AffineCoset& c) {
  DefinableSet d(c.ambient());
  if (auto b = make_block(c, {})) d.blocks_.push_back(std::move(*b));
  return d;
}

DefinableSet DefinableSet::from_block(const Block& b) {
  DefinableSet d(b.carrier.ambient());
  d.blocks_.push_back(b);
  return d;
}

DefinableSet DefinableSet::from_disjoint_blocks(int n, std::vector<Block> blocks) {
  DefinableSet d(n);
  for (auto& b : blocks) {
    if (b.carrier.ambient() != n) throw std::invalid_argument("block ambient mismatch");
    d.blocks_.push_back(std::move(b));
  }
  return d;
}

bool DefinableSet::contains_point(const RatVec& x) const {
  return std::any_of(blocks_.begin(), blocks_.end(),
                     [&](const Block& b) { return b.contains_point(x); });
}

std::string DefinableSet::to_string() const {
  if (blocks_.empty()) return "{}";
  std::ostringstream out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out << " | ";
    out << '[' << blocks_[i].carrier.to_string();
    for (const auto& h : blocks_[i].holes) out << " \\ (" << h.to_string() << ')';
    out << ']';
  }
  return out.str();
}

namespace {

void require_same_ambient(const DefinableSet& a, const DefinableSet& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("definable sets live in different ambients");
}

std::optional<Block> block_intersect(const Block& a, const Block& b) {
  std::vector<AffineCoset> holes = a.holes;
  holes.insert(holes.end(), b.holes.begin(), b.holes.end());
  return make_block(coset_intersect(a.carrier, b.carrier), std::move(holes));
}

// (P \ U beta) \ (Q \ U gamma)
//   = (P \ U(beta + {P n Q}))  +  sum_i ((P n G_i) \ U(beta + {G_j : j < i}))
std::vector<Block> block_subtract(const Block& a, const Block& b) {
  AffineCoset meet = coset_intersect(a.carrier, b.carrier);
  if (meet.is_empty()) return {a};
  std::vector<Block> out;
  std::vector<AffineCoset> holes = a.holes;
  holes.push_back(meet);
  if (auto outside = make_block(a.carrier, holes)) out.push_back(std::move(*outside));
  std::vector<AffineCoset> earlier = a.holes;
  for (const auto& g : b.holes) {
    if (auto part = make_block(coset_intersect(a.carrier, g), earlier)) out.push_back(std::move(*part));
    earlier.push_back(g);
  }
  return out;
}

std::vector<Block> subtract_all(std::vector<Block> pieces, const DefinableSet& d) {
  for (const auto& b : d.blocks()) {
    std::vector<Block> next;
    for (const auto& p : pieces) {
      auto parts = block_subtract(p, b);
      next.insert(next.end(), std::make_move_iterator(parts.begin()),
                  std::make_move_iterator(parts.end()));
    }
    pieces = std::move(next);
    if (pieces.empty()) break;
  }
  return pieces;
}

}  // namespace

DefinableSet set_union(const DefinableSet& a, const DefinableSet& b) {
  require_same_ambient(a, b);
  std::vector<Block> blocks = a.blocks();
  for (const auto& blk : b.blocks()) {
    auto rest = subtract_all({blk}, a);
    blocks.insert(blocks.end(), rest.begin(), rest.end());
  }
  return DefinableSet::from_disjoint_blocks(a.ambient(), std::move(blocks));
}

DefinableSet set_intersection(const DefinableSet& a, const DefinableSet& b) {
  require_same_ambient(a, b);
  std::vector<Block> blocks;
  for (const auto& x : a.blocks())
    for (const auto& y : b.blocks())
      if (auto m = block_intersect(x, y)) blocks.push_back(std::move(*m));
  return DefinableSet::from_disjoint_blocks(a.ambient(), std::move(blocks));
}

DefinableSet set_difference(const DefinableSet& a, const DefinableSet& b) {
  require_same_ambient(a, b);
  std::vector<Block> blocks;
  for (const auto& x : a.blocks()) {
    auto rest = subtract_all({x}, b);
    blocks.insert(blocks.end(), rest.begin(), rest.end());
  }
  return DefinableSet::from_disjoint_blocks(a.ambient(), std::move(blocks));
}

DefinableSet set_complement(const DefinableSet& a) {
  return set_difference(DefinableSet::whole(a.ambient()), a);
}

bool blocks_pairwise_disjoint(const DefinableSet& d) {
  const auto& bs = d.blocks();
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t j = i + 1; j < bs.size(); ++j)
      if (block_intersect(bs[i], bs[j])) return false;
  return true;
}

bool is_subset(const DefinableSet& a, const DefinableSet& b) {
  return set_difference(a, b).is_empty();
}

bool same_points(const DefinableSet& a, const DefinableSet& b) {
  return is_subset(a, b) && is_subset(b, a);
}

Block block_affine_image(const Block& blk, const RatMatrix& a, const RatVec& b) {
  Block out{coset_affine_image(blk.carrier, a, b), {}};
  for (const auto& h : blk.holes) out.holes.push_back(coset_affine_image(h, a, b));
  auto normalized = make_block(out.carrier, out.holes);
  if (!normalized) throw std::logic_error("internal: affine image of a block is empty");
  return *normalized;
}

DefinableSet set_affine_image(const DefinableSet& d, const RatMatrix& a, const RatVec& b) {
  std::vector<Block> blocks;
  for (const auto& blk : d.blocks()) blocks.push_back(block_affine_image(blk, a, b));
  return DefinableSet::from_disjoint_blocks(d.ambient(), std::move(blocks));
}

namespace {

AffineCoset coset_product(const AffineCoset& p, const AffineCoset& q) {
  const int n = p.ambient();
  const int m = q.ambient();
  if (p.is_empty() || q.is_empty()) return AffineCoset::empty(n + m);
  std::vector<RatVec> rows;
  for (const auto& r : p.equations()) {
    RatVec row(n + m + 1);
    for (int j = 0; j < n; ++j) row[j] = r[j];
    row[n + m] = r[n];
    rows.push_back(std::move(row));
  }
  for (const auto& r : q.equations()) {
    RatVec row(n + m + 1);
    for (int j = 0; j < m; ++j) row[n + j] = r[j];
    row[n + m] = r[m];
    rows.push_back(std::move(row));
  }
  return AffineCoset::from_equations(n + m, rows);
}

}  // namespace

DefinableSet set_product(const DefinableSet& a, const DefinableSet& b) {
  const int n = a.ambient() + b.ambient();
  std::vector<Block> blocks;
  for (const auto& x : a.blocks())
    for (const auto& y : b.blocks()) {
      std::vector<AffineCoset> holes;
      for (const auto& h : x.holes) holes.push_back(coset_product(h, y.carrier));
      for (const auto& h : y.holes) holes.push_back(coset_product(x.carrier, h));
      if (auto blk = make_block(coset_product(x.carrier, y.carrier), holes))
        blocks.push_back(std::move(*blk));
    }
  return DefinableSet::from_disjoint_blocks(n, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Boolean expressions

BoolExpr BoolExpr::atom(AffineCoset c) {
  BoolExpr e;
  e.leaf = std::move(c);
  return e;
}

BoolExpr BoolExpr::conj(BoolExpr a, BoolExpr b) {
  BoolExpr e;
  e.op = Op::And;
  e.children = {std::move(a), std::move(b)};
  return e;
}

BoolExpr BoolExpr::disj(BoolExpr a, BoolExpr b) {
  BoolExpr e;
  e.op = Op::Or;
  e.children = {std::move(a), std::move(b)};
  return e;
}

BoolExpr BoolExpr::negate(BoolExpr a) {
  BoolExpr e;
  e.op = Op::Not;
  e.children = {std::move(a)};
  return e;
}

bool BoolExpr::evaluate(const RatVec& x) const {
  switch (op) {
    case Op::Leaf: return leaf.contains_point(x);
    case Op::And:
      return std::all_of(children.begin(), children.end(), [&](const BoolExpr& c) { return c.evaluate(x); });
    case Op::Or:
      return std::any_of(children.begin(), children.end(), [&](const BoolExpr& c) { return c.evaluate(x); });
    case Op::Not: return !children.front().evaluate(x);
  }
  return false;
}

namespace {

void collect_leaves(const BoolExpr& e, std::vector<AffineCoset>& out) {
  if (e.op == BoolExpr::Op::Leaf) {
    if (std::find(out.begin(), out.end(), e.leaf) == out.end()) out.push_back(e.leaf);
    return;
  }
  for (const auto& c : e.children) collect_leaves(c, out);
}

}  // namespace

std::vector<AffineCoset> BoolExpr::leaves() const {
  std::vector<AffineCoset> out;
  collect_leaves(*this, out);
  return out;
}

DefinableSet boolean_normalize(const BoolExpr& expr, int n) {
  switch (expr.op) {
    case BoolExpr::Op::Leaf:
      if (expr.leaf.ambient() != n) throw std::invalid_argument("leaf ambient mismatch");
      return DefinableSet::from_coset(expr.leaf);
    case BoolExpr::Op::And: {
      DefinableSet acc = boolean_normalize(expr.children.front(), n);
      for (std::size_t i = 1; i < expr.children.size(); ++i)
        acc = set_intersection(acc, boolean_normalize(expr.children[i], n));
      return acc;
    }
    case BoolExpr::Op::Or: {
      DefinableSet acc = boolean_normalize(expr.children.front(), n);
      for (std::size_t i = 1; i < expr.children.size(); ++i)
        acc = set_union(acc, boolean_normalize(expr.children[i], n));
      return acc;
    }
    case BoolExpr::Op::Not:
      return set_complement(boolean_normalize(expr.children.front(), n));
  }
  return DefinableSet(n);
}

// ---------------------------------------------------------------------------
// Classes

namespace {

class UnionClass {
 public:
  K0Class of(std::vector<AffineCoset> cosets) {
    cosets = reduce_antichain(std::move(cosets));
    if (cosets.empty()) return {};
    if (cosets.size() == 1) return K0Class::monomial(*cosets.front().dim());
    auto it = memo_.find(cosets);
    if (it != memo_.end()) return it->second;
    // [G u R] = [G] + [R] - [G n R]
    const AffineCoset& g = cosets.front();
    std::vector<AffineCoset> rest(cosets.begin() + 1, cosets.end());
    std::vector<AffineCoset> meets;
    for (const auto& r : rest) meets.push_back(coset_intersect(g, r));
    K0Class result = K0Class::monomial(*g.dim()) + of(rest) - of(std::move(meets));
    memo_.emplace(std::move(cosets), result);
    return result;
  }

 private:
  std::map<std::vector<AffineCoset>, K0Class> memo_;
};

}  // namespace

K0Class k0_class(const Block& b) {
  UnionClass u;
  return K0Class::monomial(*b.carrier.dim()) - u.of(b.holes);
}

K0Class k0_class(const DefinableSet& d) {
  UnionClass u;
  K0Class total;
  for (const auto& b : d.blocks()) total = total + K0Class::monomial(*b.carrier.dim()) - u.of(b.holes);
  return total;
}

Dim dim(const DefinableSet& d) { return k0_class(d).degree(); }

bool definably_isomorphic(const DefinableSet& a, const DefinableSet& b) {
  return k0_class(a) == k0_class(b);
}

// ---------------------------------------------------------------------------
// Counting over F_p

namespace {

struct ModRow {
  std::vector<long> coeffs;  // n coefficients then the constant
};

// Primitive integer rows of a canonical coset, reduced mod p. An empty coset
// becomes the single row 0 = 1.
std::vector<ModRow> reduce_mod_p(const AffineCoset& c, long p) {
  const int n = c.ambient();
  if (c.is_empty()) {
    ModRow r{std::vector<long>(n + 1, 0)};
    r.coeffs[n] = 1 % p;
    return {r};
  }
  std::vector<ModRow> out;
  for (const auto& row : c.equations()) {
    mpz_class lcm = 1;
    for (const auto& v : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<mpz_class> ints;
    mpz_class g = 0;
    for (const auto& v : row) {
      mpz_class x = v.get_num() * (lcm / v.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      ints.push_back(x);
    }
    ModRow r;
    for (auto& x : ints) {
      if (g != 0) x /= g;
      mpz_class m;
      mpz_fdiv_r_ui(m.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
      r.coeffs.push_back(static_cast<long>(m.get_ui()));
    }
    out.push_back(std::move(r));
  }
  return out;
}

long mod_inverse(long a, long p) {
  long result = 1;
  long base = a % p;
  long e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

// Dimension of the solution set of stacked rows over F_p.
Dim dim_mod_p(std::vector<ModRow> rows, int n, long p) {
  int row = 0;
  for (int c = 0; c <= n && row < static_cast<int>(rows.size()); ++c) {
    int piv = row;
    while (piv < static_cast<int>(rows.size()) && rows[piv].coeffs[c] == 0) ++piv;
    if (piv == static_cast<int>(rows.size())) continue;
    if (c == n) return std::nullopt;  // 0 = nonzero
    std::swap(rows[piv], rows[row]);
    long inv = mod_inverse(rows[row].coeffs[c], p);
    for (auto& v : rows[row].coeffs) v = v * inv % p;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == row || rows[r].coeffs[c] == 0) continue;
      long f = rows[r].coeffs[c];
      for (int j = 0; j <= n; ++j)
        rows[r].coeffs[j] = ((rows[r].coeffs[j] - f * rows[row].coeffs[j]) % p + p) % p;
    }
    ++row;
  }
  return n - row;
}

struct IndexedExpr {
  BoolExpr::Op op;
  int leaf = -1;
  std::vector<IndexedExpr> children;
};

IndexedExpr index_expr(const BoolExpr& e, const std::vector<AffineCoset>& leaves) {
  IndexedExpr out{e.op, -1, {}};
  if (e.op == BoolExpr::Op::Leaf) {
    out.leaf = static_cast<int>(std::find(leaves.begin(), leaves.end(), e.leaf) - leaves.begin());
  }
  for (const auto& c : e.children) out.children.push_back(index_expr(c, leaves));
  return out;
}

bool eval_indexed(const IndexedExpr& e, const std::vector<char>& truth) {
  switch (e.op) {
    case BoolExpr::Op::Leaf: return truth[e.leaf] != 0;
    case BoolExpr::Op::And:
      for (const auto& c : e.children)
        if (!eval_indexed(c, truth)) return false;
      return true;
    case BoolExpr::Op::Or:
      for (const auto& c : e.children)
        if (eval_indexed(c, truth)) return true;
      return false;
    case BoolExpr::Op::Not: return !eval_indexed(e.children.front(), truth);
  }
  return false;
}

bool is_prime_number(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

PointCount count_points_mod_p(const BoolExpr& expr, int n, int p) {
  if (!is_prime_number(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<std::uint64_t>(p);
    if (total > 1000000) throw std::invalid_argument("enumeration too large: p^n exceeds 10^6");
  }
  const auto leaves = expr.leaves();
  if (leaves.size() > 16) throw std::invalid_argument("too many distinct leaves for the good-prime check");
  for (const auto& l : leaves)
    if (l.ambient() != n) throw std::invalid_argument("leaf ambient mismatch");

  std::vector<std::vector<ModRow>> reduced;
  for (const auto& l : leaves) reduced.push_back(reduce_mod_p(l, p));

  PointCount result;
  result.good_prime = true;
  for (std::uint32_t mask = 1; mask < (1U << leaves.size()) && result.good_prime; ++mask) {
    AffineCoset over_q = AffineCoset::whole(n);
    std::vector<ModRow> rows;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (!(mask & (1U << i))) continue;
      over_q = coset_intersect(over_q, leaves[i]);
      rows.insert(rows.end(), reduced[i].begin(), reduced[i].end());
    }
    if (over_q.dim() != dim_mod_p(rows, n, p)) result.good_prime = false;
  }

  const IndexedExpr indexed = index_expr(expr, leaves);
  std::vector<long> x(n, 0);
  std::vector<char> truth(leaves.size());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (int i = 0; i < n; ++i) {
      x[i] = static_cast<long>(t % static_cast<std::uint64_t>(p));
      t /= static_cast<std::uint64_t>(p);
    }
    for (std::size_t l = 0; l < leaves.size(); ++l) {
      bool in = true;
      for (const auto& row : reduced[l]) {
        long s = 0;
        for (int j = 0; j < n; ++j) s = (s + row.coeffs[j] * x[j]) % p;
        if (s != row.coeffs[n]) {
          in = false;
          break;
        }
      }
      truth[l] = in;
    }
    if (eval_indexed(indexed, truth)) ++result.count;
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

const Block& top_block(const DefinableSet& d) {
  const Block* best = &d.blocks().front();
  for (const auto& b : d.blocks())
    if (*b.dim() > *best->dim()) best = &b;
  return *best;
}

// Extends independent vectors to a basis of Q^n with standard basis vectors.
std::vector<RatVec> extend_to_basis(std::vector<RatVec> vs, int n) {
  for (int i = 0; i < n && static_cast<int>(vs.size()) < n; ++i) {
    RatVec e(n);
    e[i] = 1;
    vs.push_back(e);
    if (rank(RatMatrix::from_rows(vs, n)) != static_cast<int>(vs.size())) vs.pop_back();
  }
  return vs;
}

RatMatrix columns(const std::vector<RatVec>& cols, int n) {
  RatMatrix m(n, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < n; ++i) m(i, j) = cols[j][i];
  return m;
}

}  // namespace

ShiftWitness shift_witness(const DefinableSet& d1, const DefinableSet& d2, int m) {
  if (d1.ambient() != d2.ambient()) throw std::invalid_argument("definable sets live in different ambients");
  if (dim_at_most(dim(d1), m) || dim_at_most(dim(d2), m))
    throw std::invalid_argument("shift_witness needs dim(D1) > m and dim(D2) > m");
  const int n = d1.ambient();
  const Block& b1 = top_block(d1);
  const Block& b2 = top_block(d2);
  const RatVec p1 = witness_point(b1);
  const RatVec p2 = witness_point(b2);
  const auto u = b1.carrier.directions();
  const auto v = b2.carrier.directions();
  const std::size_t k = std::min(u.size(), v.size());

  // L sends v_i to u_i for i < k and the rest of a basis extending v onto
  // the rest of a basis extending u_0..u_{k-1}.
  std::vector<RatVec> domain = extend_to_basis(v, n);
  std::vector<RatVec> target = extend_to_basis(std::vector<RatVec>(u.begin(), u.begin() + k), n);
  RatMatrix l = columns(target, n) * *columns(domain, n).inverse();
  RatVec offset = p1 - l * p2;

  ShiftWitness w{set_affine_image(d2, l, offset), l, offset, {}};
  Dim meet = dim(set_intersection(d1, w.set));
  if (dim_at_most(meet, m)) throw std::logic_error("internal: aligned blocks meet in dimension <= m");
  w.note = "aligned top blocks of dimension " + std::to_string(*b1.dim()) + " and " +
           std::to_string(*b2.dim()) + "; intersection dimension " + dim_to_string(meet);
  return w;
}

}  // namespace mtk1
