#include "mtk1/k1_symbolic.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "mtk1/linear_groups.hpp"

namespace mtk1 {

RingDescriptor RingDescriptor::finite_field(int q) {
  if (q < 2 || factorize(static_cast<std::uint64_t>(q)).size() != 1)
    throw std::invalid_argument("F_" + std::to_string(q) + ": field order must be a prime power");
  RingDescriptor r;
  r.kind = Kind::FiniteField;
  r.q = q;
  return r;
}

RingDescriptor RingDescriptor::infinite_field(std::string tag) {
  RingDescriptor r;
  r.kind = Kind::InfiniteField;
  r.tag = std::move(tag);
  return r;
}

RingDescriptor RingDescriptor::poly_char0(std::string base) {
  RingDescriptor r;
  r.kind = Kind::PolyChar0;
  r.tag = std::move(base);
  return r;
}

RingDescriptor RingDescriptor::integers() { return RingDescriptor{}; }

RingDescriptor RingDescriptor::abstract_ed(std::string name, bool has_unit_sum) {
  RingDescriptor r;
  r.kind = Kind::AbstractED;
  r.tag = std::move(name);
  r.unit_sum = has_unit_sum;
  return r;
}

bool RingDescriptor::has_unit_sum() const {
  switch (kind) {
    case Kind::FiniteField: return q != 2;  // 1 = 2 + (-1), or a primitive root in char 2
    case Kind::InfiniteField:
    case Kind::PolyChar0: return true;
    case Kind::Integers: return false;
    case Kind::AbstractED: return unit_sum;
  }
  return false;
}

std::string RingDescriptor::name() const {
  switch (kind) {
    case Kind::FiniteField: return "F_" + std::to_string(q);
    case Kind::InfiniteField: return tag;
    case Kind::PolyChar0: return tag + "[X]";
    case Kind::Integers: return "Z";
    case Kind::AbstractED: return tag;
  }
  return "?";
}

TheoryFlags derive_flags(const RingDescriptor& ring) {
  switch (ring.kind) {
    case RingDescriptor::Kind::FiniteField:
      // pp-subgroups of finite index have index a power of q
      return {false, ring.q % 2 == 0};
    case RingDescriptor::Kind::InfiniteField:
    case RingDescriptor::Kind::PolyChar0: return {true, std::nullopt};
    case RingDescriptor::Kind::Integers: return {false, true};
    case RingDescriptor::Kind::AbstractED: break;
  }
  throw std::invalid_argument("theory flags of " + ring.name() + " must be supplied");
}

void check_flags(const TheoryFlags& flags) {
  if (flags.t_closed == flags.cofinal_even.has_value())
    throw std::invalid_argument("cofinal_even must be given exactly when the theory is not closed under products");
}

// ---------------------------------------------------------------------------

Atom Atom::zmod(std::uint64_t k) {
  Atom a;
  a.k = k;
  return a;
}

Atom Atom::units(RingDescriptor r) {
  Atom a;
  a.kind = Kind::UnitsOf;
  a.ring = std::move(r);
  return a;
}

Atom Atom::glab(int level, RingDescriptor r) {
  Atom a;
  a.kind = Kind::GLab;
  a.level = level;
  a.ring = std::move(r);
  return a;
}

Atom Atom::undetermined(std::string label) {
  Atom a;
  a.kind = Kind::Undetermined;
  a.k = 2;
  a.label = std::move(label);
  return a;
}

std::string Atom::to_string() const {
  switch (kind) {
    case Kind::Zmod: return "Z_" + std::to_string(k);
    case Kind::UnitsOf: return ring.name() + "^×";
    case Kind::GLab:
      return "GL_" + (level == kSymbolicLevel ? std::string("n") : std::to_string(level)) + "(" +
             ring.name() + ")^ab";
    case Kind::Undetermined: return "Z_2?(" + label + ")";
  }
  return "?";
}

bool operator<(const Atom& a, const Atom& b) {
  return std::make_tuple(static_cast<int>(a.kind), a.k, a.ring.name(), a.level, a.label) <
         std::make_tuple(static_cast<int>(b.kind), b.k, b.ring.name(), b.level, b.label);
}

Mult Mult::operator+(const Mult& o) const {
  if (countable || o.countable) return omega();
  return finite(count + o.count);
}

Mult Mult::times(std::uint64_t n) const {
  if (countable) return *this;
  return finite(count * n);
}

bool Mult::operator<=(const Mult& o) const {
  if (o.countable) return true;
  if (countable) return false;
  return count <= o.count;
}

std::string Mult::to_string() const { return countable ? "countable" : std::to_string(count); }

// ---------------------------------------------------------------------------

std::vector<Summand> rewrite(const Summand& s) {
  const Atom& a = s.atom;
  switch (a.kind) {
    case Atom::Kind::Zmod:
      if (a.k == 0) throw std::invalid_argument("Zmod(0) is not a finite cyclic group");
      if (a.k == 1) return {};
      return {s};
    case Atom::Kind::Undetermined: return {s};
    case Atom::Kind::UnitsOf:
      switch (a.ring.kind) {
        case RingDescriptor::Kind::FiniteField:
          return rewrite({Atom::zmod(static_cast<std::uint64_t>(a.ring.q - 1)), s.mult});
        case RingDescriptor::Kind::Integers: return {{Atom::zmod(2), s.mult}};
        case RingDescriptor::Kind::PolyChar0:
          return {{Atom::units(RingDescriptor::infinite_field(a.ring.tag)), s.mult}};
        default: return {s};
      }
    case Atom::Kind::GLab: {
      if (a.level == 0) return {};
      if (a.ring.kind == RingDescriptor::Kind::Integers) {
        if (a.level == kSymbolicLevel) return {s};
        return {{Atom::zmod(2), a.level == 2 ? s.mult.times(2) : s.mult}};
      }
      // SL_n = E_n over a Euclidean domain; E_n is perfect for n >= 3, and
      // for n = 2 once 1 is a sum of two units.
      const bool symbolic = a.level == kSymbolicLevel;
      if (a.ring.has_unit_sum() || (!symbolic && a.level != 2))
        return rewrite({Atom::units(a.ring), s.mult});
      return {s};
    }
  }
  return {s};
}

FormalAbGroup::FormalAbGroup(const std::vector<Summand>& summands) {
  std::map<Atom, Mult> merged;
  auto add = [&](const Atom& a, const Mult& m) {
    auto it = merged.find(a);
    if (it == merged.end()) merged.emplace(a, m);
    else it->second = it->second + m;
  };
  for (const auto& s : summands)
    for (const auto& r : rewrite(s)) {
      if (r.atom.kind != Atom::Kind::Zmod) {
        add(r.atom, r.mult);
        continue;
      }
      for (auto [p, e] : factorize(r.atom.k)) {
        std::uint64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        add(Atom::zmod(pe), r.mult);
      }
    }
  for (auto& [a, m] : merged) summands_.push_back({a, m});
}

FormalAbGroup FormalAbGroup::from_invariants(const AbInvariants& g) {
  std::vector<Summand> s;
  for (auto d : g.elementary_divisors()) s.push_back({Atom::zmod(d), Mult::finite(1)});
  return FormalAbGroup(s);
}

FormalAbGroup FormalAbGroup::direct_sum(const FormalAbGroup& o) const {
  std::vector<Summand> all = summands_;
  all.insert(all.end(), o.summands_.begin(), o.summands_.end());
  return FormalAbGroup(all);
}

bool FormalAbGroup::contained_in(const FormalAbGroup& o) const {
  for (const auto& s : summands_) {
    bool found = false;
    for (const auto& t : o.summands_)
      if (t.atom == s.atom) {
        found = s.mult <= t.mult;
        break;
      }
    if (!found) return false;
  }
  return true;
}

std::string FormalAbGroup::to_string() const {
  if (summands_.empty()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    if (i) out << " ⊕ ";
    out << summands_[i].atom.to_string();
    const Mult& m = summands_[i].mult;
    if (m.countable) out << "^∞";
    else if (m.count > 1) out << '^' << m.count;
  }
  return out.str();
}

bool formal_equal(const FormalAbGroup& a, const FormalAbGroup& b) { return a == b; }

// ---------------------------------------------------------------------------

namespace {

std::vector<Summand> rewrite_all(const std::vector<Summand>& xs) {
  std::vector<Summand> out;
  for (const auto& s : xs) {
    auto r = rewrite(s);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

std::string join_display(const std::vector<Summand>& xs) {
  std::ostringstream out;
  bool first = true;
  for (const auto& s : xs) {
    auto emit = [&](const std::string& text) {
      if (!first) out << " ⊕ ";
      out << text;
      first = false;
    };
    if (s.mult.countable) emit("⊕^∞ " + s.atom.to_string());
    else if (s.mult.count <= 4)
      for (std::uint64_t i = 0; i < s.mult.count; ++i) emit(s.atom.to_string());
    else emit(s.atom.to_string() + "^" + std::to_string(s.mult.count));
  }
  return out.str();
}

Summand one(Atom a) { return {std::move(a), Mult::finite(1)}; }

}  // namespace

FormalExpr FormalExpr::rewritten() const {
  return {rewrite_all(head), rewrite_all(block), block_start};
}

FormalAbGroup FormalExpr::canonical() const {
  std::vector<Summand> all = head;
  for (const auto& s : block) all.push_back({s.atom, Mult::omega()});
  return FormalAbGroup(all);
}

std::string FormalExpr::pretty() const {
  const FormalExpr r = rewritten();
  std::string h = join_display(r.head);
  if (!r.has_block()) return h.empty() ? "0" : h;
  std::string b = "⊕_{n≥" + std::to_string(block_start) + "}(" + join_display(r.block) + ")";
  return h.empty() ? b : h + " ⊕ " + b;
}

namespace {

void require_supported(const RingDescriptor& ring, int rank) {
  if (ring.kind == RingDescriptor::Kind::Integers) {
    if (rank != 1)
      throw std::domain_error(
          "free Z-modules of rank other than 1 are not supported: a nontrivial quotient of the module "
          "survives in the abelianized first affine level and blocks the computation of the second level");
    return;
  }
  if (ring.kind == RingDescriptor::Kind::FiniteField && ring.q == 2)
    throw std::domain_error(
        "F_2 is not supported: GL_1(F_2) is trivial, so the abelianized first affine level is the module "
        "itself and the level-by-level recipe does not determine K_1");
  if (!ring.has_unit_sum())
    throw std::domain_error(ring.name() + " is not supported: no units u, v with u + v = 1");
}

}  // namespace

FormalExpr k1_module(const RingDescriptor& ring, const TheoryFlags& flags, int rank) {
  require_supported(ring, rank);
  const Summand z2 = one(Atom::zmod(2));
  if (ring.kind == RingDescriptor::Kind::Integers) return {{}, {z2}, 0};
  check_flags(flags);
  FormalExpr e{{z2}, {one(Atom::units(ring)), z2}, 1};
  if (!flags.even_branch()) e.block.push_back(z2);
  return e;
}

FormalExpr omega_nn_terms(const RingDescriptor& ring, const TheoryFlags& flags, int n) {
  if (n < 1) throw std::invalid_argument("omega_nn_ab needs n >= 1");
  const Summand z2 = one(Atom::zmod(2));
  auto gl = [&](int i) { return one(Atom::glab(i, ring)); };
  FormalExpr e;
  auto& t = e.head;
  if (ring.kind == RingDescriptor::Kind::Integers) {
    // (Upsilon^1)^ab carries an extra Z_2 over Z; from level 2 on the last
    // parity sits under coinvariants whose triviality is not settled.
    if (n == 1) return {{gl(1), z2, z2}, {}, 1};
    t = {gl(n), gl(1), z2};
    for (int i = 2; i < n; ++i) t.push_back(gl(i));
    for (int i = 1; i < n; ++i) t.push_back(one(Atom::undetermined("sigma" + std::to_string(i))));
    t.push_back(z2);
    return e;
  }
  check_flags(flags);
  if (flags.even_branch()) {
    t.push_back(gl(n));
    for (int i = 0; i < n; ++i) {
      t.push_back(gl(i));
      t.push_back(z2);
    }
  } else {
    t = {gl(n), z2};
    for (int i = 1; i < n; ++i) {
      t.push_back(gl(i));
      t.push_back(z2);
      t.push_back(z2);
    }
    t.push_back(z2);
  }
  return e;
}

FormalExpr omega_nn_ab(const RingDescriptor& ring, const TheoryFlags& flags, int n) {
  require_supported(ring, 1);
  return omega_nn_terms(ring, flags, n).rewritten();
}

FormalAbGroup truncation(const FormalExpr& k1, int n) {
  if (!k1.has_block() || k1.block_start != 1)
    throw std::invalid_argument("truncation needs a block indexed from n = 1");
  if (n < 1) throw std::invalid_argument("truncation needs n >= 1");
  std::vector<Summand> all = k1.head;
  for (int level = 1; level <= n; ++level) {
    bool dropped = level < n;  // the top level lacks one Z_2
    for (const auto& s : k1.block) {
      Summand c = s;
      if (c.atom.kind == Atom::Kind::GLab && c.atom.level == kSymbolicLevel) c.atom.level = level;
      if (!dropped && c.atom == Atom::zmod(2)) {
        dropped = true;
        continue;
      }
      all.push_back(c);
    }
  }
  return FormalAbGroup(all);
}

FormalAbGroup k1_algebraic(const RingDescriptor& ring) {
  return FormalAbGroup({one(Atom::units(ring))});
}

EmbeddingTarget embedding_target(const RingDescriptor& ring, int n, std::span<const std::int32_t> matrix) {
  if (ring.kind != RingDescriptor::Kind::FiniteField)
    throw std::invalid_argument("embedding_target needs a concrete finite field");
  if (n < 1 || static_cast<int>(matrix.size()) != n * n)
    throw std::invalid_argument("embedding_target needs an n x n matrix");
  MatRing field = MatRing::finite_field(ring.q);
  for (auto v : matrix)
    if (v < 0 || v >= ring.q) throw std::invalid_argument("matrix entry outside F_" + std::to_string(ring.q));
  int det = det_class(field, n, matrix);
  bool from_below = true;
  for (int j = 0; j < n; ++j) {
    const int want = j == n - 1 ? 1 : 0;
    if (matrix[(n - 1) * n + j] != want || matrix[j * n + (n - 1)] != want) from_below = false;
  }
  if (from_below)
    throw std::invalid_argument("matrix lies in the image of GL_" + std::to_string(n - 1));
  const bool units = n != 2 || ring.has_unit_sum();
  return {n, units ? Atom::units(ring) : Atom::glab(n, ring), det};
}

TruncationReport truncation_consistency(int q, int n, std::size_t cap) {
  if (n < 1) throw std::invalid_argument("truncation_consistency needs n >= 1");
  TruncationReport rep;
  rep.q = q;
  rep.n = n;
  const RingDescriptor ring = RingDescriptor::finite_field(q);
  const MatRing field = MatRing::finite_field(q);
  const TheoryFlags flags = derive_flags(ring);

  std::optional<FormalExpr> k1;
  try {
    k1 = k1_module(ring, flags);
  } catch (const std::domain_error& e) {
    rep.failures.push_back(std::string("k1_module rejects the ring: ") + e.what());
  }

  const AbInvariants units = AbInvariants::of({static_cast<std::uint64_t>(q - 1)});
  std::vector<AbInvariants> gl_ab(n + 1);
  for (int i = 1; i <= n; ++i) {
    gl_ab[i] = abelianization(gl_group(i, field, cap));
    const std::string gl = "GL_" + std::to_string(i) + "(F_" + std::to_string(q) + ")";
    if (gl_ab[i] != units)
      rep.failures.push_back(gl + "^ab = " + gl_ab[i].to_string() + " but the unit group is " +
                             units.to_string() + (is_known_gl_exception(i, q) ? " (known exception)" : ""));
    AbInvariants aff = abelianization(affine_group(i, field, 1, cap));
    if (aff != gl_ab[i])
      rep.failures.push_back("affine group " + gl + " x| F_" + std::to_string(q) + "^" + std::to_string(i) +
                             " abelianizes to " + aff.to_string() + ", not to " + gl + "^ab = " +
                             gl_ab[i].to_string());
  }

  std::vector<Summand> measured;
  for (const auto& s : omega_nn_terms(ring, flags, n).head) {
    if (s.atom.kind != Atom::Kind::GLab) {
      measured.push_back(s);
      continue;
    }
    const FormalAbGroup brute = FormalAbGroup::from_invariants(gl_ab[s.atom.level]);
    for (const auto& t : brute.summands())
      measured.push_back({t.atom, t.mult.times(s.mult.count)});
  }
  rep.computed = FormalAbGroup(measured);
  if (k1) {
    rep.expected = truncation(*k1, n);
    if (rep.computed != rep.expected)
      rep.failures.push_back("measured truncation " + rep.computed.to_string() + " differs from " +
                             rep.expected.to_string());
  }
  rep.pass = rep.failures.empty();
  return rep;
}

}  // namespace mtk1
