#include "mtk1/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace mtk1 {

std::size_t CodeHash::operator()(const Code& c) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto v : c) {
    h ^= static_cast<std::uint32_t>(v);
    h *= 0x100000001b3ULL;
  }
  return h;
}

CapExceeded::CapExceeded(std::size_t cap)
    : GroupError("group closure exceeds the element cap of " + std::to_string(cap)), cap_(cap) {}

// ---------------------------------------------------------------------------
// Representations

PermutationRep::PermutationRep(int degree) : degree_(degree) {
  if (degree < 1) throw std::invalid_argument("permutation degree must be positive");
}

Code PermutationRep::identity() const {
  Code c(degree_);
  std::iota(c.begin(), c.end(), 0);
  return c;
}

Code PermutationRep::multiply(const Code& a, const Code& b) const {
  Code c(degree_);
  for (int x = 0; x < degree_; ++x) c[x] = a[b[x]];
  return c;
}

Code PermutationRep::inverse(const Code& a) const {
  Code c(degree_);
  for (int x = 0; x < degree_; ++x) c[a[x]] = x;
  return c;
}

bool PermutationRep::is_valid(const Code& a) const {
  if (static_cast<int>(a.size()) != degree_) return false;
  std::vector<char> seen(degree_, 0);
  for (auto v : a) {
    if (v < 0 || v >= degree_ || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::string PermutationRep::format(const Code& a) const {
  // cycle notation, fixed points omitted
  std::vector<char> seen(degree_, 0);
  std::ostringstream out;
  bool any = false;
  for (int s = 0; s < degree_; ++s) {
    if (seen[s] || a[s] == s) continue;
    out << '(';
    int x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = 1;
      if (!first) out << ' ';
      out << x;
      first = false;
      x = a[x];
    }
    out << ')';
    any = true;
  }
  return any ? out.str() : "()";
}

std::string PermutationRep::name() const { return "Sym(" + std::to_string(degree_) + ")"; }

CyclicRep::CyclicRep(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("cyclic modulus must be positive");
}

Code CyclicRep::identity() const { return {0}; }
Code CyclicRep::multiply(const Code& a, const Code& b) const { return {(a[0] + b[0]) % n_}; }
Code CyclicRep::inverse(const Code& a) const { return {(n_ - a[0]) % n_}; }
bool CyclicRep::is_valid(const Code& a) const { return a.size() == 1 && a[0] >= 0 && a[0] < n_; }
std::string CyclicRep::format(const Code& a) const { return std::to_string(a[0]); }
std::string CyclicRep::name() const { return "Z_" + std::to_string(n_); }

// ---------------------------------------------------------------------------
// FiniteGroup

std::optional<std::size_t> FiniteGroup::find(const Code& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteGroup::index_of(const Code& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) throw GroupError("element " + rep_->format(c) + " is not in the group");
  return it->second;
}

std::size_t FiniteGroup::mul(std::size_t a, std::size_t b) const {
  return index_of(rep_->multiply(elements_[a], elements_[b]));
}

std::size_t FiniteGroup::commutator(std::size_t a, std::size_t b) const {
  return mul(mul(a, b), mul(inv(a), inv(b)));
}

std::size_t FiniteGroup::conjugate(std::size_t g, std::size_t x) const {
  return mul(mul(g, x), inv(g));
}

std::size_t FiniteGroup::power(std::size_t a, std::uint64_t e) const {
  std::size_t result = kIdentity;
  std::size_t base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1;
  std::size_t x = a;
  while (x != kIdentity) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (mul(generators_[i], generators_[j]) != mul(generators_[j], generators_[i])) return false;
  return true;
}

FiniteGroup enumerate_group(std::shared_ptr<const GroupRep> rep, const std::vector<Code>& generators,
                            std::size_t cap) {
  for (const auto& g : generators) {
    if (!rep->is_valid(g))
      throw GroupError("generator " + rep->format(g) + " is not an invertible element of " +
                       rep->name());
  }
  FiniteGroup out;
  out.rep_ = rep;
  auto add = [&](Code c) {
    if (out.elements_.size() >= cap) throw CapExceeded(cap);
    out.index_.emplace(c, out.elements_.size());
    out.elements_.push_back(std::move(c));
  };
  add(rep->identity());
  for (std::size_t head = 0; head < out.elements_.size(); ++head) {
    for (const auto& g : generators) {
      Code next = rep->multiply(out.elements_[head], g);
      if (!out.index_.count(next)) add(std::move(next));
    }
  }
  out.inverse_.resize(out.elements_.size());
  for (std::size_t i = 0; i < out.elements_.size(); ++i)
    out.inverse_[i] = out.index_of(rep->inverse(out.elements_[i]));
  for (const auto& g : generators) {
    std::size_t idx = out.index_of(g);
    if (idx != FiniteGroup::kIdentity &&
        std::find(out.generators_.begin(), out.generators_.end(), idx) == out.generators_.end())
      out.generators_.push_back(idx);
  }
  return out;
}

FiniteGroup subgroup(const FiniteGroup& g, std::span<const std::size_t> generators,
                     std::size_t cap) {
  std::vector<Code> codes;
  codes.reserve(generators.size());
  for (auto i : generators) codes.push_back(g.element(i));
  return enumerate_group(g.rep(), codes, std::max(cap, g.order()));
}

FiniteGroup commutator_subgroup(const FiniteGroup& g, std::size_t cap) {
  const auto& gens = g.generators();
  std::vector<std::size_t> sub_gens;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      std::size_t c = g.commutator(gens[i], gens[j]);
      if (c != FiniteGroup::kIdentity) sub_gens.push_back(c);
    }
  FiniteGroup n = subgroup(g, sub_gens, cap);
  // normal closure: conjugate generators of N by generators of G
  for (bool changed = true; changed;) {
    changed = false;
    for (auto s : gens) {
      for (auto c : std::vector<std::size_t>(n.generators())) {
        std::size_t x = g.conjugate(s, g.index_of(n.element(c)));
        if (!n.contains(g.element(x))) {
          sub_gens.push_back(x);
          changed = true;
        }
      }
      if (changed) break;
    }
    if (changed) n = subgroup(g, sub_gens, cap);
  }
  return n;
}

namespace {

// Membership set S of a subgroup of G containing [G,G], grown one cyclic
// extension at a time.
class AbelianQuotientTracker {
 public:
  AbelianQuotientTracker(const FiniteGroup& g, const FiniteGroup& n)
      : g_(g), in_(g.order(), 0) {
    for (const auto& code : n.elements()) mark(g.index_of(code));
  }

  bool full() const { return members_.size() == g_.order(); }
  bool contains(std::size_t x) const { return in_[x] != 0; }

  std::uint64_t order_mod(std::size_t x) const {
    std::uint64_t t = 1;
    std::size_t y = x;
    while (!in_[y]) {
      y = g_.mul(y, x);
      ++t;
    }
    return t;
  }

  /// S <- S<x>, valid because S is normal with abelian quotient.
  void extend(std::size_t x) {
    std::uint64_t d = order_mod(x);
    const std::vector<std::size_t> base = members_;
    std::size_t p = FiniteGroup::kIdentity;
    for (std::uint64_t t = 1; t < d; ++t) {
      p = g_.mul(p, x);
      for (auto s : base) mark(g_.mul(s, p));
    }
  }

 private:
  void mark(std::size_t x) {
    if (!in_[x]) {
      in_[x] = 1;
      members_.push_back(x);
    }
  }

  const FiniteGroup& g_;
  std::vector<char> in_;
  std::vector<std::size_t> members_;
};

AbInvariants split_cyclic_factors(const FiniteGroup& g, AbelianQuotientTracker& s) {
  std::vector<std::uint64_t> factors;
  while (!s.full()) {
    std::size_t best = FiniteGroup::kIdentity;
    std::uint64_t best_order = 1;
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (s.contains(x)) continue;
      std::uint64_t d = s.order_mod(x);
      if (d > best_order) {
        best_order = d;
        best = x;
      }
    }
    factors.push_back(best_order);
    s.extend(best);
  }
  AbInvariants out = AbInvariants::from_cyclic_orders(factors);
  // A maximal-order element spans a direct summand, so the orders found are
  // already the invariant factors in decreasing order.
  std::vector<std::uint64_t> sorted(factors.rbegin(), factors.rend());
  if (sorted != out.factors())
    throw GroupError("internal: quotient is not abelian or subgroup is not normal");
  return out;
}

}  // namespace

AbInvariants quotient_invariants(const FiniteGroup& g, const FiniteGroup& normal_subgroup) {
  AbelianQuotientTracker s(g, normal_subgroup);
  return split_cyclic_factors(g, s);
}

AbInvariants abelianization(const FiniteGroup& g) {
  return quotient_invariants(g, commutator_subgroup(g, g.order()));
}

bool abelian_iso(const AbInvariants& a, const AbInvariants& b) { return a == b; }

bool is_normal_subgroup(const FiniteGroup& g, const FiniteGroup& n) {
  for (auto s : g.generators())
    for (std::size_t i = 0; i < n.order(); ++i) {
      std::size_t x = g.conjugate(s, g.index_of(n.element(i)));
      if (!n.contains(g.element(x))) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// GroupAction

GroupAction::GroupAction(FiniteGroup acting, FiniteGroup target, std::vector<std::uint32_t> table)
    : acting_(std::make_shared<const FiniteGroup>(std::move(acting))),
      target_(std::make_shared<const FiniteGroup>(std::move(target))),
      table_(std::move(table)) {}

GroupAction GroupAction::from_function(
    FiniteGroup acting, FiniteGroup target,
    const std::function<std::size_t(std::size_t, std::size_t)>& fn) {
  const std::size_t nk = acting.order();
  const std::size_t nh = target.order();
  std::vector<std::uint32_t> table(nk * nh);
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t h = 0; h < nh; ++h) {
      std::size_t v = fn(k, h);
      if (v >= nh) throw GroupError("action image outside the target group");
      table[k * nh + h] = static_cast<std::uint32_t>(v);
    }
  GroupAction a(std::move(acting), std::move(target), std::move(table));
  if (auto err = a.check()) throw GroupError("invalid action: " + *err);
  return a;
}

GroupAction GroupAction::from_generator_images(
    FiniteGroup acting, FiniteGroup target,
    const std::vector<std::vector<std::size_t>>& generator_images) {
  const auto& gens = acting.generators();
  if (generator_images.size() != gens.size())
    throw GroupError("need one target permutation per generator of the acting group");
  const std::size_t nk = acting.order();
  const std::size_t nh = target.order();
  for (const auto& img : generator_images)
    if (img.size() != nh) throw GroupError("generator image has the wrong length");
  constexpr std::uint32_t kUnset = ~0U;
  std::vector<std::uint32_t> table(nk * nh, kUnset);
  for (std::size_t h = 0; h < nh; ++h) table[h] = static_cast<std::uint32_t>(h);
  std::vector<char> done(nk, 0);
  done[FiniteGroup::kIdentity] = 1;
  std::deque<std::size_t> queue{FiniteGroup::kIdentity};
  while (!queue.empty()) {
    std::size_t k = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < gens.size(); ++s) {
      std::size_t ks = acting.mul(k, gens[s]);
      // phi(k s)(h) = phi(k)(phi(s)(h))
      for (std::size_t h = 0; h < nh; ++h) {
        std::uint32_t v = table[k * nh + generator_images[s][h]];
        std::uint32_t& slot = table[ks * nh + h];
        if (done[ks] && slot != v)
          throw GroupError("invalid action: generator images do not define a homomorphism");
        slot = v;
      }
      if (!done[ks]) {
        done[ks] = 1;
        queue.push_back(ks);
      }
    }
  }
  GroupAction a(std::move(acting), std::move(target), std::move(table));
  if (auto err = a.check()) throw GroupError("invalid action: " + *err);
  return a;
}

GroupAction GroupAction::trivial(FiniteGroup acting, FiniteGroup target) {
  return from_function(std::move(acting), std::move(target),
                       [](std::size_t, std::size_t h) { return h; });
}

std::optional<std::string> GroupAction::check() const {
  const FiniteGroup& k = *acting_;
  const FiniteGroup& h = *target_;
  const std::size_t nh = h.order();
  for (std::size_t x = 0; x < nh; ++x)
    if (image(FiniteGroup::kIdentity, x) != x) return "identity does not act trivially";
  for (auto s : k.generators()) {
    std::vector<char> hit(nh, 0);
    for (std::size_t x = 0; x < nh; ++x) {
      std::size_t y = image(s, x);
      if (hit[y]) return "generator " + k.format(s) + " does not act bijectively";
      hit[y] = 1;
    }
    for (std::size_t a = 0; a < nh; ++a)
      for (auto t : h.generators())
        if (image(s, h.mul(a, t)) != h.mul(image(s, a), image(s, t)))
          return "generator " + k.format(s) + " does not act by a homomorphism";
  }
  for (std::size_t a = 0; a < k.order(); ++a)
    for (auto s : k.generators()) {
      std::size_t as = k.mul(a, s);
      for (std::size_t x = 0; x < nh; ++x)
        if (image(as, x) != image(a, image(s, x)))
          return "action does not respect multiplication in the acting group";
    }
  return std::nullopt;
}

AbInvariants coinvariants(const GroupAction& action) {
  const FiniteGroup& h = action.target();
  AbelianQuotientTracker s(h, commutator_subgroup(h, h.order()));
  for (auto g : action.acting().generators())
    for (std::size_t x = 0; x < h.order(); ++x) {
      std::size_t r = h.mul(action.image(g, x), h.inv(x));
      if (!s.contains(r)) s.extend(r);
    }
  return split_cyclic_factors(h, s);
}

}  // namespace mtk1
