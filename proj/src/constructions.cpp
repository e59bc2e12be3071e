#include "mtk1/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>

#include "mtk1/linear_groups.hpp"

namespace mtk1 {

SemidirectRep::SemidirectRep(GroupAction action) : action_(std::move(action)) {}

Code SemidirectRep::identity() const {
  return {static_cast<std::int32_t>(FiniteGroup::kIdentity),
          static_cast<std::int32_t>(FiniteGroup::kIdentity)};
}

Code SemidirectRep::multiply(const Code& a, const Code& b) const {
  const FiniteGroup& h = action_.target();
  const FiniteGroup& k = action_.acting();
  std::size_t hh = h.mul(a[0], action_.image(a[1], b[0]));
  std::size_t kk = k.mul(a[1], b[1]);
  return {static_cast<std::int32_t>(hh), static_cast<std::int32_t>(kk)};
}

Code SemidirectRep::inverse(const Code& a) const {
  // (h,k)^-1 = (phi(k^-1)(h^-1), k^-1)
  const FiniteGroup& h = action_.target();
  const FiniteGroup& k = action_.acting();
  std::size_t kinv = k.inv(a[1]);
  std::size_t hh = action_.image(kinv, h.inv(a[0]));
  return {static_cast<std::int32_t>(hh), static_cast<std::int32_t>(kinv)};
}

bool SemidirectRep::is_valid(const Code& a) const {
  return a.size() == 2 && a[0] >= 0 && static_cast<std::size_t>(a[0]) < action_.target().order() &&
         a[1] >= 0 && static_cast<std::size_t>(a[1]) < action_.acting().order();
}

std::string SemidirectRep::format(const Code& a) const {
  return "(" + action_.target().format(a[0]) + ", " + action_.acting().format(a[1]) + ")";
}

std::string SemidirectRep::name() const {
  return action_.acting().rep()->name() + " x| " + action_.target().rep()->name();
}

ProductRep::ProductRep(std::vector<FiniteGroup> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("direct product of no factors");
}

Code ProductRep::identity() const { return Code(factors_.size(), 0); }

Code ProductRep::multiply(const Code& a, const Code& b) const {
  Code c(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i)
    c[i] = static_cast<std::int32_t>(factors_[i].mul(a[i], b[i]));
  return c;
}

Code ProductRep::inverse(const Code& a) const {
  Code c(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i)
    c[i] = static_cast<std::int32_t>(factors_[i].inv(a[i]));
  return c;
}

bool ProductRep::is_valid(const Code& a) const {
  if (a.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < 0 || static_cast<std::size_t>(a[i]) >= factors_[i].order()) return false;
  return true;
}

std::string ProductRep::format(const Code& a) const {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + factors_[i].format(a[i]);
  return s + ")";
}

std::string ProductRep::name() const {
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    s += (i ? " x " : "") + factors_[i].rep()->name();
  return s;
}

// ---------------------------------------------------------------------------

FiniteGroup cyclic_group(int n) {
  auto rep = std::make_shared<CyclicRep>(n);
  std::vector<Code> gens;
  if (n > 1) gens.push_back({1});
  return enumerate_group(rep, gens);
}

FiniteGroup dihedral_group(int n) {
  if (n < 3) throw std::invalid_argument("dihedral group needs n >= 3");
  auto rep = std::make_shared<PermutationRep>(n);
  Code rotation(n), reflection(n);
  for (int i = 0; i < n; ++i) {
    rotation[i] = (i + 1) % n;
    reflection[i] = (n - i) % n;
  }
  return enumerate_group(rep, {rotation, reflection});
}

FiniteGroup symmetric_group(int k, std::size_t cap) {
  if (k < 1 || k > 8) throw std::invalid_argument("symmetric_group supports 1 <= k <= 8");
  auto rep = std::make_shared<PermutationRep>(k);
  std::vector<Code> gens;
  for (int i = 0; i + 1 < k; ++i) {
    Code t = rep->identity();
    std::swap(t[i], t[i + 1]);
    gens.push_back(std::move(t));
  }
  return enumerate_group(rep, gens, cap);
}

FiniteGroup alternating_group(int k, std::size_t cap) {
  if (k < 1 || k > 8) throw std::invalid_argument("alternating_group supports 1 <= k <= 8");
  auto rep = std::make_shared<PermutationRep>(k);
  std::vector<Code> gens;
  for (int i = 0; i + 2 < k; ++i) {
    Code t = rep->identity();
    t[i] = i + 1;
    t[i + 1] = i + 2;
    t[i + 2] = i;
    gens.push_back(std::move(t));
  }
  return enumerate_group(rep, gens, cap);
}

FiniteGroup direct_product(const std::vector<FiniteGroup>& factors, std::size_t cap) {
  std::size_t order = 1;
  for (const auto& f : factors) {
    order *= f.order();
    if (order > cap) throw CapExceeded(cap);
  }
  auto rep = std::make_shared<ProductRep>(factors);
  std::vector<Code> gens;
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (auto g : factors[i].generators()) {
      Code c(factors.size(), 0);
      c[i] = static_cast<std::int32_t>(g);
      gens.push_back(std::move(c));
    }
  return enumerate_group(rep, gens, cap);
}

FiniteGroup power_group(const FiniteGroup& k, int copies, std::size_t cap) {
  return direct_product(std::vector<FiniteGroup>(copies, k), cap);
}

int permutation_parity(std::span<const std::int32_t> perm) {
  std::vector<char> seen(perm.size(), 0);
  int parity = 0;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(perm[x])) {
      seen[x] = 1;
      ++len;
    }
    parity ^= static_cast<int>((len + 1) % 2);
  }
  return parity;
}

FiniteGroup semidirect(const GroupAction& action, std::size_t cap) {
  const FiniteGroup& h = action.target();
  const FiniteGroup& k = action.acting();
  if (h.order() * k.order() > cap) throw CapExceeded(cap);
  auto rep = std::make_shared<SemidirectRep>(action);
  std::vector<Code> gens;
  for (auto g : h.generators()) gens.push_back({static_cast<std::int32_t>(g), 0});
  for (auto g : k.generators()) gens.push_back({0, static_cast<std::int32_t>(g)});
  return enumerate_group(rep, gens, cap);
}

FiniteGroup wreath(const FiniteGroup& k, int degree, const FiniteGroup& l, std::size_t cap) {
  const auto* prep = dynamic_cast<const PermutationRep*>(l.rep().get());
  if (prep == nullptr || prep->degree() != degree)
    throw GroupError("wreath product needs a permutation group of degree " +
                     std::to_string(degree));
  std::size_t order = l.order();
  for (int i = 0; i < degree; ++i) {
    order *= k.order();
    if (order > cap) throw CapExceeded(cap);
  }
  FiniteGroup base = power_group(k, degree, cap);
  const FiniteGroup* base_ptr = &base;
  const FiniteGroup* l_ptr = &l;
  auto act = [base_ptr, l_ptr, degree](std::size_t li, std::size_t hi) {
    const Code& perm = l_ptr->element(li);
    const Code& tuple = base_ptr->element(hi);
    Code out(degree);
    // (l . k)_x = k_{l^-1 x}, i.e. out[l(y)] = tuple[y]
    for (int y = 0; y < degree; ++y) out[perm[y]] = tuple[y];
    return base_ptr->index_of(out);
  };
  return semidirect(GroupAction::from_function(l, base, act), cap);
}

VerificationReport verify_semiab(const GroupAction& action, std::size_t cap) {
  VerificationReport r;
  r.label = action.acting().rep()->name() + " x| " + action.target().rep()->name();
  r.computed = abelianization(semidirect(action, cap));
  r.expected = abelianization(action.acting()).direct_sum(coinvariants(action));
  r.pass = abelian_iso(r.computed, r.expected);
  return r;
}

VerificationReport verify_wreath_ab(const FiniteGroup& k, int degree, std::size_t cap) {
  if (degree < 2) throw std::invalid_argument("wreath lemma needs at least two points");
  VerificationReport r;
  r.label = k.rep()->name() + " wr Sym(" + std::to_string(degree) + ")";
  r.computed = abelianization(wreath(k, degree, symmetric_group(degree, cap), cap));
  r.expected = abelianization(k).direct_sum(AbInvariants::of({2}));
  r.pass = abelian_iso(r.computed, r.expected);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void require_divides(int n, int m) {
  if (n < 1 || m < 1 || m % n != 0)
    throw std::invalid_argument("lift needs n | m, got n = " + std::to_string(n) +
                                ", m = " + std::to_string(m));
}

}  // namespace

std::vector<int> lift_permutation(int n, int m, std::span<const int> sigma) {
  require_divides(n, m);
  if (static_cast<int>(sigma.size()) != n) throw std::invalid_argument("sigma must permute Z_n");
  std::vector<char> seen(n, 0);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("sigma is not a permutation");
    seen[v] = 1;
  }
  std::vector<int> out(m);
  for (int t = 0; t < m; ++t) {
    int theta = t % n;
    out[t] = ((t + sigma[theta] - theta) % m + m) % m;
  }
  return out;
}

std::vector<SignedTranslation> lift_wreath_component(int n, int m,
                                                     std::span<const SignedTranslation> tuple) {
  require_divides(n, m);
  if (static_cast<int>(tuple.size()) != n) throw std::invalid_argument("tuple must be indexed by Z_n");
  std::vector<SignedTranslation> out(m);
  for (int l = 0; l < m; ++l) out[l] = tuple[l % n];
  return out;
}

bool check_eventually_even(int n, int m) {
  require_divides(n, m);
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::iota(sigma.begin(), sigma.end(), 0);
      std::swap(sigma[i], sigma[j]);
      auto lifted = lift_permutation(n, m, sigma);
      std::vector<std::int32_t> code(lifted.begin(), lifted.end());
      if (permutation_parity(code) != 0) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------

FiniteGroup catalogue_group(const std::string& spec, std::size_t cap) {
  std::vector<FiniteGroup> factors;
  std::stringstream ss(spec);
  std::string token;
  static const std::regex simple(R"(([ZDSA])(\d+))");
  static const std::regex linear(R"((GL|SL|E)(\d+)F(\d+))");
  while (std::getline(ss, token, 'x')) {
    std::smatch m;
    if (std::regex_match(token, m, simple)) {
      int n = std::stoi(m[2]);
      switch (m[1].str()[0]) {
        case 'Z': factors.push_back(cyclic_group(n)); break;
        case 'D': factors.push_back(dihedral_group(n)); break;
        case 'S': factors.push_back(symmetric_group(n, cap)); break;
        default: factors.push_back(alternating_group(n, cap)); break;
      }
    } else if (std::regex_match(token, m, linear)) {
      int n = std::stoi(m[2]);
      MatRing f = MatRing::finite_field(std::stoi(m[3]));
      if (m[1] == "GL") factors.push_back(gl_group(n, f, cap));
      else if (m[1] == "SL") factors.push_back(sl_group(n, f, cap));
      else factors.push_back(elementary_closure(n, f, cap));
    } else {
      throw std::invalid_argument("unknown catalogue group '" + token + "'");
    }
  }
  if (factors.empty()) throw std::invalid_argument("empty group spec");
  if (factors.size() == 1) return factors.front();
  return direct_product(factors, cap);
}

namespace {

struct NamedGroup {
  std::string name;
  FiniteGroup group;
  bool permutation;  // has a sign homomorphism through its permutation codes
};

std::vector<NamedGroup> acting_catalogue() {
  std::vector<NamedGroup> c;
  for (int n = 2; n <= 6; ++n) c.push_back({"Z" + std::to_string(n), cyclic_group(n), false});
  for (int n = 3; n <= 5; ++n) c.push_back({"D" + std::to_string(n), dihedral_group(n), true});
  for (int k = 2; k <= 4; ++k) c.push_back({"S" + std::to_string(k), symmetric_group(k), true});
  c.push_back({"SL2F3", catalogue_group("SL2F3"), false});
  return c;
}

std::vector<int> abelian_moduli() { return {2, 3, 4, 5, 6, 8}; }

}  // namespace

std::vector<RandomSemidirectCase> random_semidirect_cases(std::uint64_t seed, int count,
                                                          std::size_t max_order) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const auto catalogue = acting_catalogue();
  const auto moduli = abelian_moduli();
  std::vector<RandomSemidirectCase> out;
  while (static_cast<int>(out.size()) < count) {
    const int family = static_cast<int>(pick(5));
    const NamedGroup& g = catalogue[pick(catalogue.size())];
    switch (family) {
      case 0: {  // trivial action on a catalogue group
        const NamedGroup& h = catalogue[pick(catalogue.size())];
        if (g.group.order() * h.group.order() > max_order) continue;
        out.push_back({g.name + " x " + h.name + " (trivial)", GroupAction::trivial(g.group, h.group)});
        break;
      }
      case 1: {  // conjugation on a copy of itself
        if (g.group.order() * g.group.order() > max_order) continue;
        const FiniteGroup& gg = g.group;
        auto act = [&gg](std::size_t k, std::size_t h) { return gg.conjugate(k, h); };
        out.push_back({g.name + " x| " + g.name + " (conjugation)",
                       GroupAction::from_function(gg, gg, act)});
        break;
      }
      case 2: {  // odd permutations invert an abelian group
        if (!g.permutation) continue;
        int a = moduli[pick(moduli.size())];
        int b = moduli[pick(moduli.size())];
        FiniteGroup h = pick(2) ? cyclic_group(a) : direct_product({cyclic_group(a), cyclic_group(b)});
        if (g.group.order() * h.order() > max_order) continue;
        const FiniteGroup& gg = g.group;
        const FiniteGroup* hp = &h;
        auto act = [&gg, hp](std::size_t k, std::size_t x) {
          return permutation_parity(gg.element(k)) ? hp->inv(x) : x;
        };
        out.push_back({g.name + " x| " + h.rep()->name() + " (sign inversion)",
                       GroupAction::from_function(gg, h, act)});
        break;
      }
      case 3: {  // Z_m acting on Z_n through a unit u with u^m = 1
        int m = 2 + static_cast<int>(pick(5));
        int n = 3 + static_cast<int>(pick(10));
        std::vector<int> units;
        for (int u = 1; u < n; ++u) {
          if (std::gcd(u, n) != 1) continue;
          int p = 1;
          for (int i = 0; i < m; ++i) p = p * u % n;
          if (p == 1) units.push_back(u);
        }
        int u = units[pick(units.size())];
        if (static_cast<std::size_t>(m * n) > max_order) continue;
        FiniteGroup zm = cyclic_group(m);
        FiniteGroup zn = cyclic_group(n);
        std::vector<std::size_t> image(zn.order());
        for (std::size_t x = 0; x < zn.order(); ++x)
          image[x] = zn.index_of({static_cast<std::int32_t>(zn.element(x)[0] * u % n)});
        out.push_back({"Z" + std::to_string(m) + " x| Z" + std::to_string(n) + " (multiply by " +
                           std::to_string(u) + ")",
                       GroupAction::from_generator_images(zm, zn, {image})});
        break;
      }
      default: {  // Sym(k) permuting coordinates of Z_a^k, optionally sign-twisted
        int k = 2 + static_cast<int>(pick(2));
        int a = moduli[pick(moduli.size())];
        bool twist = pick(2) != 0;
        FiniteGroup sym = symmetric_group(k);
        FiniteGroup h = power_group(cyclic_group(a), k);
        if (sym.order() * h.order() > max_order) continue;
        const FiniteGroup* sp = &sym;
        const FiniteGroup* hp = &h;
        auto act = [sp, hp, k, twist](std::size_t li, std::size_t x) {
          const Code& perm = sp->element(li);
          const Code& tuple = hp->element(x);
          Code out(k);
          for (int y = 0; y < k; ++y) out[perm[y]] = tuple[y];
          std::size_t idx = hp->index_of(out);
          return (twist && permutation_parity(perm)) ? hp->inv(idx) : idx;
        };
        out.push_back({"S" + std::to_string(k) + " x| Z" + std::to_string(a) + "^" +
                           std::to_string(k) + (twist ? " (permute + sign)" : " (permute)"),
                       GroupAction::from_function(sym, h, act)});
        break;
      }
    }
  }
  return out;
}

}  // namespace mtk1
