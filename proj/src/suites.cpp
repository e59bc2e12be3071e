#include "mtk1/suites.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mtk1/constructions.hpp"
#include "mtk1/k1_symbolic.hpp"
#include "mtk1/linear_groups.hpp"

namespace mtk1::suites {

void SuiteReport::record(bool pass, const std::string& label) {
  ++cases;
  if (pass) ++passed;
  else failures.push_back(label);
}

SuiteReport semiab(std::uint64_t seed, int count, std::size_t cap) {
  SuiteReport r;
  r.suite = "semiab";
  for (const auto& c : random_semidirect_cases(seed, count, 2000)) {
    auto v = verify_semiab(c.action, cap);
    r.record(v.pass, c.description + ": computed " + v.computed.to_string() + ", expected " +
                         v.expected.to_string());
  }
  return r;
}

SuiteReport wreath(std::size_t cap) {
  SuiteReport r;
  r.suite = "wreath";
  for (const char* k : {"Z2", "Z3", "Z4", "S3"})
    for (int degree : {2, 3}) {
      auto v = verify_wreath_ab(catalogue_group(k, cap), degree, cap);
      r.record(v.pass, std::string(k) + " wr Sym(" + std::to_string(degree) + "): computed " +
                           v.computed.to_string() + ", expected " + v.expected.to_string());
    }
  return r;
}

namespace {

bool same_subgroup(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  return std::all_of(a.elements().begin(), a.elements().end(), [&](const Code& c) { return b.contains(c); });
}

}  // namespace

SuiteReport perm(std::size_t cap) {
  SuiteReport r;
  r.suite = "perm";
  for (int k = 2; k <= 6; ++k) {
    FiniteGroup s = symmetric_group(k, cap);
    FiniteGroup c = commutator_subgroup(s, cap);
    FiniteGroup a = alternating_group(k, cap);
    const std::string tag = "Sym(" + std::to_string(k) + ")";
    r.record(same_subgroup(c, a), tag + ": commutator subgroup of order " + std::to_string(c.order()) +
                                      " is not Alt(" + std::to_string(k) + ")");
    AbInvariants ab = abelianization(s);
    r.record(ab == AbInvariants::of({2}), tag + "^ab = " + ab.to_string() + ", expected [2]");
  }
  return r;
}

SuiteReport ed(std::size_t cap) {
  SuiteReport r;
  r.suite = "ed";
  const std::pair<int, int> cases[] = {{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}};
  for (auto [n, q] : cases) {
    MatRing f = MatRing::finite_field(q);
    FiniteGroup e = elementary_closure(n, f, cap);
    FiniteGroup s = sl_group(n, f, cap);
    r.record(same_subgroup(e, s), "E_" + std::to_string(n) + "(F_" + std::to_string(q) + ") has order " +
                                      std::to_string(e.order()) + ", SL has order " + std::to_string(s.order()));
  }
  return r;
}

SuiteReport gl(std::size_t cap) {
  SuiteReport r;
  r.suite = "gl";
  const std::pair<int, int> regular[] = {{2, 4}, {2, 5}, {3, 2}, {3, 3}};
  for (auto [n, q] : regular) {
    auto v = verify_gl_ab(n, MatRing::finite_field(q), cap);
    r.record(v.matches && v.commutator_is_sl, "GL_" + std::to_string(n) + "(F_" + std::to_string(q) +
                                                  ")^ab = " + v.abelianization.to_string() + ", units " +
                                                  v.units.to_string());
  }
  {
    auto v = verify_gl_ab(2, MatRing::finite_field(2), cap);
    r.record(!v.matches && v.known_exception && v.pass(),
             "GL_2(F_2) is not flagged as the known exception (abelianization " + v.abelianization.to_string() + ")");
  }
  const std::pair<int, int> affine[] = {{1, 5}, {2, 2}, {2, 3}};
  for (auto [n, q] : affine) {
    MatRing f = MatRing::finite_field(q);
    AbInvariants a = abelianization(affine_group(n, f, 1, cap));
    AbInvariants g = abelianization(gl_group(n, f, cap));
    r.record(a == g, "affine group over F_" + std::to_string(q) + "^" + std::to_string(n) + ": " + a.to_string() +
                         " vs GL " + g.to_string());
  }
  return r;
}

namespace {

std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

std::vector<int> inverse_perm(const std::vector<int>& a) {
  std::vector<int> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<int>(i);
  return c;
}

int parity_of(const std::vector<int>& p) {
  std::vector<std::int32_t> code(p.begin(), p.end());
  return permutation_parity(code);
}

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

SuiteReport lift() {
  SuiteReport r;
  r.suite = "lift";
  {
    const std::vector<int> sigma{1, 0};
    r.record(lift_permutation(2, 4, sigma) == std::vector<int>{1, 0, 3, 2},
             "n = 2, m = 4 lift of the transposition is not 0->1, 1->0, 2->3, 3->2");
  }
  for (int n = 1; n <= 4; ++n) {
    const auto perms = all_perms(n);
    for (int m = n; m <= 12; m += n) {
      const std::string tag = "n = " + std::to_string(n) + ", m = " + std::to_string(m);
      bool hom = true;
      bool injective = true;
      bool parity = true;
      bool equivariant = true;
      std::vector<SignedTranslation> tuple(n);
      for (int l = 0; l < n; ++l) tuple[l] = {l % 2 ? -1 : 1, static_cast<std::int64_t>(l) * n};
      const auto lifted_tuple = lift_wreath_component(n, m, tuple);
      for (const auto& s : perms) {
        const auto ls = lift_permutation(n, m, s);
        if ((parity_of(ls) != (parity_of(s) * (m / n)) % 2)) parity = false;
        if (s != perms.front() && ls == lift_permutation(n, m, perms.front())) injective = false;
        // alpha_2(s . t) = alpha_1(s) . alpha_2(t), with (s . t)_x = t_{s^-1 x}
        const auto si = inverse_perm(s);
        std::vector<SignedTranslation> moved(n);
        for (int x = 0; x < n; ++x) moved[x] = tuple[si[x]];
        const auto lsi = inverse_perm(ls);
        std::vector<SignedTranslation> moved_up(m);
        for (int x = 0; x < m; ++x) moved_up[x] = lifted_tuple[lsi[x]];
        if (lift_wreath_component(n, m, moved) != moved_up) equivariant = false;
        for (const auto& t : perms)
          if (lift_permutation(n, m, compose_perm(s, t)) != compose_perm(ls, lift_permutation(n, m, t)))
            hom = false;
      }
      r.record(hom, tag + ": lift is not a homomorphism");
      r.record(injective, tag + ": lift is not injective");
      r.record(equivariant, tag + ": tuple lift is not equivariant");
      r.record(parity, tag + ": parity law fails");
    }
  }
  return r;
}

SuiteReport truncation(std::size_t cap) {
  SuiteReport r;
  r.suite = "truncation";
  for (int q : {4, 5})
    for (int n = 1; n <= 2; ++n) {
      auto t = truncation_consistency(q, n, cap);
      std::string why;
      for (const auto& f : t.failures) why += "; " + f;
      r.record(t.pass, "F_" + std::to_string(q) + ", n = " + std::to_string(n) + why);
    }
  auto f2 = truncation_consistency(2, 1, cap);
  r.record(!f2.pass, "F_2, n = 1: obstruction not reported");
  return r;
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> all{"semiab", "wreath", "perm", "gl", "ed", "lift", "truncation"};
  return all;
}

SuiteReport run(const std::string& name, std::uint64_t seed, std::size_t cap) {
  if (name == "semiab") return semiab(seed, 30, cap);
  if (name == "wreath") return wreath(cap);
  if (name == "perm") return perm(cap);
  if (name == "gl") return gl(cap);
  if (name == "ed") return ed(cap);
  if (name == "lift") return lift();
  if (name == "truncation") return truncation(cap);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace mtk1::suites
