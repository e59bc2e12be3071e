#include "doctest.h"

#include <numeric>
#include <set>

#include "mtk1/constructions.hpp"
#include "mtk1/group.hpp"
#include "mtk1/linear_groups.hpp"

using namespace mtk1;

namespace {

// [G,G] by closing the set of all commutators under multiplication.
std::set<std::size_t> commutators_closure(const FiniteGroup& g) {
  std::set<std::size_t> s{FiniteGroup::kIdentity};
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) s.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::size_t> cur(s.begin(), s.end());
    for (auto x : cur)
      for (auto y : cur)
        if (s.insert(g.mul(x, y)).second) grew = true;
  }
  return s;
}

// An abelian group is determined up to isomorphism by the counts
// #{x : kx = 0}; compare those counts for G/[G,G] against the invariants.
bool quotient_matches(const FiniteGroup& g, const AbInvariants& inv) {
  auto c = commutators_closure(g);
  const std::size_t q = g.order() / c.size();
  if (q != inv.order()) return false;
  for (std::size_t k = 1; k <= q; ++k) {
    if (q % k) continue;
    std::size_t hits = 0;
    for (std::size_t x = 0; x < g.order(); ++x)
      if (c.count(g.power(x, k))) ++hits;
    std::size_t predicted = 1;
    for (auto d : inv.factors()) predicted *= std::gcd<std::uint64_t>(d, k);
    if (hits / c.size() != predicted) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("invariant factors are canonical") {
  CHECK(AbInvariants::of({2, 3}).factors() == std::vector<std::uint64_t>{6});
  CHECK(AbInvariants::of({2, 4, 2}).factors() == std::vector<std::uint64_t>{2, 2, 4});
  CHECK(AbInvariants::of({1, 1}).is_trivial());
  CHECK(AbInvariants::of({4, 6}).elementary_divisors() == std::vector<std::uint64_t>{2, 3, 4});
  CHECK(AbInvariants::of({6}) == AbInvariants::of({3, 2}));
  CHECK_THROWS(AbInvariants::of({0}));
}

TEST_CASE("SL2(F3) has order 24 and commutator subgroup Q8") {
  FiniteGroup g = catalogue_group("SL2F3");
  CHECK(g.order() == 24);
  FiniteGroup c = commutator_subgroup(g);
  auto oracle = commutators_closure(g);
  CHECK(c.order() == oracle.size());
  CHECK(c.order() == 8);
  // Q8 has a unique involution.
  int involutions = 0;
  for (std::size_t i = 0; i < c.order(); ++i)
    if (c.element_order(i) == 2) ++involutions;
  CHECK(involutions == 1);
  CHECK(abelianization(g) == AbInvariants::of({3}));
  CHECK(quotient_matches(g, abelianization(g)));
}

TEST_CASE("abelianizations agree with the commutator-closure oracle") {
  for (const char* spec : {"D4", "D5", "S4", "A4", "Z4xZ6", "S3xZ2", "GL2F3", "D6"}) {
    CAPTURE(spec);
    FiniteGroup g = catalogue_group(spec);
    CHECK(quotient_matches(g, abelianization(g)));
  }
  CHECK(abelianization(catalogue_group("D4")) == AbInvariants::of({2, 2}));
  CHECK(abelianization(catalogue_group("A4")) == AbInvariants::of({3}));
}

TEST_CASE("Z2 acting on Z4 by inversion gives the dihedral group of order 8") {
  FiniteGroup k = cyclic_group(2);
  FiniteGroup h = cyclic_group(4);
  auto act = GroupAction::from_function(k, h, [&](std::size_t a, std::size_t x) {
    return a == 0 ? x : h.inv(x);
  });
  CHECK_FALSE(act.check().has_value());
  FiniteGroup g = semidirect(act);
  REQUIRE(g.order() == 8);
  CHECK_FALSE(g.is_abelian());
  // Presentation <r, s | r^4, s^2, s r s^-1 r> generating everything.
  bool found = false;
  for (std::size_t r = 0; r < g.order() && !found; ++r)
    for (std::size_t s = 0; s < g.order() && !found; ++s) {
      if (g.element_order(r) != 4 || g.element_order(s) != 2) continue;
      if (g.conjugate(s, r) != g.inv(r)) continue;
      std::vector<std::size_t> gens{r, s};
      if (subgroup(g, gens).order() == 8) found = true;
    }
  CHECK(found);
  CHECK(coinvariants(act) == AbInvariants::of({2}));
  auto v = verify_semiab(act);
  CHECK(v.pass);
  CHECK(v.computed == AbInvariants::of({2, 2}));
}

TEST_CASE("wreath products") {
  FiniteGroup w = wreath(cyclic_group(2), 2, symmetric_group(2));
  CHECK(w.order() == 8);
  CHECK(quotient_matches(w, abelianization(w)));
  CHECK(abelianization(w) == AbInvariants::of({2, 2}));
  auto v = verify_wreath_ab(catalogue_group("S3"), 3);
  CHECK(v.pass);
  CHECK(v.computed == AbInvariants::of({2, 2}));
}

TEST_CASE("permutation parity") {
  std::vector<std::int32_t> id{0, 1, 2, 3};
  std::vector<std::int32_t> t{1, 0, 2, 3};
  std::vector<std::int32_t> c3{1, 2, 0, 3};
  std::vector<std::int32_t> c4{1, 2, 3, 0};
  CHECK(permutation_parity(id) == 0);
  CHECK(permutation_parity(t) == 1);
  CHECK(permutation_parity(c3) == 0);
  CHECK(permutation_parity(c4) == 1);
  CHECK(alternating_group(5).order() == 60);
}

TEST_CASE("lift maps") {
  std::vector<int> swap{1, 0};
  CHECK(lift_permutation(2, 4, swap) == std::vector<int>{1, 0, 3, 2});
  std::vector<int> cyc{1, 2, 0};
  CHECK(lift_permutation(3, 6, cyc) == std::vector<int>{1, 2, 0, 4, 5, 3});
  std::vector<SignedTranslation> t{{1, 5}, {-1, 2}, {1, 0}};
  auto lifted = lift_wreath_component(3, 6, t);
  REQUIRE(lifted.size() == 6);
  for (int i = 0; i < 6; ++i) CHECK(lifted[i] == t[i % 3]);
  CHECK_THROWS(lift_permutation(2, 5, swap));
  CHECK(check_eventually_even(2, 4));
  CHECK_FALSE(check_eventually_even(2, 2));
  CHECK(check_eventually_even(1, 3));
}

TEST_CASE("element cap and bad specs") {
  CHECK_THROWS_AS(symmetric_group(8, 100), CapExceeded);
  CHECK_THROWS(catalogue_group("Q17"));
  CHECK_THROWS(catalogue_group(""));
}

TEST_CASE("seeded semidirect cases are reproducible") {
  auto a = random_semidirect_cases(42, 5);
  auto b = random_semidirect_cases(42, 5);
  REQUIRE(a.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(a[i].description == b[i].description);
}
