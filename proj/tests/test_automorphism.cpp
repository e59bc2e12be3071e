#include "doctest.h"

#include "mtk1/automorphism.hpp"
#include "random_objects.hpp"

using namespace mtk1;
using mtk1::testing::point_swap;
using mtk1::testing::random_affine;
using mtk1::testing::random_pamap;
using mtk1::testing::random_point;

namespace {

RatVec v(std::initializer_list<int> xs) {
  RatVec out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

AffineMap scalar(int n, int c) {
  RatMatrix a(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = c;
  return AffineMap::make(a, RatVec(n));
}

// x -> 2x on Q^1 off {1, 2}; 1 -> 4 and 2 -> 2, so 1 and 2 trade images.
PAMap doubling_with_swap() {
  AffineCoset p1 = AffineCoset::from_point(v({1}));
  AffineCoset p2 = AffineCoset::from_point(v({2}));
  std::vector<Piece> pieces;
  pieces.push_back({*make_block(AffineCoset::whole(1), {p1, p2}), scalar(1, 2)});
  pieces.push_back({*make_block(p1, {}), AffineMap::translation(v({3}))});
  pieces.push_back({*make_block(p2, {}), AffineMap::translation(v({0}))});
  return PAMap(1, std::move(pieces), DefinableSet::whole(1));
}

}  // namespace

TEST_CASE("identity and global affine maps") {
  PAMap id = PAMap::identity(DefinableSet::whole(2));
  CHECK(validate(id).pass);
  CHECK(support(id).is_empty());
  CHECK(dim_aut(id) == std::nullopt);
  CHECK(in_omega_m(id, 0));
  PAMap t = PAMap::affine(AffineMap::translation(v({1, 0})));
  CHECK(validate(t).pass);
  CHECK(dim_aut(t) == 2);
  CHECK_FALSE(in_omega_m(t, 1));
  RatMatrix refl(2, 2);
  refl(0, 1) = 1;
  refl(1, 0) = 1;
  PAMap r = PAMap::affine(AffineMap::make(refl, v({0, 0})));
  CHECK(dim_aut(r) == 2);
  CHECK(k0_class(support(r)).to_string() == "X^2 - X");
  CHECK_THROWS(AffineMap::make(RatMatrix(2, 2), v({0, 0})));
}

TEST_CASE("point swaps") {
  PAMap s = point_swap(v({0}), v({1}));
  CHECK(validate(s).pass);
  CHECK(dim_aut(s) == 0);
  CHECK(k0_class(support(s)) == K0Class({2}));
  CHECK(s.apply(v({0})) == v({1}));
  CHECK(s.apply(v({7})) == v({7}));
  CHECK(same_action(compose(s, s), PAMap::identity(DefinableSet::whole(1))));
  CHECK(in_omega_m(s, 0));
}

TEST_CASE("invalid maps are rejected") {
  // Two pieces overlapping on the whole line.
  std::vector<Piece> pieces;
  pieces.push_back({*make_block(AffineCoset::whole(1), {}), AffineMap::identity(1)});
  pieces.push_back({*make_block(AffineCoset::from_point(v({0})), {}), AffineMap::translation(v({1}))});
  CHECK_FALSE(validate(PAMap(1, pieces)).pass);
  // Not surjective: moves 0 to 1 and leaves 1 fixed.
  std::vector<Piece> lossy;
  AffineCoset p0 = AffineCoset::from_point(v({0}));
  lossy.push_back({*make_block(AffineCoset::whole(1), {p0}), AffineMap::identity(1)});
  lossy.push_back({*make_block(p0, {}), AffineMap::translation(v({1}))});
  AutCheck c = validate(PAMap(1, lossy, DefinableSet::whole(1)));
  CHECK_FALSE(c.pass);
  CHECK_FALSE(c.failures.empty());
}

TEST_CASE("decomposition of a doubling map with a point exchange") {
  PAMap f = doubling_with_swap();
  REQUIRE(validate(f).pass);
  CHECK(dim_aut(f) == 1);
  auto dec = upsilon_decompose(f);
  CHECK(dec.g == scalar(1, 2));
  CHECK(validate(dec.h).pass);
  CHECK(dim_aut(dec.h) == 0);
  CHECK(k0_class(support(dec.h)) == K0Class({2}));
  CHECK(same_action(compose(PAMap::affine(dec.g), dec.h), f));
  CHECK_THROWS(upsilon_decompose(PAMap::identity(DefinableSet::from_coset(AffineCoset::from_point(v({0}))))));
}

TEST_CASE("composition and inversion") {
  PAMap a = PAMap::affine(AffineMap::translation(v({1, 2})));
  PAMap b = PAMap::affine(AffineMap::translation(v({-3, 1})));
  CHECK(same_action(compose(a, b), PAMap::affine(AffineMap::translation(v({-2, 3})))));
  PAMap s = point_swap(v({0}), v({1}));
  PAMap d = PAMap::affine(scalar(1, 2));
  PAMap sd = compose(s, d);
  CHECK(validate(sd).pass);
  CHECK(sd.apply(v({0})) == v({1}));
  CHECK(sd.apply(v({3})) == v({6}));
  CHECK(same_action(compose(sd, invert(sd)), PAMap::identity(DefinableSet::whole(1))));
}

TEST_CASE("conjugating a swap moves its support") {
  PAMap s = point_swap(v({0, 0}), v({1, 0}));
  AffineMap t = AffineMap::translation(v({2, 5}));
  CHECK(same_action(conjugate(t, s), point_swap(v({2, 5}), v({3, 5}))));
  CHECK(same_action(conjugate(PAMap::affine(t), s), conjugate(t, s)));
}

TEST_CASE("random automorphisms") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 2;
    PAMap f = random_pamap(rng, n);
    PAMap g = random_pamap(rng, n);
    REQUIRE(validate(f).pass);
    PAMap fi = invert(f);
    CHECK(validate(fi).pass);
    CHECK(support(compose(f, fi)).is_empty());
    CHECK(dim_aut(fi) == dim_aut(f));
    for (int k = 0; k < 5; ++k) {
      RatVec x = random_point(rng, n);
      CHECK(fi.apply(f.apply(x)) == x);
      CHECK(compose(f, g).apply(x) == f.apply(g.apply(x)));
    }
    // Support of a product lies in the union of supports.
    CHECK(is_subset(support(compose(f, g)), set_union(support(f), support(g))));
    AffineMap c = random_affine(rng, n);
    PAMap conj = conjugate(c, f);
    CHECK(validate(conj).pass);
    CHECK(dim_aut(conj) == dim_aut(f));
    CHECK(k0_class(support(conj)) == k0_class(support(f)));
    auto dec = upsilon_decompose(f);
    CHECK(same_action(compose(PAMap::affine(dec.g), dec.h), f));
    CHECK(dim_at_most(dim_aut(dec.h), n - 1));
  }
}
