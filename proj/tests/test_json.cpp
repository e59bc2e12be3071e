#include "doctest.h"

#include "mtk1/json_io.hpp"
#include "random_objects.hpp"

using namespace mtk1;

TEST_CASE("rationals") {
  CHECK(rational_to_json(Rational(3)) == Json(3));
  CHECK(rational_to_json(Rational(-1, 2)) == Json("-1/2"));
  CHECK(rational_from_json(Json("4/6")) == Rational(2, 3));
  CHECK(rational_from_json(Json(-7)) == Rational(-7));
  CHECK_THROWS(rational_from_json(Json("1/0")));
  CHECK_THROWS(rational_from_json(Json(true)));
}

TEST_CASE("class and set serialization") {
  Json k = k0_to_json(K0Class({0, -1, 1}));
  CHECK(k["pretty"] == "X^2 - X");
  CHECK(k["dim"] == 2);
  CHECK(k0_to_json(K0Class())["dim"] == "-inf");
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 3;
    DefinableSet d = boolean_normalize(mtk1::testing::random_bool_expr(rng, n), n);
    DefinableSet back = set_from_json(set_to_json(d));
    CHECK(same_points(back, d));
    CHECK(set_to_json(back) == set_to_json(d));
  }
}

TEST_CASE("automorphism serialization") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 2;
    PAMap f = mtk1::testing::random_pamap(rng, n);
    PAMap back = pamap_from_json(pamap_to_json(f));
    CHECK(validate(back).pass);
    CHECK(same_action(back, f));
  }
  Json defaults = Json::parse(R"({"ambient": 2, "pieces": [{"carrier": []}]})");
  PAMap id = pamap_from_json(defaults);
  CHECK(validate(id).pass);
  CHECK(support(id).is_empty());
  CHECK_THROWS(pamap_from_json(Json::parse(R"({"pieces": []})")));
  CHECK_THROWS(pamap_from_json(Json::parse(R"({"ambient": 1, "pieces": [{"carrier": [], "matrix": [[0]]}]})")));
  CHECK_THROWS(pamap_from_json(Json::parse(R"({"ambient": 1, "pieces": [{"carrier": [[1, 2, 3]]}]})")));
}

TEST_CASE("formal groups") {
  FormalAbGroup g({{Atom::zmod(2), Mult::omega()}, {Atom::units(RingDescriptor::infinite_field("F")), Mult::finite(1)}});
  Json j = formal_to_json(g);
  REQUIRE(j["summands"].size() == 2);
  bool saw_countable = false;
  for (const auto& s : j["summands"])
    if (s["mult"] == "countable") saw_countable = true;
  CHECK(saw_countable);
  auto r = RingDescriptor::finite_field(4);
  Json e = expr_to_json(k1_module(r, derive_flags(r)));
  CHECK(e["pretty"] == "Z_2 ⊕ ⊕_{n≥1}(Z_3 ⊕ Z_2)");
  CHECK(atom_to_json(Atom::glab(3, RingDescriptor::integers()))["atom"] == "GLab");
}
