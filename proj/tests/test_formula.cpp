#include "doctest.h"

#include <random>

#include "mtk1/formula.hpp"

using namespace mtk1;

namespace {

Formula random_formula(std::mt19937_64& rng, int n, int depth) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Formula f;
  if (depth == 0 || pick(0, 2) == 0) {
    f.op = Formula::Op::PP;
    const int bound = pick(0, 2);
    for (int b = 0; b < bound; ++b) f.pp.bound.push_back("y" + std::to_string(b + 1));
    const int eqs = pick(0, 2);
    for (int e = 0; e < eqs; ++e) {
      LinearEq q;
      q.coeffs.resize(n + bound);
      bool any = false;
      for (auto& c : q.coeffs) {
        c = Rational(pick(-3, 3), pick(1, 2));
        c.canonicalize();
        any = any || c != 0;
      }
      if (!any) q.coeffs[0] = 1;
      q.rhs = Rational(pick(-4, 4), pick(1, 3));
      q.rhs.canonicalize();
      f.pp.equations.push_back(q);
    }
    return f;
  }
  const int kind = pick(0, 2);
  if (kind == 0) {
    f.op = Formula::Op::Not;
    f.children.push_back(random_formula(rng, n, depth - 1));
    return f;
  }
  f.op = kind == 1 ? Formula::Op::And : Formula::Op::Or;
  const int arity = pick(2, 3);
  for (int i = 0; i < arity; ++i) f.children.push_back(random_formula(rng, n, depth - 1));
  return f;
}

}  // namespace

TEST_CASE("parsing small formulas") {
  auto a = parse_formula("ambient 2; pp(x1 = 0) | pp(x2 = 0)");
  CHECK(a.ambient == 2);
  CHECK(a.root.op == Formula::Op::Or);
  CHECK(a.root.children.size() == 2);
  CHECK(k0_class(elaborate(a)).to_string() == "2X - 1");

  auto b = parse_formula("# comment\nambient 1;\n pp(E y : x1 - y*2 = 0)");
  CHECK(k0_class(elaborate(b)).to_string() == "X");
  auto c = parse_formula("ambient 2; !pp(x2 = 0) & pp()");
  CHECK(k0_class(elaborate(c)).to_string() == "X^2 - X");
  auto d = parse_formula("ambient 2; pp(E y z : x1 = y + z & x2 = y - z & y = 1/2)");
  CHECK(k0_class(elaborate(d)).to_string() == "X");
  auto e = parse_formula("ambient 1; pp(2*x1 = 3) | pp(x1 = 3/2)");
  CHECK(k0_class(elaborate(e)) == K0Class({1}));
  auto f = parse_formula("ambient 2; pp(x1 = 0 & x1 = 1)");
  CHECK(elaborate(f).is_empty());
  CHECK(dim(elaborate(f)) == std::nullopt);
}

TEST_CASE("precedence") {
  auto a = parse_formula("ambient 1; pp(x1 = 0) | pp(x1 = 1) & pp(x1 = 2)");
  REQUIRE(a.root.op == Formula::Op::Or);
  CHECK(a.root.children[1].op == Formula::Op::And);
  CHECK(k0_class(elaborate(a)) == K0Class({1}));
  auto b = parse_formula("ambient 1; !pp(x1 = 0) & pp(x1 = 1)");
  REQUIRE(b.root.op == Formula::Op::And);
  CHECK(b.root.children[0].op == Formula::Op::Not);
  auto c = parse_formula("ambient 1; !(pp(x1 = 0) | pp(x1 = 1))");
  CHECK(c.root.op == Formula::Op::Not);
  CHECK(k0_class(elaborate(c)).to_string() == "X - 2");
}

TEST_CASE("parse errors carry positions") {
  auto fails_at = [](const std::string& text, int line, int column) {
    try {
      parse_formula(text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
      return;
    }
    FAIL("no error for: " << text);
  };
  fails_at("ambient 2; pp(x3 = 0)", 1, 15);
  fails_at("ambient 2;\npp(x1 = 0", 2, 10);
  fails_at("ambient 0; pp()", 1, 9);
  fails_at("pp(x1 = 0)", 1, 1);
  fails_at("ambient 1; pp(x1 * x1 = 0)", 1, 20);
  fails_at("ambient 1; pp(x1 = 1/0)", 1, 22);
  fails_at("ambient 1; pp(E y y : x1 = y)", 1, 19);
  fails_at("ambient 1; pp(x1 = 0) pp(x1 = 1)", 1, 23);
  CHECK_THROWS_WITH(parse_formula("ambient 1; pp(x1 = )"), doctest::Contains("1:"));
}

TEST_CASE("printing round-trips") {
  for (const char* text :
       {"ambient 2; pp(x1 = 0) | pp(x2 = 0)", "ambient 1; pp(E y : x1 - y*2 = 0)",
        "ambient 2; !(pp(x1 = 0) & pp(x2 = 1/3)) | pp()", "ambient 3; (pp(x1 = 0) | pp(x2 = 0)) & !pp(x3 = -2)"}) {
    auto a = parse_formula(text);
    auto printed = print_formula(a);
    CAPTURE(printed);
    CHECK(parse_formula(printed) == a);
    CHECK(print_formula(parse_formula(printed)) == printed);
  }
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    FormulaAST ast{1 + trial % 3, random_formula(rng, 1 + trial % 3, 3)};
    auto printed = print_formula(ast);
    CAPTURE(printed);
    auto back = parse_formula(printed);
    CHECK(print_formula(back) == printed);
    CHECK(same_points(elaborate(back), elaborate(ast)));
  }
}

TEST_CASE("elaboration is compositional") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 2;
    FormulaAST a{n, random_formula(rng, n, 2)};
    FormulaAST b{n, random_formula(rng, n, 2)};
    FormulaAST na{n, Formula{Formula::Op::Not, {}, {a.root}, {}}};
    FormulaAST ab{n, Formula{Formula::Op::And, {}, {a.root, b.root}, {}}};
    CHECK(same_points(elaborate(na), set_complement(elaborate(a))));
    CHECK(same_points(elaborate(ab), set_intersection(elaborate(a), elaborate(b))));
    CHECK(same_points(boolean_normalize(to_bool_expr(a), n), elaborate(a)));
  }
}
