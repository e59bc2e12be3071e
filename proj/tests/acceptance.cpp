// One line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "mtk1/automorphism.hpp"
#include "mtk1/constructions.hpp"
#include "mtk1/definable.hpp"
#include "mtk1/k1_symbolic.hpp"
#include "mtk1/suites.hpp"
#include "random_objects.hpp"

using namespace mtk1;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome from_suite(const suites::SuiteReport& r, int min_cases = 1) {
  std::ostringstream s;
  s << r.passed << "/" << r.cases << " cases";
  if (!r.failures.empty()) s << "; first failure: " << r.failures.front();
  return {r.ok() && r.cases >= min_cases, s.str()};
}

Outcome k0_bridge() {
  std::mt19937_64 rng(2024);
  int combos = 0, comparisons = 0, bad_primes = 0;
  std::string first;
  for (int i = 0; i < 60; ++i) {
    const int n = 1 + i % 3;
    BoolExpr e = mtk1::testing::random_bool_expr(rng, n, 5);
    K0Class c = k0_class(boolean_normalize(e, n));
    ++combos;
    for (int p : {5, 7, 11}) {
      PointCount pc = count_points_mod_p(e, n, p);
      if (!pc.good_prime) {
        ++bad_primes;
        continue;
      }
      ++comparisons;
      if (static_cast<std::int64_t>(pc.count) != c.evaluate(p) && first.empty())
        first = "class " + c.to_string() + " at p = " + std::to_string(p) + " gives " +
                std::to_string(c.evaluate(p)) + ", count " + std::to_string(pc.count);
    }
  }
  std::ostringstream s;
  s << combos << " combinations, " << comparisons << " good-prime comparisons, " << bad_primes << " bad primes skipped";
  if (!first.empty()) s << "; " << first;
  return {first.empty() && combos >= 50 && comparisons >= 100, s.str()};
}

Outcome automorphisms() {
  std::mt19937_64 rng(77);
  int maps = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    if (first.empty()) first = "map " + std::to_string(maps) + ": " + what;
  };
  for (int i = 0; i < 40; ++i) {
    const int n = 1 + i % 2;
    PAMap f = mtk1::testing::random_pamap(rng, n);
    ++maps;
    if (!validate(f).pass) {
      fail("invalid");
      continue;
    }
    PAMap fi = invert(f);
    if (!validate(fi).pass) fail("inverse invalid");
    if (!support(compose(f, fi)).is_empty()) fail("f o f^-1 has support");
    if (!support(compose(fi, f)).is_empty()) fail("f^-1 o f has support");
    auto dec = upsilon_decompose(f);
    if (!same_action(compose(PAMap::affine(dec.g), dec.h), f)) fail("decomposition does not recompose");
    if (!dim_at_most(dim_aut(dec.h), n - 1)) fail("remainder has full-dimensional support");
    AffineMap c = mtk1::testing::random_affine(rng, n);
    if (dim_aut(conjugate(c, f)) != dim_aut(f)) fail("conjugation changes dimension");
    PAMap g = mtk1::testing::random_pamap(rng, n);
    if (dim_aut(conjugate(g, f)) != dim_aut(f)) fail("piecewise conjugation changes dimension");
  }
  return {first.empty() && maps >= 30, std::to_string(maps) + " maps over Q^1 and Q^2" + (first.empty() ? "" : "; " + first)};
}

Outcome symbolic() {
  std::string first;
  auto expect = [&](const RingDescriptor& r, const std::string& pretty) {
    FormalExpr e = k1_module(r, derive_flags(r));
    if (e.pretty() != pretty && first.empty()) first = r.name() + ": " + e.pretty();
    FormalExpr glab;
    glab.head = {{Atom::zmod(2), Mult::finite(1)}};
    glab.block = {{Atom::glab(kSymbolicLevel, r), Mult::finite(1)}, {Atom::zmod(2), Mult::finite(1)}};
    if (!derive_flags(r).even_branch()) glab.block.push_back({Atom::zmod(2), Mult::finite(1)});
    if (r.kind != RingDescriptor::Kind::Integers && !formal_equal(e.canonical(), glab.canonical()) && first.empty())
      first = r.name() + ": differs from the GL form";
  };
  expect(RingDescriptor::infinite_field("F"), "Z_2 ⊕ ⊕_{n≥1}(F^× ⊕ Z_2)");
  expect(RingDescriptor::finite_field(4), "Z_2 ⊕ ⊕_{n≥1}(Z_3 ⊕ Z_2)");
  expect(RingDescriptor::finite_field(8), "Z_2 ⊕ ⊕_{n≥1}(Z_7 ⊕ Z_2)");
  expect(RingDescriptor::finite_field(3), "Z_2 ⊕ ⊕_{n≥1}(Z_2 ⊕ Z_2 ⊕ Z_2)");
  expect(RingDescriptor::finite_field(5), "Z_2 ⊕ ⊕_{n≥1}(Z_4 ⊕ Z_2 ⊕ Z_2)");
  expect(RingDescriptor::finite_field(7), "Z_2 ⊕ ⊕_{n≥1}(Z_6 ⊕ Z_2 ⊕ Z_2)");
  expect(RingDescriptor::finite_field(9), "Z_2 ⊕ ⊕_{n≥1}(Z_8 ⊕ Z_2 ⊕ Z_2)");
  expect(RingDescriptor::poly_char0("F"), "Z_2 ⊕ ⊕_{n≥1}(F^× ⊕ Z_2)");
  expect(RingDescriptor::integers(), "⊕_{n≥0}(Z_2)");
  {
    FormalExpr z = k1_module(RingDescriptor::integers(), derive_flags(RingDescriptor::integers()));
    if (!formal_equal(z.canonical(), FormalAbGroup({{Atom::zmod(2), Mult::omega()}})) && first.empty())
      first = "Z: not a countable sum of Z_2";
  }
  for (int q : {4, 5})
    for (int n = 1; n <= 2; ++n)
      if (!truncation_consistency(q, n).pass && first.empty())
        first = "truncation over F_" + std::to_string(q) + " at n = " + std::to_string(n);
  auto rejects = [&](const std::function<void()>& fn, const std::string& needle, const std::string& what) {
    try {
      fn();
    } catch (const std::domain_error& e) {
      if (std::string(e.what()).find(needle) == std::string::npos && first.empty())
        first = what + ": unexpected message '" + e.what() + "'";
      return;
    }
    if (first.empty()) first = what + " accepted";
  };
  auto f2 = RingDescriptor::finite_field(2);
  auto z = RingDescriptor::integers();
  rejects([&] { k1_module(f2, derive_flags(f2)); }, "F_2 is not supported", "F_2");
  rejects([&] { k1_module(z, derive_flags(z), 2); }, "rank other than 1", "rank-2 Z-module");
  rejects([&] { k1_module(z, derive_flags(z), 0); }, "rank other than 1", "countable-rank Z-module");
  return {first.empty(), first.empty() ? "9 rings, 4 truncations, 3 rejections" : first};
}

Outcome monotone() {
  std::vector<std::pair<RingDescriptor, TheoryFlags>> rings;
  for (int q : {3, 4, 5, 7, 8, 9, 16, 25}) rings.push_back({RingDescriptor::finite_field(q), derive_flags(RingDescriptor::finite_field(q))});
  for (auto r : {RingDescriptor::infinite_field("F"), RingDescriptor::poly_char0("Q"), RingDescriptor::integers()})
    rings.push_back({r, derive_flags(r)});
  auto ed = RingDescriptor::abstract_ed("R", true);
  rings.push_back({ed, {true, std::nullopt}});
  rings.push_back({ed, {false, true}});
  rings.push_back({ed, {false, false}});
  int checks = 0;
  std::string first;
  for (const auto& [r, flags] : rings)
    for (int n = 1; n <= 6; ++n) {
      ++checks;
      FormalAbGroup a = omega_nn_ab(r, flags, n).canonical();
      FormalAbGroup b = omega_nn_ab(r, flags, n + 1).canonical();
      if (!a.contained_in(b) && first.empty())
        first = r.name() + " at n = " + std::to_string(n) + ": " + a.to_string() + " not in " + b.to_string();
    }
  return {first.empty(), std::to_string(rings.size()) + " ring/flag choices, " + std::to_string(checks) + " steps" +
                             (first.empty() ? "" : "; " + first)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"semidirect abelianization", [] { return from_suite(suites::semiab(1, 30), 30); }},
      {"wreath abelianization", [] { return from_suite(suites::wreath()); }},
      {"symmetric groups", [] { return from_suite(suites::perm()); }},
      {"elementary closure", [] { return from_suite(suites::ed()); }},
      {"GL abelianization", [] { return from_suite(suites::gl()); }},
      {"K0 point counts", k0_bridge},
      {"automorphisms", automorphisms},
      {"lift maps", [] { return from_suite(suites::lift()); }},
      {"symbolic K1", symbolic},
      {"truncation monotonicity", monotone},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
