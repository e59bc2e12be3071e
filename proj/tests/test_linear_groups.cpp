#include "doctest.h"

#include "mtk1/linear_groups.hpp"

using namespace mtk1;

namespace {

int det_mod(const std::vector<int>& m, int n, int p) {
  if (n == 1) return ((m[0] % p) + p) % p;
  long d = 0;
  for (int c = 0; c < n; ++c) {
    std::vector<int> minor;
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (j != c) minor.push_back(m[i * n + j]);
    long term = static_cast<long>(m[c]) * det_mod(minor, n - 1, p);
    d += c % 2 ? -term : term;
  }
  return static_cast<int>(((d % p) + p) % p);
}

std::uint64_t brute_gl_count(int n, int p) {
  const int cells = n * n;
  std::uint64_t total = 1;
  for (int i = 0; i < cells; ++i) total *= p;
  std::uint64_t hits = 0;
  std::vector<int> m(cells);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < cells; ++i) {
      m[i] = static_cast<int>(c % p);
      c /= p;
    }
    if (det_mod(m, n, p)) ++hits;
  }
  return hits;
}

}  // namespace

TEST_CASE("GL orders against counting invertible matrices") {
  for (auto [n, p] : {std::pair{1, 5}, {2, 2}, {2, 3}, {2, 5}, {3, 2}}) {
    CAPTURE(n);
    CAPTURE(p);
    auto brute = brute_gl_count(n, p);
    CHECK(gl_order(n, p) == brute);
    CHECK(gl_group(n, MatRing::finite_field(p)).order() == brute);
    CHECK(sl_group(n, MatRing::finite_field(p)).order() == brute / (p - 1));
  }
  CHECK(gl_group(2, MatRing::finite_field(4)).order() == 180);
}

TEST_CASE("determinant is multiplicative over GL2(F3)") {
  MatRing f = MatRing::finite_field(3);
  FiniteGroup g = gl_group(2, f);
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) {
      int da = det_class(f, 2, g.element(a));
      int db = det_class(f, 2, g.element(b));
      int dab = det_class(f, 2, g.element(g.mul(a, b)));
      REQUIRE(dab == f.mul(da, db));
    }
  std::vector<std::int32_t> singular{1, 2, 2, 1};
  CHECK_THROWS(det_class(f, 2, singular));
}

TEST_CASE("finite field tables") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    CAPTURE(q);
    MatRing f = MatRing::finite_field(q);
    CHECK(static_cast<int>(f.units().size()) == q - 1);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (int c = 0; c < q; ++c) REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    for (int u : f.units()) CHECK(f.mul(u, f.inv(u)) == 1);
  }
  CHECK_THROWS(MatRing::finite_field(6));
  CHECK_FALSE(MatRing::finite_field(2).unit_sum_witness().exists);
  auto w = MatRing::finite_field(3).unit_sum_witness();
  CHECK(w.exists);
  CHECK(MatRing::finite_field(3).add(w.u, w.v) == 1);
}

TEST_CASE("GL abelianization against the unit group") {
  auto v = verify_gl_ab(2, MatRing::finite_field(3));
  CHECK(v.matches);
  CHECK(v.commutator_is_sl);
  CHECK(v.abelianization == AbInvariants::of({2}));
  auto e = verify_gl_ab(2, MatRing::finite_field(2));
  CHECK_FALSE(e.matches);
  CHECK(e.known_exception);
  CHECK(e.abelianization == AbInvariants::of({2}));
  CHECK(is_known_gl_exception(2, 2));
  CHECK_FALSE(is_known_gl_exception(2, 3));
  CHECK_FALSE(is_known_gl_exception(3, 2));
}

TEST_CASE("elementary closure is SL") {
  MatRing f = MatRing::finite_field(5);
  CHECK(elementary_closure(2, f).order() == 120);
  CHECK(affine_group(1, f).order() == 20);
}
