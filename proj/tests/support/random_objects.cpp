#include "random_objects.hpp"

namespace mtk1::testing {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

AffineCoset random_coset(std::mt19937_64& rng, int n, int max_eqs) {
  const int eqs = uniform(rng, 1, std::min(max_eqs, n));
  std::vector<RatVec> rows;
  for (int e = 0; e < eqs; ++e) {
    RatVec row(n + 1);
    bool nonzero = false;
    for (int j = 0; j < n; ++j) {
      row[j] = uniform(rng, -2, 2);
      nonzero = nonzero || row[j] != 0;
    }
    if (!nonzero) row[uniform(rng, 0, n - 1)] = 1;
    row[n] = uniform(rng, -3, 3);
    rows.push_back(std::move(row));
  }
  return AffineCoset::from_equations(n, rows);
}

BoolExpr random_bool_expr(std::mt19937_64& rng, int n, int max_leaves) {
  if (max_leaves <= 1 || uniform(rng, 0, 3) == 0) {
    BoolExpr leaf = BoolExpr::atom(random_coset(rng, n));
    return uniform(rng, 0, 3) == 0 ? BoolExpr::negate(leaf) : leaf;
  }
  const int left = uniform(rng, 1, max_leaves - 1);
  BoolExpr a = random_bool_expr(rng, n, left);
  BoolExpr b = random_bool_expr(rng, n, max_leaves - left);
  BoolExpr e = uniform(rng, 0, 1) ? BoolExpr::conj(a, b) : BoolExpr::disj(a, b);
  return uniform(rng, 0, 4) == 0 ? BoolExpr::negate(e) : e;
}

AffineMap random_affine(std::mt19937_64& rng, int n) {
  while (true) {
    RatMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = uniform(rng, -2, 2);
    if (a.determinant() == 0) continue;
    RatVec b(n);
    for (auto& v : b) v = uniform(rng, -3, 3);
    return AffineMap::make(a, b);
  }
}

RatVec random_point(std::mt19937_64& rng, int n, int range) {
  RatVec p(n);
  for (auto& v : p) v = uniform(rng, -range, range);
  return p;
}

PAMap point_swap(const RatVec& p, const RatVec& q) {
  const int n = static_cast<int>(p.size());
  AffineCoset cp = AffineCoset::from_point(p);
  AffineCoset cq = AffineCoset::from_point(q);
  std::vector<Piece> pieces;
  pieces.push_back({*make_block(AffineCoset::whole(n), {cp, cq}), AffineMap::identity(n)});
  pieces.push_back({*make_block(cp, {}), AffineMap::translation(q - p)});
  pieces.push_back({*make_block(cq, {}), AffineMap::translation(p - q)});
  return PAMap(n, std::move(pieces), DefinableSet::whole(n));
}

namespace {

// Translation along a line of Q^2, identity off the line.
PAMap line_slide(std::mt19937_64& rng) {
  int a1 = 0, a2 = 0;
  while (a1 == 0 && a2 == 0) {
    a1 = uniform(rng, -2, 2);
    a2 = uniform(rng, -2, 2);
  }
  AffineCoset line = AffineCoset::from_equations(2, {{Rational(a1), Rational(a2), Rational(uniform(rng, -2, 2))}});
  const int k = uniform(rng, 1, 2);
  RatVec d{Rational(-a2 * k), Rational(a1 * k)};
  std::vector<Piece> pieces;
  pieces.push_back({*make_block(AffineCoset::whole(2), {line}), AffineMap::identity(2)});
  pieces.push_back({*make_block(line, {}), AffineMap::translation(d)});
  return PAMap(2, std::move(pieces), DefinableSet::whole(2));
}

// Exchanges two parallel lines by translations.
PAMap line_swap(std::mt19937_64& rng) {
  const bool vertical = uniform(rng, 0, 1);
  const int c1 = uniform(rng, -2, 1);
  const int c2 = c1 + uniform(rng, 1, 2);
  auto make_line = [&](int c) {
    return AffineCoset::from_equations(2, {{Rational(vertical ? 1 : 0), Rational(vertical ? 0 : 1), Rational(c)}});
  };
  AffineCoset l1 = make_line(c1);
  AffineCoset l2 = make_line(c2);
  RatVec v = vertical ? RatVec{Rational(c2 - c1), Rational(0)} : RatVec{Rational(0), Rational(c2 - c1)};
  RatVec w = vertical ? RatVec{Rational(c1 - c2), Rational(0)} : RatVec{Rational(0), Rational(c1 - c2)};
  std::vector<Piece> pieces;
  pieces.push_back({*make_block(AffineCoset::whole(2), {l1, l2}), AffineMap::identity(2)});
  pieces.push_back({*make_block(l1, {}), AffineMap::translation(v)});
  pieces.push_back({*make_block(l2, {}), AffineMap::translation(w)});
  return PAMap(2, std::move(pieces), DefinableSet::whole(2));
}

}  // namespace

PAMap random_pamap(std::mt19937_64& rng, int n) {
  const int factors = uniform(rng, 1, 3);
  PAMap f = PAMap::affine(AffineMap::identity(n));
  for (int i = 0; i < factors; ++i) {
    PAMap g;
    switch (uniform(rng, 0, n == 2 ? 3 : 1)) {
      case 0: g = PAMap::affine(random_affine(rng, n)); break;
      case 1: {
        RatVec p = random_point(rng, n);
        RatVec q = p;
        q[0] += uniform(rng, 1, 3);
        g = point_swap(p, q);
        break;
      }
      case 2: g = line_slide(rng); break;
      default: g = line_swap(rng); break;
    }
    f = i == 0 ? g : compose(g, f);
  }
  return f;
}

}  // namespace mtk1::testing
