#include "mtk1/automorphism.hpp"

#include <stdexcept>

namespace mtk1 {

AffineMap AffineMap::identity(int n) { return {RatMatrix::identity(n), RatVec(n)}; }

AffineMap AffineMap::translation(const RatVec& v) {
  return {RatMatrix::identity(static_cast<int>(v.size())), v};
}

AffineMap AffineMap::make(RatMatrix a, RatVec b) {
  if (a.rows() != a.cols() || static_cast<int>(b.size()) != a.rows())
    throw std::invalid_argument("affine map needs a square matrix and a matching offset");
  if (a.determinant() == 0) throw std::invalid_argument("affine map matrix is singular");
  return {std::move(a), std::move(b)};
}

RatVec AffineMap::apply(const RatVec& x) const { return matrix * x + offset; }

AffineMap AffineMap::after(const AffineMap& other) const {
  return {matrix * other.matrix, matrix * other.offset + offset};
}

AffineMap AffineMap::inverse() const {
  auto inv = matrix.inverse();
  if (!inv) throw std::invalid_argument("affine map matrix is singular");
  RatVec b = *inv * offset;
  for (auto& v : b) v = -v;
  return {*inv, b};
}

AffineCoset AffineMap::fixed_set() const {
  const int n = ambient();
  std::vector<RatVec> rows;
  for (int i = 0; i < n; ++i) {
    RatVec row(n + 1);
    for (int j = 0; j < n; ++j) row[j] = matrix(i, j) - (i == j ? 1 : 0);
    row[n] = -offset[i];
    rows.push_back(std::move(row));
  }
  return AffineCoset::from_equations(n, rows);
}

bool AffineMap::is_identity() const { return *this == identity(ambient()); }

// ---------------------------------------------------------------------------

PAMap::PAMap(int n, std::vector<Piece> pieces, std::optional<DefinableSet> domain)
    : n_(n), pieces_(std::move(pieces)) {
  for (const auto& p : pieces_) {
    if (p.block.carrier.ambient() != n || p.map.ambient() != n)
      throw std::invalid_argument("piece does not live in Q^" + std::to_string(n));
  }
  if (domain) {
    if (domain->ambient() != n) throw std::invalid_argument("domain ambient mismatch");
    domain_ = std::move(*domain);
  } else {
    domain_ = DefinableSet(n);
    for (const auto& p : pieces_) domain_ = set_union(domain_, DefinableSet::from_block(p.block));
  }
}

PAMap PAMap::identity(const DefinableSet& domain) {
  std::vector<Piece> pieces;
  for (const auto& b : domain.blocks()) pieces.push_back({b, AffineMap::identity(domain.ambient())});
  return PAMap(domain.ambient(), std::move(pieces), domain);
}

PAMap PAMap::affine(const AffineMap& m) {
  const int n = m.ambient();
  auto whole = make_block(AffineCoset::whole(n), {});
  return PAMap(n, {{*whole, m}}, DefinableSet::whole(n));
}

RatVec PAMap::apply(const RatVec& x) const {
  for (const auto& p : pieces_)
    if (p.block.contains_point(x)) return p.map.apply(x);
  throw std::out_of_range("point outside every piece");
}

Block PAMap::piece_image(std::size_t i) const {
  const auto& p = pieces_.at(i);
  return block_affine_image(p.block, p.map.matrix, p.map.offset);
}

// ---------------------------------------------------------------------------

AutCheck validate(const PAMap& f) {
  AutCheck out;
  auto fail = [&](std::string msg) {
    out.pass = false;
    out.failures.push_back(std::move(msg));
  };
  const int n = f.ambient();
  std::vector<Block> images;
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    if (f.pieces()[i].map.matrix.determinant() == 0) {
      fail("piece " + std::to_string(i) + ": matrix is singular");
      return out;
    }
    images.push_back(f.piece_image(i));
  }
  std::vector<Block> blocks;
  for (const auto& p : f.pieces()) blocks.push_back(p.block);

  auto as_set = [n](const std::vector<Block>& bs) {
    DefinableSet acc(n);
    for (const auto& b : bs) acc = set_union(acc, DefinableSet::from_block(b));
    return acc;
  };
  auto check_disjoint = [&](const std::vector<Block>& bs, const char* what) {
    for (std::size_t i = 0; i < bs.size(); ++i)
      for (std::size_t j = i + 1; j < bs.size(); ++j)
        if (!set_intersection(DefinableSet::from_block(bs[i]), DefinableSet::from_block(bs[j])).is_empty())
          fail(std::string(what) + " " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
  };
  check_disjoint(blocks, "pieces");
  if (!same_points(as_set(blocks), f.domain())) fail("pieces do not cover exactly the domain");
  check_disjoint(images, "images of pieces");
  if (!same_points(as_set(images), f.domain())) fail("images do not cover exactly the domain");
  return out;
}

DefinableSet support(const PAMap& f) {
  std::vector<Block> moved;
  for (const auto& p : f.pieces()) {
    std::vector<AffineCoset> holes = p.block.holes;
    holes.push_back(p.map.fixed_set());
    if (auto b = make_block(p.block.carrier, holes)) moved.push_back(std::move(*b));
  }
  return DefinableSet::from_disjoint_blocks(f.ambient(), std::move(moved));
}

Dim dim_aut(const PAMap& f) { return dim(support(f)); }

bool in_omega_m(const PAMap& f, int m) { return dim_at_most(dim_aut(f), m); }

PAMap compose(const PAMap& f, const PAMap& g) {
  if (f.ambient() != g.ambient() || !same_points(f.domain(), g.domain()))
    throw std::invalid_argument("compose: maps have different domains");
  std::vector<Piece> pieces;
  for (const auto& pg : g.pieces()) {
    AffineMap back = pg.map.inverse();
    for (const auto& pf : f.pieces()) {
      // points of pg.block that pg.map sends into pf.block
      Block pre = block_affine_image(pf.block, back.matrix, back.offset);
      std::vector<AffineCoset> holes = pg.block.holes;
      holes.insert(holes.end(), pre.holes.begin(), pre.holes.end());
      if (auto region = make_block(coset_intersect(pg.block.carrier, pre.carrier), holes))
        pieces.push_back({std::move(*region), pf.map.after(pg.map)});
    }
  }
  return PAMap(g.ambient(), std::move(pieces), g.domain());
}

PAMap invert(const PAMap& f) {
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < f.pieces().size(); ++i)
    pieces.push_back({f.piece_image(i), f.pieces()[i].map.inverse()});
  return PAMap(f.ambient(), std::move(pieces), f.domain());
}

PAMap conjugate(const PAMap& g, const PAMap& h) { return compose(compose(g, h), invert(g)); }

PAMap conjugate(const AffineMap& g, const PAMap& h) {
  // g h g^-1 lives on g(domain h)
  std::vector<Piece> pieces;
  AffineMap gi = g.inverse();
  for (const auto& p : h.pieces())
    pieces.push_back({block_affine_image(p.block, g.matrix, g.offset), g.after(p.map).after(gi)});
  return PAMap(h.ambient(), std::move(pieces), set_affine_image(h.domain(), g.matrix, g.offset));
}

namespace {

bool agree_on(const AffineMap& a, const AffineMap& b, const AffineCoset& c) {
  if (c.is_empty()) return true;
  RatVec p = c.base_point();
  if (a.apply(p) != b.apply(p)) return false;
  for (const auto& d : c.directions())
    if (a.matrix * d != b.matrix * d) return false;
  return true;
}

}  // namespace

bool same_action(const PAMap& f, const PAMap& g) {
  if (f.ambient() != g.ambient() || !same_points(f.domain(), g.domain())) return false;
  // A nonempty block is Zariski dense in its carrier, so agreement on the
  // carrier of the overlap is the right test.
  for (const auto& pf : f.pieces())
    for (const auto& pg : g.pieces()) {
      std::vector<AffineCoset> holes = pf.block.holes;
      holes.insert(holes.end(), pg.block.holes.begin(), pg.block.holes.end());
      auto meet = make_block(coset_intersect(pf.block.carrier, pg.block.carrier), holes);
      if (meet && !agree_on(pf.map, pg.map, meet->carrier)) return false;
    }
  return true;
}

UpsilonDecomposition upsilon_decompose(const PAMap& f) {
  const int n = f.ambient();
  if (!same_points(f.domain(), DefinableSet::whole(n)))
    throw std::invalid_argument("upsilon_decompose needs a map defined on all of Q^n");
  const Piece* top = nullptr;
  for (const auto& p : f.pieces()) {
    if (p.block.dim() != n) continue;
    if (top) throw std::invalid_argument("two top-dimensional pieces: not a bijection of Q^n");
    top = &p;
  }
  if (!top) throw std::invalid_argument("no top-dimensional piece: not a bijection of Q^n");
  UpsilonDecomposition out{top->map, compose(PAMap::affine(top->map.inverse()), f)};
  if (!dim_at_most(dim_aut(out.h), n - 1))
    throw std::logic_error("internal: remainder is supported in full dimension");
  return out;
}

}  // namespace mtk1
