#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtk1/definable.hpp"

namespace mtk1 {

/// x -> A x + b with A invertible.
struct AffineMap {
  RatMatrix matrix;
  RatVec offset;

  static AffineMap identity(int n);
  static AffineMap translation(const RatVec& v);
  /// Throws std::invalid_argument when A is singular or shapes disagree.
  static AffineMap make(RatMatrix a, RatVec b);

  int ambient() const { return matrix.rows(); }
  RatVec apply(const RatVec& x) const;
  /// this o other
  AffineMap after(const AffineMap& other) const;
  AffineMap inverse() const;
  /// {x : (A - I) x = -b}
  AffineCoset fixed_set() const;
  bool is_identity() const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

struct Piece {
  Block block;
  AffineMap map;
};

/// Piecewise affine self-bijection of a definable subset of Q^n. The
/// constructor does not check bijectivity; see validate().
class PAMap {
 public:
  PAMap() = default;
  /// The domain defaults to the union of the piece blocks.
  PAMap(int n, std::vector<Piece> pieces, std::optional<DefinableSet> domain = std::nullopt);
  static PAMap identity(const DefinableSet& domain);
  static PAMap affine(const AffineMap& m);

  int ambient() const { return n_; }
  const DefinableSet& domain() const { return domain_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Throws std::out_of_range when x lies in no piece.
  RatVec apply(const RatVec& x) const;
  Block piece_image(std::size_t i) const;

 private:
  int n_ = 0;
  DefinableSet domain_;
  std::vector<Piece> pieces_;
};

struct AutCheck {
  bool pass = true;
  std::vector<std::string> failures;
};

/// Exact check that f is a bijection of its domain onto itself.
AutCheck validate(const PAMap& f);

DefinableSet support(const PAMap& f);
Dim dim_aut(const PAMap& f);
bool in_omega_m(const PAMap& f, int m);

/// f o g. Requires equal domains.
PAMap compose(const PAMap& f, const PAMap& g);
PAMap invert(const PAMap& f);
/// g h g^-1
PAMap conjugate(const PAMap& g, const PAMap& h);
PAMap conjugate(const AffineMap& g, const PAMap& h);

/// Same domain and the same value at every point of it.
bool same_action(const PAMap& f, const PAMap& g);

struct UpsilonDecomposition {
  AffineMap g;  // map of the unique top-dimensional piece
  PAMap h;      // g^-1 o f, supported in dimension < n
};

/// f = g o h for f a valid map with domain all of Q^n.
UpsilonDecomposition upsilon_decompose(const PAMap& f);

}  // namespace mtk1
