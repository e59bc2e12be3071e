#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtk1/rational.hpp"

namespace mtk1 {

/// Dimension of a definable set; std::nullopt stands for -infinity (the
/// empty set).
using Dim = std::optional<int>;

std::string dim_to_string(Dim d);
/// d <= m, with -infinity below every integer.
inline bool dim_at_most(Dim d, int m) { return !d || *d <= m; }

/// An affine coset {x in Q^n : A x = b}, or the empty set.
///
/// Stored canonically: [A | b] in reduced row-echelon form with unit pivots
/// and no zero rows, so two cosets are equal as point sets iff their
/// representations are equal.
class AffineCoset {
 public:
  AffineCoset() = default;
  static AffineCoset whole(int n);
  static AffineCoset empty(int n);
  /// Each row holds n coefficients followed by the right-hand side.
  static AffineCoset from_equations(int n, const std::vector<RatVec>& rows);
  static AffineCoset from_point(const RatVec& p, const std::vector<RatVec>& directions = {});

  int ambient() const { return n_; }
  bool is_empty() const { return empty_; }
  Dim dim() const;
  /// Canonical equations [A | b]; empty for the whole space.
  const std::vector<RatVec>& equations() const { return rows_; }

  /// A point of the coset (free coordinates set to zero); requires nonempty.
  RatVec base_point() const;
  /// Basis of the direction subgroup P - p, one vector per free coordinate.
  std::vector<RatVec> directions() const;
  /// P - p, the homogeneous solution set.
  AffineCoset direction_subgroup() const;

  bool contains_point(const RatVec& x) const;
  /// other is a subset of this
  bool contains(const AffineCoset& other) const;

  std::string to_string() const;

  friend bool operator==(const AffineCoset& a, const AffineCoset& b) {
    return a.n_ == b.n_ && a.empty_ == b.empty_ && a.rows_ == b.rows_;
  }
  /// Total order on canonical forms, used to sort holes and blocks.
  friend bool operator<(const AffineCoset& a, const AffineCoset& b);

 private:
  int n_ = 0;
  bool empty_ = false;
  std::vector<RatVec> rows_;
};

AffineCoset coset_intersect(const AffineCoset& p, const AffineCoset& q);
/// Image of P under the projection onto the first `keep` coordinates.
AffineCoset coset_project(const AffineCoset& p, int keep);
/// Image of P under x -> A x + b for invertible A.
AffineCoset coset_affine_image(const AffineCoset& p, const RatMatrix& a, const RatVec& b);

/// P \ (union of holes), each hole a nonempty proper sub-coset of P and the
/// holes pairwise incomparable. Over Q such a block is never empty.
struct Block {
  AffineCoset carrier;
  std::vector<AffineCoset> holes;

  Dim dim() const { return carrier.dim(); }
  bool contains_point(const RatVec& x) const;
  friend bool operator==(const Block&, const Block&) = default;
};

/// Intersects the holes with the carrier, drops empty and redundant holes and
/// sorts them. Returns std::nullopt when the block denotes the empty set.
std::optional<Block> make_block(AffineCoset carrier, std::vector<AffineCoset> holes);

/// A point of the block: the first point of a moment curve through the
/// carrier that avoids every hole.
RatVec witness_point(const Block& b);

/// Integer polynomial in one variable X; the class of a definable set.
class K0Class {
 public:
  K0Class() = default;
  explicit K0Class(std::vector<std::int64_t> coeffs);
  static K0Class monomial(int degree, std::int64_t coeff = 1);

  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Dim degree() const;
  std::int64_t evaluate(std::int64_t x) const;

  K0Class operator+(const K0Class& o) const;
  K0Class operator-(const K0Class& o) const;
  K0Class operator*(const K0Class& o) const;
  friend bool operator==(const K0Class&, const K0Class&) = default;

  /// Human form, e.g. "X^2 - X", "2X - 1", "0".
  std::string to_string() const;

 private:
  void trim();
  std::vector<std::int64_t> coeffs_;  // constant term first, no trailing zeros
};

/// Finite disjoint union of blocks in Q^n.
class DefinableSet {
 public:
  DefinableSet() = default;
  explicit DefinableSet(int n) : n_(n) {}
  static DefinableSet whole(int n);
  static DefinableSet from_coset(const AffineCoset& c);
  static DefinableSet from_block(const Block& b);
  /// Caller guarantees the blocks are pairwise disjoint.
  static DefinableSet from_disjoint_blocks(int n, std::vector<Block> blocks);

  int ambient() const { return n_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  bool is_empty() const { return blocks_.empty(); }
  bool contains_point(const RatVec& x) const;

  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<Block> blocks_;
};

DefinableSet set_union(const DefinableSet& a, const DefinableSet& b);
DefinableSet set_intersection(const DefinableSet& a, const DefinableSet& b);
DefinableSet set_difference(const DefinableSet& a, const DefinableSet& b);
DefinableSet set_complement(const DefinableSet& a);
/// True iff every pair of blocks has empty intersection.
bool blocks_pairwise_disjoint(const DefinableSet& d);
/// Exact set equality via emptiness of both differences.
bool same_points(const DefinableSet& a, const DefinableSet& b);
bool is_subset(const DefinableSet& a, const DefinableSet& b);
DefinableSet set_affine_image(const DefinableSet& d, const RatMatrix& a, const RatVec& b);
Block block_affine_image(const Block& blk, const RatMatrix& a, const RatVec& b);
/// Cartesian product in Q^(n+m).
DefinableSet set_product(const DefinableSet& a, const DefinableSet& b);

/// Boolean combination of affine cosets in a fixed ambient Q^n.
struct BoolExpr {
  enum class Op { Leaf, And, Or, Not };
  Op op = Op::Leaf;
  AffineCoset leaf;
  std::vector<BoolExpr> children;

  static BoolExpr atom(AffineCoset c);
  static BoolExpr conj(BoolExpr a, BoolExpr b);
  static BoolExpr disj(BoolExpr a, BoolExpr b);
  static BoolExpr negate(BoolExpr a);

  bool evaluate(const RatVec& x) const;
  /// Distinct leaves in first-occurrence order.
  std::vector<AffineCoset> leaves() const;
};

DefinableSet boolean_normalize(const BoolExpr& expr, int n);

K0Class k0_class(const DefinableSet& d);
K0Class k0_class(const Block& b);
Dim dim(const DefinableSet& d);
bool definably_isomorphic(const DefinableSet& a, const DefinableSet& b);

struct PointCount {
  std::uint64_t count = 0;
  bool good_prime = false;
};

/// Exhaustive count of the same boolean combination over F_p^n, with each
/// leaf's canonical equations scaled to primitive integer rows and reduced
/// mod p. good_prime holds iff every intersection of leaves has the same
/// dimension (or emptiness) over F_p as over Q. Requires p^n <= 10^6.
PointCount count_points_mod_p(const BoolExpr& expr, int n, int p);

struct ShiftWitness {
  DefinableSet set;   // affine image of the second argument
  RatMatrix matrix;   // the affine bijection x -> matrix x + offset
  RatVec offset;
  std::string note;
};

/// A set definably isomorphic to d2 meeting d1 in dimension > m. Built by an
/// affine bijection carrying a witness point of a top block of d2 onto one of
/// a top block of d1 and aligning the carriers' direction spaces.
ShiftWitness shift_witness(const DefinableSet& d1, const DefinableSet& d2, int m);

}  // namespace mtk1
