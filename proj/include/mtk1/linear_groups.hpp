#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtk1/group.hpp"

namespace mtk1 {

struct UnitSumWitness {
  bool exists = false;
  int u = 0;
  int v = 0;
};

/// Finite commutative ring F_q or Z_m with exact lookup tables.
///
/// Elements are the integers 0..size-1. For F_{p^e} with e > 1 an element is
/// the base-p digit string of its polynomial coefficients (constant term
/// first) modulo a fixed irreducible polynomial:
///   F_4  x^2 + x + 1     F_8  x^3 + x + 1     F_9  x^2 + 1
///   F_16 x^4 + x + 1     F_25 x^2 + x + 2     F_27 x^3 + 2x + 1
class MatRing {
 public:
  enum class Kind { FiniteField, IntegersMod };

  static MatRing finite_field(int q);
  static MatRing integers_mod(int m);

  Kind kind() const { return kind_; }
  bool is_field() const { return kind_ == Kind::FiniteField; }
  int size() const { return size_; }
  int characteristic() const { return characteristic_; }
  std::string name() const;

  int add(int a, int b) const { return add_[a * size_ + b]; }
  int mul(int a, int b) const { return mul_[a * size_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  bool is_unit(int a) const { return inv_[a] >= 0; }
  /// Throws std::domain_error for non-units.
  int inv(int a) const;
  const std::vector<int>& units() const { return units_; }

  /// u + v = 1 with u, v units, smallest u first.
  UnitSumWitness unit_sum_witness() const;

  friend bool operator==(const MatRing& a, const MatRing& b) {
    return a.kind_ == b.kind_ && a.size_ == b.size_;
  }

 private:
  MatRing() = default;
  void finish();

  Kind kind_ = Kind::IntegersMod;
  int size_ = 1;
  int characteristic_ = 1;
  std::vector<int> add_, mul_, neg_, inv_, units_;
};

/// Square matrices over a MatRing, row-major codes.
class MatrixRep final : public GroupRep {
 public:
  MatrixRep(int n, MatRing ring);
  int dimension() const { return n_; }
  const MatRing& ring() const { return ring_; }
  Code identity() const override;
  Code multiply(const Code& a, const Code& b) const override;
  Code inverse(const Code& a) const override;
  bool is_valid(const Code& a) const override;
  std::string format(const Code& a) const override;
  std::string name() const override;

  int determinant(const Code& a) const;

 private:
  int n_;
  MatRing ring_;
};

/// Additive group of ring^dim, codes are coordinate vectors.
class VectorRep final : public GroupRep {
 public:
  VectorRep(int dim, MatRing ring);
  int dimension() const { return dim_; }
  const MatRing& ring() const { return ring_; }
  Code identity() const override;
  Code multiply(const Code& a, const Code& b) const override;
  Code inverse(const Code& a) const override;
  bool is_valid(const Code& a) const override;
  std::string format(const Code& a) const override;
  std::string name() const override;

 private:
  int dim_;
  MatRing ring_;
};

/// |GL_n(F_q)| = prod_{i<n} (q^n - q^i).
std::uint64_t gl_order(int n, int q);

FiniteGroup gl_group(int n, const MatRing& ring, std::size_t cap = kDefaultElementCap);
/// SL_n as the kernel of det inside GL_n.
FiniteGroup sl_group(int n, const MatRing& ring, std::size_t cap = kDefaultElementCap);
/// Closure of the transvections I + c e_ij, i != j, c != 0.
FiniteGroup elementary_closure(int n, const MatRing& ring, std::size_t cap = kDefaultElementCap);

/// GL_n(F_q) x| (F_q^n)^copies, matrices acting on each copy by A v.
FiniteGroup affine_group(int n, const MatRing& field, int copies = 1,
                         std::size_t cap = kDefaultElementCap);

/// Determinant of an invertible matrix; throws std::domain_error if singular.
int det_class(const MatRing& ring, int n, std::span<const std::int32_t> matrix);

/// (n, q) pairs whose measured GL_n(F_q)^ab differs from the cyclic F_q^x.
/// GL_2(F_2) is Sym(3), with abelianization Z_2 against a trivial unit group.
bool is_known_gl_exception(int n, int q);

struct GlAbReport {
  int n = 0;
  int q = 0;
  AbInvariants abelianization;
  AbInvariants units;              // [q - 1]
  bool matches = false;            // abelianization == units
  bool commutator_is_sl = false;   // [GL_n, GL_n] == SL_n
  bool hypotheses_hold = false;    // n == 1, n >= 3, or n == 2 with a unit-sum witness
  bool known_exception = false;
  UnitSumWitness witness;
  /// matches, or a mismatch that is recorded in the exception table
  bool pass() const { return matches || known_exception; }
};

GlAbReport verify_gl_ab(int n, const MatRing& field, std::size_t cap = kDefaultElementCap);

}  // namespace mtk1
