#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtk1/abelian.hpp"

namespace mtk1 {

/// The rings the closed-form K_1 recipes know about. All are Euclidean
/// domains.
struct RingDescriptor {
  enum class Kind { FiniteField, InfiniteField, PolyChar0, Integers, AbstractED };
  Kind kind = Kind::Integers;
  int q = 0;        // FiniteField
  std::string tag;  // field name for InfiniteField/PolyChar0, ring name for AbstractED
  bool unit_sum = false;  // AbstractED only

  /// Throws std::invalid_argument unless q is a prime power.
  static RingDescriptor finite_field(int q);
  static RingDescriptor infinite_field(std::string tag = "F");
  /// F[X] over a characteristic-zero field F.
  static RingDescriptor poly_char0(std::string base = "F");
  static RingDescriptor integers();
  static RingDescriptor abstract_ed(std::string name, bool has_unit_sum);

  /// 1 = u + v for some units u, v.
  bool has_unit_sum() const;
  std::string name() const;

  friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;
};

struct TheoryFlags {
  bool t_closed = false;
  std::optional<bool> cofinal_even;  // present iff !t_closed

  /// The branch with one Z_2 per level.
  bool even_branch() const { return t_closed || cofinal_even.value_or(false); }
  friend bool operator==(const TheoryFlags&, const TheoryFlags&) = default;
};

/// Flags for an infinite free module over the ring. Throws
/// std::invalid_argument for AbstractED, whose flags must be supplied.
TheoryFlags derive_flags(const RingDescriptor& ring);
/// Throws std::invalid_argument when cofinal_even is set iff t_closed.
void check_flags(const TheoryFlags& flags);

/// Level value meaning "the running index n" inside a countable block.
inline constexpr int kSymbolicLevel = -1;

struct Atom {
  enum class Kind { Zmod, UnitsOf, GLab, Undetermined };
  Kind kind = Kind::Zmod;
  std::uint64_t k = 0;  // Zmod order; Undetermined carries 2
  RingDescriptor ring;  // UnitsOf, GLab
  int level = 0;        // GLab
  std::string label;    // Undetermined

  static Atom zmod(std::uint64_t k);
  static Atom units(RingDescriptor r);
  static Atom glab(int level, RingDescriptor r);
  static Atom undetermined(std::string label);

  std::string to_string() const;
  friend bool operator==(const Atom&, const Atom&) = default;
  friend bool operator<(const Atom& a, const Atom& b);
};

/// Positive integer or the countable cardinal; addition saturates.
struct Mult {
  bool countable = false;
  std::uint64_t count = 1;

  static Mult finite(std::uint64_t n) { return {false, n}; }
  static Mult omega() { return {true, 0}; }
  Mult operator+(const Mult& o) const;
  Mult times(std::uint64_t n) const;
  bool operator<=(const Mult& o) const;
  std::string to_string() const;
  friend bool operator==(const Mult&, const Mult&) = default;
};

struct Summand {
  Atom atom;
  Mult mult;
  friend bool operator==(const Summand&, const Summand&) = default;
};

/// Rewrites one atom by the known isomorphisms (finite unit groups, unit
/// groups of Z and F[X], GL abelianizations over Euclidean domains, trivial
/// groups dropped). Zmod atoms are kept whole.
std::vector<Summand> rewrite(const Summand& s);

/// Canonical multiset of atoms: every atom rewritten, cyclic groups split into
/// prime powers, equal atoms merged, sorted.
class FormalAbGroup {
 public:
  FormalAbGroup() = default;
  explicit FormalAbGroup(const std::vector<Summand>& summands);
  static FormalAbGroup from_invariants(const AbInvariants& g);

  const std::vector<Summand>& summands() const { return summands_; }
  bool is_trivial() const { return summands_.empty(); }
  FormalAbGroup direct_sum(const FormalAbGroup& o) const;
  /// Every atom of this occurs in o at least as often.
  bool contained_in(const FormalAbGroup& o) const;
  std::string to_string() const;

  friend bool operator==(const FormalAbGroup&, const FormalAbGroup&) = default;

 private:
  std::vector<Summand> summands_;
};

bool formal_equal(const FormalAbGroup& a, const FormalAbGroup& b);

/// head + (+)_{n >= block_start} block, in display order. Without a block the
/// expression is finite.
struct FormalExpr {
  std::vector<Summand> head;
  std::vector<Summand> block;
  int block_start = 1;

  bool has_block() const { return !block.empty(); }
  /// Atoms rewritten in place, display order kept.
  FormalExpr rewritten() const;
  FormalAbGroup canonical() const;
  std::string pretty() const;
};

/// K_1 of an infinite free module of the given rank over the ring (rank 0
/// means countably infinite; over a field the answer does not depend on it).
/// Throws std::domain_error for F_2, for rings with no unit sum other than Z,
/// and for free Z-modules of rank other than 1.
FormalExpr k1_module(const RingDescriptor& ring, const TheoryFlags& flags, int rank = 1);

/// (Omega^n_n)^ab before rewriting, with explicit GLab(i) atoms.
FormalExpr omega_nn_terms(const RingDescriptor& ring, const TheoryFlags& flags, int n);
/// omega_nn_terms rewritten; same rejections as k1_module.
FormalExpr omega_nn_ab(const RingDescriptor& ring, const TheoryFlags& flags, int n);

/// First n levels of a K_1 expression: the head, n - 1 blocks and the top
/// block without one Z_2. Requires a block.
FormalAbGroup truncation(const FormalExpr& k1, int n);

/// Units of R, the algebraic K_1 of a Euclidean domain.
FormalAbGroup k1_algebraic(const RingDescriptor& ring);

struct EmbeddingTarget {
  int level = 0;
  Atom atom;  // GLab(level, R), or UnitsOf(R) when they agree
  int value = 0;  // det A
};

/// Where an invertible n x n matrix over F_q (row-major field codes) lands.
/// Rejects singular matrices and matrices in the image of GL_{n-1}.
EmbeddingTarget embedding_target(const RingDescriptor& ring, int n, std::span<const std::int32_t> matrix);

struct TruncationReport {
  int q = 0;
  int n = 0;
  bool pass = false;
  FormalAbGroup computed;  // brute-force GL atoms substituted
  FormalAbGroup expected;  // truncation of k1_module
  std::vector<std::string> failures;
};

/// Brute-force check of the first n truncations over F_q against k1_module.
TruncationReport truncation_consistency(int q, int n, std::size_t cap = 20000);

}  // namespace mtk1
