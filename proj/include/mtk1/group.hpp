#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtk1/abelian.hpp"

namespace mtk1 {

/// Exact integer encoding of a group element. Its meaning is fixed by the
/// GroupRep that produced it (permutation images, matrix entries, pair of
/// component indices, ...).
using Code = std::vector<std::int32_t>;

struct CodeHash {
  std::size_t operator()(const Code& c) const noexcept;
};

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public GroupError {
 public:
  explicit CapExceeded(std::size_t cap);
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

inline constexpr std::size_t kDefaultElementCap = 20000;

/// Composable representation of a family of group elements.
class GroupRep {
 public:
  virtual ~GroupRep() = default;
  virtual Code identity() const = 0;
  virtual Code multiply(const Code& a, const Code& b) const = 0;
  virtual Code inverse(const Code& a) const = 0;
  /// False for codes that do not denote an element (non-bijective images,
  /// singular matrices, out-of-range components).
  virtual bool is_valid(const Code& a) const = 0;
  virtual std::string format(const Code& a) const = 0;
  virtual std::string name() const = 0;
};

/// Permutations of {0..degree-1}; (a*b)(x) = a(b(x)).
class PermutationRep final : public GroupRep {
 public:
  explicit PermutationRep(int degree);
  int degree() const { return degree_; }
  Code identity() const override;
  Code multiply(const Code& a, const Code& b) const override;
  Code inverse(const Code& a) const override;
  bool is_valid(const Code& a) const override;
  std::string format(const Code& a) const override;
  std::string name() const override;

 private:
  int degree_;
};

/// Additive cyclic group Z_n; code is the single residue.
class CyclicRep final : public GroupRep {
 public:
  explicit CyclicRep(int n);
  int modulus() const { return n_; }
  Code identity() const override;
  Code multiply(const Code& a, const Code& b) const override;
  Code inverse(const Code& a) const override;
  bool is_valid(const Code& a) const override;
  std::string format(const Code& a) const override;
  std::string name() const override;

 private:
  int n_;
};

class FiniteGroup;

/// A finite group with a deterministic total order on its elements: BFS from
/// the identity, right-multiplying by the generators in the given order.
/// Index 0 is always the identity.
class FiniteGroup {
 public:
  static constexpr std::size_t kIdentity = 0;

  std::size_t order() const { return elements_.size(); }
  const Code& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Code>& elements() const { return elements_; }
  std::optional<std::size_t> find(const Code& c) const;
  bool contains(const Code& c) const { return index_.count(c) != 0; }
  /// Index of a code known to lie in the group; throws GroupError otherwise.
  std::size_t index_of(const Code& c) const;

  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t commutator(std::size_t a, std::size_t b) const;
  std::size_t conjugate(std::size_t g, std::size_t x) const;  // g x g^-1
  std::size_t power(std::size_t a, std::uint64_t e) const;
  std::size_t element_order(std::size_t a) const;

  /// Generator indices (duplicates and the identity removed).
  const std::vector<std::size_t>& generators() const { return generators_; }
  const std::shared_ptr<const GroupRep>& rep() const { return rep_; }
  std::string format(std::size_t i) const { return rep_->format(elements_[i]); }

  bool is_abelian() const;

 private:
  friend FiniteGroup enumerate_group(std::shared_ptr<const GroupRep>,
                                     const std::vector<Code>&, std::size_t);

  std::shared_ptr<const GroupRep> rep_;
  std::vector<Code> elements_;
  std::unordered_map<Code, std::size_t, CodeHash> index_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> generators_;
};

/// Enumerates the group generated by `generators` inside `rep`.
/// Throws GroupError for an invalid (non-invertible) generator and
/// CapExceeded once the closure grows past `cap`.
FiniteGroup enumerate_group(std::shared_ptr<const GroupRep> rep,
                            const std::vector<Code>& generators,
                            std::size_t cap = kDefaultElementCap);

/// Subgroup of `g` generated by the given elements of `g`.
FiniteGroup subgroup(const FiniteGroup& g, std::span<const std::size_t> generators,
                     std::size_t cap = kDefaultElementCap);

/// [G,G], computed as the normal closure of the commutators of generators.
FiniteGroup commutator_subgroup(const FiniteGroup& g, std::size_t cap = kDefaultElementCap);

/// Invariant factors of G/N for a normal subgroup N with G/N abelian.
/// Splits off the cyclic span of a maximal-order element of the quotient
/// until the quotient is trivial.
AbInvariants quotient_invariants(const FiniteGroup& g, const FiniteGroup& normal_subgroup);

AbInvariants abelianization(const FiniteGroup& g);

/// true iff both are the same finite abelian group (equal invariant factors).
bool abelian_iso(const AbInvariants& a, const AbInvariants& b);

/// True iff x^{-1} N x = N for every generator x of g (exhaustive over N).
bool is_normal_subgroup(const FiniteGroup& g, const FiniteGroup& n);

/// An action phi: acting -> Aut(target), stored as a |acting| x |target|
/// table of target indices: image(k, h) = phi(k)(h).
class GroupAction {
 public:
  /// Tabulates `fn` over all pairs and validates the action.
  static GroupAction from_function(
      FiniteGroup acting, FiniteGroup target,
      const std::function<std::size_t(std::size_t, std::size_t)>& fn);

  /// Extends images of the acting group's generators (each an index
  /// permutation of the target) to the whole acting group.
  static GroupAction from_generator_images(
      FiniteGroup acting, FiniteGroup target,
      const std::vector<std::vector<std::size_t>>& generator_images);

  static GroupAction trivial(FiniteGroup acting, FiniteGroup target);

  const FiniteGroup& acting() const { return *acting_; }
  const FiniteGroup& target() const { return *target_; }
  std::size_t image(std::size_t k, std::size_t h) const {
    return table_[k * target_->order() + h];
  }

  /// Empty when the table is an action by automorphisms; otherwise the first
  /// violated clause.
  std::optional<std::string> check() const;

 private:
  GroupAction(FiniteGroup acting, FiniteGroup target, std::vector<std::uint32_t> table);

  std::shared_ptr<const FiniteGroup> acting_;
  std::shared_ptr<const FiniteGroup> target_;
  std::vector<std::uint32_t> table_;
};

/// (H^ab)_G: H modulo [H,H] and every phi(g)(h) h^{-1}, g ranging over the
/// generators of the acting group.
AbInvariants coinvariants(const GroupAction& action);

}  // namespace mtk1
