#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace mtk1 {

/// A finite abelian group in invariant-factor form d1 | d2 | ... | dr with
/// every di >= 2. The empty list is the trivial group.
class AbInvariants {
 public:
  AbInvariants() = default;

  /// Canonicalizes an arbitrary list of cyclic orders (entries 1 ignored,
  /// 0 rejected) into the divisibility chain of their direct sum.
  static AbInvariants from_cyclic_orders(const std::vector<std::uint64_t>& orders);
  static AbInvariants of(std::initializer_list<std::uint64_t> orders) {
    return from_cyclic_orders(orders);
  }

  const std::vector<std::uint64_t>& factors() const { return factors_; }
  std::uint64_t order() const;
  bool is_trivial() const { return factors_.empty(); }

  /// Primary decomposition: every factor split into prime powers, ascending.
  std::vector<std::uint64_t> elementary_divisors() const;

  AbInvariants direct_sum(const AbInvariants& other) const;

  std::string to_string() const;

  friend bool operator==(const AbInvariants&, const AbInvariants&) = default;

 private:
  std::vector<std::uint64_t> factors_;
};

/// Prime-power factorization p^e as (p, e) pairs, ascending in p.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

}  // namespace mtk1
