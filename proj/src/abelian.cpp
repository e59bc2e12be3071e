#include "mtk1/abelian.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mtk1 {

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

AbInvariants AbInvariants::from_cyclic_orders(const std::vector<std::uint64_t>& orders) {
  // prime -> exponents of its primary components
  std::map<std::uint64_t, std::vector<int>> primary;
  for (std::uint64_t d : orders) {
    if (d == 0) throw std::invalid_argument("cyclic order 0 is not a finite group");
    for (auto [p, e] : factorize(d)) primary[p].push_back(e);
  }
  std::size_t length = 0;
  for (auto& [p, exps] : primary) {
    std::sort(exps.begin(), exps.end(), std::greater<>());
    length = std::max(length, exps.size());
  }
  // The largest invariant factor takes the largest power of every prime,
  // the next one the second largest, and so on.
  std::vector<std::uint64_t> factors(length, 1);
  for (const auto& [p, exps] : primary) {
    for (std::size_t i = 0; i < exps.size(); ++i) {
      for (int k = 0; k < exps[i]; ++k) factors[i] *= p;
    }
  }
  std::reverse(factors.begin(), factors.end());
  AbInvariants out;
  out.factors_ = std::move(factors);
  return out;
}

std::uint64_t AbInvariants::order() const {
  std::uint64_t n = 1;
  for (auto d : factors_) n *= d;
  return n;
}

std::vector<std::uint64_t> AbInvariants::elementary_divisors() const {
  std::vector<std::uint64_t> out;
  for (auto d : factors_) {
    for (auto [p, e] : factorize(d)) {
      std::uint64_t q = 1;
      for (int k = 0; k < e; ++k) q *= p;
      out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

AbInvariants AbInvariants::direct_sum(const AbInvariants& other) const {
  std::vector<std::uint64_t> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return from_cyclic_orders(all);
}

std::string AbInvariants::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(factors_[i]);
  }
  return s + "]";
}

}  // namespace mtk1
