#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtk1/group.hpp"

namespace mtk1::suites {

struct SuiteReport {
  std::string suite;
  int cases = 0;
  int passed = 0;
  std::vector<std::string> failures;

  bool ok() const { return cases > 0 && passed == cases; }
  void record(bool pass, const std::string& label);
};

/// 30 seeded semidirect products: brute force against G^ab + (H^ab)_G.
SuiteReport semiab(std::uint64_t seed, int count = 30, std::size_t cap = kDefaultElementCap);
/// K wr Sym(k) for K in {Z2, Z3, Z4, S3}, k in {2, 3}.
SuiteReport wreath(std::size_t cap = kDefaultElementCap);
/// [Sym(k), Sym(k)] = Alt(k) and Sym(k)^ab = [2] for k = 2..6.
SuiteReport perm(std::size_t cap = kDefaultElementCap);
/// Elementary closure equals the determinant kernel over small fields.
SuiteReport ed(std::size_t cap = kDefaultElementCap);
/// GL_n(F_q)^ab against the unit group, the (2,2) exception, and affine
/// groups abelianizing like GL_n.
SuiteReport gl(std::size_t cap = kDefaultElementCap);
/// Lift maps Z_n -> Z_m: reference table, homomorphism, equivariance and
/// parity law for n <= 4, m <= 12.
SuiteReport lift();
/// Brute-force truncations against K_1 for F_4 and F_5 up to n = 2, and the
/// F_2 obstruction being reported.
SuiteReport truncation(std::size_t cap = kDefaultElementCap);

const std::vector<std::string>& names();
/// Dispatch by name; throws std::invalid_argument for unknown suites.
SuiteReport run(const std::string& name, std::uint64_t seed, std::size_t cap = kDefaultElementCap);

}  // namespace mtk1::suites
