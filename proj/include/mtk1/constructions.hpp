#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mtk1/group.hpp"

namespace mtk1 {

/// Pairs (h, k) of a semidirect product K x| H; a code is {index of h in H,
/// index of k in K} and (h,k)(h',k') = (h * phi(k)(h'), k k').
class SemidirectRep final : public GroupRep {
 public:
  explicit SemidirectRep(GroupAction action);
  const GroupAction& action() const { return action_; }
  Code identity() const override;
  Code multiply(const Code& a, const Code& b) const override;
  Code inverse(const Code& a) const override;
  bool is_valid(const Code& a) const override;
  std::string format(const Code& a) const override;
  std::string name() const override;

 private:
  GroupAction action_;
};

/// Tuples of elements of enumerated factor groups, multiplied componentwise;
/// a code holds one factor index per coordinate.
class ProductRep final : public GroupRep {
 public:
  explicit ProductRep(std::vector<FiniteGroup> factors);
  const std::vector<FiniteGroup>& factors() const { return factors_; }
  Code identity() const override;
  Code multiply(const Code& a, const Code& b) const override;
  Code inverse(const Code& a) const override;
  bool is_valid(const Code& a) const override;
  std::string format(const Code& a) const override;
  std::string name() const override;

 private:
  std::vector<FiniteGroup> factors_;
};

FiniteGroup cyclic_group(int n);
/// Dihedral group of order 2n acting on the vertices of an n-gon (n >= 3).
FiniteGroup dihedral_group(int n);
/// Sym(k) generated by the transpositions (i i+1); 1 <= k <= 8.
FiniteGroup symmetric_group(int k, std::size_t cap = kDefaultElementCap);
FiniteGroup alternating_group(int k, std::size_t cap = kDefaultElementCap);
FiniteGroup direct_product(const std::vector<FiniteGroup>& factors,
                           std::size_t cap = kDefaultElementCap);
/// K^k, the product of k copies of K.
FiniteGroup power_group(const FiniteGroup& k, int copies, std::size_t cap = kDefaultElementCap);

/// Sign of a permutation code: 0 even, 1 odd.
int permutation_parity(std::span<const std::int32_t> perm);

/// K x| H for the given action. Throws CapExceeded before enumerating when
/// |K| |H| exceeds the cap.
FiniteGroup semidirect(const GroupAction& action, std::size_t cap = kDefaultElementCap);

/// Restricted wreath product L x| (K^k), l acting by (k_x) -> (k_{l^-1 x}).
/// `l` must be a permutation group of degree k.
FiniteGroup wreath(const FiniteGroup& k, int degree, const FiniteGroup& l,
                   std::size_t cap = kDefaultElementCap);

/// Outcome of comparing a brute-force abelianization against a closed form.
struct VerificationReport {
  std::string label;
  AbInvariants computed;  // brute force
  AbInvariants expected;  // closed form
  bool pass = false;
};

/// Brute-force (G x| H)^ab against G^ab + (H^ab)_G.
VerificationReport verify_semiab(const GroupAction& action, std::size_t cap = kDefaultElementCap);

/// Brute-force (K wr Sym(k))^ab against K^ab + Z_2.
VerificationReport verify_wreath_ab(const FiniteGroup& k, int degree,
                                    std::size_t cap = kDefaultElementCap);

/// The embedding FS(Z_n) -> FS(Z_m), t -> t + s(theta t) - theta t (mod m),
/// theta the quotient Z_m -> Z_n. Requires n | m.
std::vector<int> lift_permutation(int n, int m, std::span<const int> sigma);

struct SignedTranslation {
  int sign = 1;                // unit of Z, +1 or -1
  std::int64_t translation = 0;
  friend bool operator==(const SignedTranslation&, const SignedTranslation&) = default;
};

/// Pullback of a Z_n-indexed tuple along theta: entry l' of the result is
/// entry (l' mod n) of the input. Requires n | m.
std::vector<SignedTranslation> lift_wreath_component(int n, int m,
                                                     std::span<const SignedTranslation> tuple);

/// True iff every transposition of Z_n lifts to an even permutation of Z_m.
/// Vacuously true for n = 1.
bool check_eventually_even(int n, int m);

/// A catalogue group named by `spec`: factors joined by 'x', each one of
/// Z<n>, D<n> (order 2n), S<n>, A<n>, GL<n>F<q>, SL<n>F<q>, SL2F3, ...
FiniteGroup catalogue_group(const std::string& spec, std::size_t cap = kDefaultElementCap);

struct RandomSemidirectCase {
  std::string description;
  GroupAction action;
};

/// Seeded semidirect products over the small-group catalogue (cyclic,
/// dihedral, symmetric, SL2(F_3)) with |G| |H| <= max_order.
std::vector<RandomSemidirectCase> random_semidirect_cases(std::uint64_t seed, int count,
                                                          std::size_t max_order = 2000);

}  // namespace mtk1
