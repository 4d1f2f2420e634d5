#pragma once

#include <optional>
#include <vector>

#include "oreext/core_algebra.hpp"
#include "oreext/noetherian.hpp"
#include "oreext/ore_extension.hpp"

namespace oreext {

/// Additive group plus a multiplication table. No multiplicative axioms are assumed.
class FiniteRing {
 public:
  /// Checks table shape and ranges only.
  static FiniteRing make(FiniteAbelianGroup add, Table mul);

  const FiniteAbelianGroup& group() const noexcept { return add_; }
  std::size_t order() const noexcept { return add_.order(); }
  Elem mul(Elem r, Elem s) const noexcept { return mul_[r * add_.order() + s]; }
  const Table& mul_table() const noexcept { return mul_; }
  /// Left multiplication as an action of R on itself.
  ActionView left_action() const noexcept { return {&add_, add_.order(), mul_.data()}; }
  OperatorSet as_operators() const { return {add_.names(), add_.zero()}; }

 private:
  FiniteRing(FiniteAbelianGroup add, Table mul) : add_(std::move(add)), mul_(std::move(mul)) {}
  FiniteAbelianGroup add_;
  Table mul_;
};

/// (R, M, R x M -> M). No module axioms are assumed.
class LeftModule {
 public:
  static LeftModule make(FiniteRing ring, FiniteAbelianGroup group, Table act);
  static LeftModule regular(const FiniteRing& ring);

  const FiniteRing& ring() const noexcept { return ring_; }
  const FiniteAbelianGroup& group() const noexcept { return group_; }
  Elem act(Elem r, Elem m) const noexcept { return act_[r * group_.order() + m]; }
  const Table& act_table() const noexcept { return act_; }
  ActionView view() const noexcept { return {&group_, ring_.order(), act_.data()}; }

 private:
  LeftModule(FiniteRing ring, FiniteAbelianGroup group, Table act)
      : ring_(std::move(ring)), group_(std::move(group)), act_(std::move(act)) {}
  FiniteRing ring_;
  FiniteAbelianGroup group_;
  Table act_;
};

enum class Tri { yes, no, skipped };
std::string_view to_string(Tri t);

struct Property {
  Tri value = Tri::skipped;
  std::optional<Witness> witness;  // always set when value == no
  bool holds() const noexcept { return value == Tri::yes; }
};

struct PropertyReport {
  Property associative;
  Property left_distributive;
  Property right_distributive;
  Property left_unital;
  Property right_unital;  // rings only
  Property s_unital;
  Property weakly_s_unital;
  Property boolean;  // rings only: r r = r for every r
  ElementSet left_identities;
  ElementSet right_identities;
  /// One refutation per left-identity candidate: (candidate, m, candidate*m).
  std::vector<Witness> left_unital_refutations;
  /// Left distributive <=> valid group with operators, and the module and
  /// action readings of weak s-unitality agree.
  bool dictionary_consistent = true;
};

PropertyReport module_property_report(const LeftModule& m);
PropertyReport ring_property_report(const FiniteRing& r);

/// M as a group with operators over R, named by R's elements.
/// Throws NotLeftDistributive or BadZeroOperator.
GroupWithOperators module_as_operators(const LeftModule& m);

/// The Ore action of R[x] on M[x]. Requires R and M left distributive and the
/// zero of R to annihilate M. sigma_M and delta_M must be additive.
GroupPolynomial ore_ring_module_act(const LeftModule& m, const Table& sigma_R, const Table& delta_R,
                                    const Table& sigma_M, const Table& delta_M,
                                    const GroupPolynomial& alpha, const GroupPolynomial& beta);

struct DerivationReport {
  Property sigma_R_ring_endo;    // additive, sigma(rs) = sigma(r) sigma(s)
  Property delta_R_derivation;   // additive, delta(rs) = sigma(r) delta(s) + delta(r) s
  Property sigma_M_twisted;      // sigma_M(rm) = sigma_R(r) sigma_M(m)
  Property delta_M_derivation;   // delta_M(rm) = sigma_R(r) delta_M(m) + delta_R(r) m
  bool all() const noexcept {
    return sigma_R_ring_endo.holds() && delta_R_derivation.holds() && sigma_M_twisted.holds() &&
           delta_M_derivation.holds();
  }
};

DerivationReport derivation_endo_predicates(const LeftModule& m, const Table& sigma_R,
                                            const Table& delta_R, const Table& sigma_M,
                                            const Table& delta_M);

/// x -> v x - x v.
Table adjoint_derivation(const FiniteRing& r, Elem v);

/// R[x; sigma, delta].
struct OreRing {
  FiniteRing ring;
  Table sigma;
  Table delta;
};

/// Full (untruncated) Ore product p q in R[x; sigma, delta].
GroupPolynomial ore_ring_product(const OreRing& o, const GroupPolynomial& p, const GroupPolynomial& q);

struct RightIdealReport {
  bool closed = true;
  std::uint64_t products_checked = 0;
  std::optional<Witness> witness;  // (p, r, k, p (r x^k))
};

/// Whether the additive span of the generators is closed under right
/// multiplication by every r x^k. Since p (r x^k) is (p r) shifted by k, the
/// range k <= D + 1 decides every k. Generators need degree <= D.
RightIdealReport right_ideal_slice_check(const OreRing& o, const std::vector<GroupPolynomial>& generators,
                                         unsigned D);

struct IdealChainReport {
  Subgroup coefficients;                  // S
  std::vector<RightIdealReport> ideals;   // I_0 .. I_D, I_n = sum_{i<=n} S x^i
  std::vector<GroupPolynomial> separators;  // separators[n] in I_(n+1) \ I_n
  bool strict = false;
  bool all_right_ideals() const noexcept;
};

/// Throws BadParams when the coefficient set is {0}.
IdealChainReport ideal_chain(const OreRing& o, std::span<const Elem> coefficient_generators, unsigned D);

/// For right distributive R acting on M: (sum_w w(a)) c computed in R equals
/// sum_w (w(a) c) computed in M, for all words of length <= max_index.
/// Returns nullopt when R is not right distributive.
std::optional<IdentityReport> formal_collapse_check(const LeftModule& m, const Table& sigma_R,
                                                    const Table& delta_R, unsigned max_index);

}  // namespace oreext
