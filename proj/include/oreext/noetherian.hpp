#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "oreext/core_algebra.hpp"
#include "oreext/ore_extension.hpp"

namespace oreext {

/// Coefficient vector of a polynomial of degree <= D, length D + 1.
using DensePoly = std::vector<Elem>;

/// Subgroup of B^(D+1) in echelon form. For each degree d it keeps the group
/// L_d of leading coefficients of members of exact degree d, together with one
/// member rep_d(l) per value l. Members are exactly the sums sum_d rep_d(l_d).
class PolySubgroup {
 public:
  PolySubgroup(FiniteAbelianGroup group, unsigned D);

  unsigned bound() const noexcept { return D_; }
  const FiniteAbelianGroup& group() const noexcept { return group_; }

  /// Adds v (and everything it generates additively). True if the subgroup grew.
  bool insert(const DensePoly& v);
  bool contains(const DensePoly& v) const;

  /// L_d as a sorted element set (always contains 0).
  ElementSet leading(unsigned d) const;
  bool leading_contains(unsigned d, Elem c) const;
  const DensePoly& representative(unsigned d, Elem c) const;

  /// Vectors that were new when inserted; they generate the subgroup.
  const std::vector<DensePoly>& generators() const noexcept { return gens_; }

  /// Order of the subgroup, saturating at UINT64_MAX.
  std::uint64_t size() const noexcept;
  bool subset_of(const PolySubgroup& other) const;
  friend bool operator==(const PolySubgroup& a, const PolySubgroup& b);

  /// Every member, in a fixed order. Throws BadParams above limit.
  std::vector<DensePoly> elements(std::size_t limit = 1u << 20) const;

 private:
  DensePoly reduce(DensePoly v, unsigned& stuck) const;
  void sub_into(DensePoly& v, const DensePoly& w) const;

  FiniteAbelianGroup group_;
  unsigned D_;
  // rep_[d][l] is the representative for leading value l, or empty.
  std::vector<std::vector<DensePoly>> rep_;
  std::vector<DensePoly> gens_;
};

/// Degree-<=D truncation of a stable subgroup of B[x].
struct SlicedStableSubgroup {
  unsigned D = 0;
  PolySubgroup slice;
  std::vector<GroupPolynomial> generators;
};

/// Truncated pi-tuples (pi_0^k, ..., pi_D^k) for k = 0, 1, ... until the
/// sequence repeats. Entry k is the coefficient map of the monomial x^k.
/// Throws BadParams after guard distinct tuples.
using MonomialTuple = std::vector<Table>;
std::vector<MonomialTuple> monomial_tuples(const FiniteAbelianGroup& group, const EndoPair& pair,
                                           unsigned D, std::size_t guard = 4096);

/// (a x^k) v, truncated to length v.size().
DensePoly act_monomial_truncated(const GroupWithOperators& g, const MonomialTuple& tuple, Elem a,
                                 const DensePoly& v);

/// Least subgroup of B^(D+1) holding the generators and closed under every
/// truncated monomial action a x^k. Throws DegreeTooHigh.
SlicedStableSubgroup slice_closure(const GroupWithOperators& g, const EndoPair& pair,
                                   const std::vector<GroupPolynomial>& generators, unsigned D);
SlicedStableSubgroup slice_closure(const GroupWithOperators& g,
                                   const std::vector<MonomialTuple>& tuples,
                                   const std::vector<GroupPolynomial>& generators, unsigned D);

/// First (operator, k, polynomial) whose image leaves the slice.
std::optional<Witness> slice_stability_violation(const GroupWithOperators& g,
                                                 const std::vector<MonomialTuple>& tuples,
                                                 const PolySubgroup& slice);

/// b_n x^n.
GroupPolynomial beta_projection(const GroupPolynomial& p, unsigned n, Elem zero);

struct HorribleReport {
  bool part_i = true;
  ElementSet lhs;  // degree-(i+j) coefficients of beta_(i+j)(A^k((Ax^i)(bx^j)))
  ElementSet rhs;  // A^(k+1) sigma^i(b)
  /// Set only when sigma^i(b) lies in [sigma^i(b)].
  std::optional<bool> part_ii;
};

HorribleReport check_horrible_lemma(const GroupWithOperators& g, const EndoPair& pair, Elem b,
                                    unsigned i, unsigned j, unsigned k);

struct HorribleSummary {
  std::uint64_t part_i_checked = 0;
  bool part_i_passed = true;
  std::optional<Witness> part_i_witness;  // (b, i, j, k)
  std::uint64_t part_ii_checked = 0;
  std::uint64_t part_ii_skipped = 0;
  bool part_ii_passed = true;
  std::optional<Witness> part_ii_witness;  // (b, i, j)
};

/// Both parts for every b and every i, j, k <= max_index.
HorribleSummary check_horrible_all(const GroupWithOperators& g, const EndoPair& pair,
                                   unsigned max_index);

struct LeadingCoeffReport {
  Subgroup q;
  bool is_subgroup = false;
  bool is_stable = false;
  std::optional<Witness> witness;
};

/// Q = {b : sigma^d(b) is a leading coefficient of degree d in P for some d <= D}.
/// Throws HypothesisNotMet when sigma is not surjective or not A-stable.
LeadingCoeffReport leading_coeff_subgroup(const GroupWithOperators& g, const EndoPair& pair,
                                          const SlicedStableSubgroup& p);

struct ChainWitness {
  Elem c = 0;               // first element outside its own bracket
  Subgroup bracket;         // [c]
  Quotient quotient;        // B / [c]
  Subgroup e;               // <c + [c]> in the quotient
  std::vector<SlicedStableSubgroup> links;
  std::vector<GroupPolynomial> separators;  // separators[n] is in links[n+1] \ links[n]
  bool annihilated = false;                 // A E = 0
  bool strict = false;
  bool links_stable = false;
  bool verified() const noexcept { return annihilated && strict && links_stable; }
};

struct NotApplicable {};

/// For sigma = id, delta = 0: NotApplicable when the action is weakly
/// s-unital, otherwise a strictly ascending chain of `length` stable
/// subgroups of (B/[c])[x].
std::variant<ChainWitness, NotApplicable> ascending_chain_witness(const GroupWithOperators& g,
                                                                  unsigned length);

}  // namespace oreext
