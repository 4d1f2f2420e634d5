#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oreext/types.hpp"

namespace oreext {

/// Finite abelian group given by explicit tables. Immutable; copies share storage.
class FiniteAbelianGroup {
 public:
  /// The trivial group {0}.
  FiniteAbelianGroup();

  /// Validates every group axiom exhaustively; throws AlgebraError(NotAGroup)
  /// naming the first violated axiom with a witness tuple.
  static FiniteAbelianGroup from_tables(std::vector<std::string> names, std::vector<Elem> add,
                                        std::vector<Elem> neg, Elem zero);

  /// Skips the O(n^3) axiom scan. For builders that are correct by construction.
  static FiniteAbelianGroup trusted(std::vector<std::string> names, std::vector<Elem> add,
                                    std::vector<Elem> neg, Elem zero);

  /// Z/n with elements "0".."n-1".
  static FiniteAbelianGroup cyclic(unsigned n);

  /// Z/n1 x ... x Z/nk with tuple names "(a,b,...)", last coordinate fastest.
  /// A single factor yields the plain cyclic naming.
  static FiniteAbelianGroup cyclic_product(std::span<const unsigned> orders);

  std::size_t order() const noexcept;
  Elem zero() const noexcept;
  Elem add(Elem a, Elem b) const noexcept { return add_[a * n_ + b]; }
  Elem neg(Elem a) const noexcept { return neg_[a]; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  /// z * b in the usual integer-multiple sense.
  Elem times(long long z, Elem b) const;
  /// Additive order of b.
  std::size_t order_of(Elem b) const;

  std::span<const Elem> add_table() const noexcept { return {add_, n_ * n_}; }
  std::span<const Elem> neg_table() const noexcept { return {neg_, n_}; }

  const std::string& name(Elem e) const;
  const std::vector<std::string>& names() const;
  std::optional<Elem> find(std::string_view name) const;
  /// Throws AlgebraError(UnknownId).
  Elem parse(std::string_view name) const;

  bool same_tables(const FiniteAbelianGroup& other) const;

 private:
  struct Data;
  explicit FiniteAbelianGroup(std::shared_ptr<const Data> data);

  std::shared_ptr<const Data> data_;
  const Elem* add_ = nullptr;
  const Elem* neg_ = nullptr;
  std::size_t n_ = 0;
};

/// Operator identifiers with the distinguished zero operator.
struct OperatorSet {
  std::vector<std::string> names;
  Elem zero = 0;

  std::size_t size() const noexcept { return names.size(); }
  std::optional<Elem> find(std::string_view name) const;
  Elem parse(std::string_view name) const;

  friend bool operator==(const OperatorSet&, const OperatorSet&) = default;
};

/// Non-owning view of an action table (row-major, one row per operator).
/// No axioms are implied: ring and module multiplications are viewed this way
/// before they are known to act by endomorphisms.
struct ActionView {
  const FiniteAbelianGroup* target = nullptr;
  std::size_t num_ops = 0;
  const Elem* table = nullptr;

  Elem act(Elem op, Elem b) const noexcept { return table[op * target->order() + b]; }
  std::span<const Elem> row(Elem op) const noexcept {
    return {table + op * target->order(), target->order()};
  }
};

/// Finite abelian group B with operators A acting by endomorphisms, including a
/// zero operator that acts as the constant-zero map.
class GroupWithOperators {
 public:
  /// Validates group axioms (already done by FiniteAbelianGroup), the zero
  /// operator and the endomorphism property. When zero_op is absent an operator
  /// named "eps" is appended. Throws AlgebraError(NotEndomorphism /
  /// BadZeroOperator) with the first witness.
  static GroupWithOperators validate(FiniteAbelianGroup group, std::vector<std::string> op_names,
                                     std::optional<std::string> zero_op,
                                     std::vector<Table> action_rows);

  static GroupWithOperators trusted(FiniteAbelianGroup group, OperatorSet ops,
                                    std::vector<Elem> action);

  /// Only the zero operator acts.
  static GroupWithOperators zero_action(FiniteAbelianGroup group);

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  const OperatorSet& ops() const noexcept { return *ops_; }
  std::size_t num_ops() const noexcept { return ops_->size(); }
  Elem act(Elem op, Elem b) const noexcept { return action_[op * group_.order() + b]; }
  std::span<const Elem> row(Elem op) const noexcept {
    return {action_ + op * group_.order(), group_.order()};
  }
  ActionView view() const noexcept { return {&group_, ops_->size(), action_}; }

 private:
  GroupWithOperators(FiniteAbelianGroup group, std::shared_ptr<const OperatorSet> ops,
                     std::shared_ptr<const std::vector<Elem>> action);

  FiniteAbelianGroup group_;
  std::shared_ptr<const OperatorSet> ops_;
  std::shared_ptr<const std::vector<Elem>> action_store_;
  const Elem* action_ = nullptr;
};

/// Subgroup as a sorted member list.
struct Subgroup {
  ElementSet members;

  bool contains(Elem e) const;
  std::size_t size() const noexcept { return members.size(); }
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

ElementSet make_set(std::vector<Elem> elems);
bool is_subset(const ElementSet& small, const ElementSet& big);

/// A^n S: all a1(a2(...(an s))) for s in S. A^0 S = S.
ElementSet operator_images(const ActionView& action, std::span<const Elem> set, unsigned n);

/// Least action-closed superset of S, by breadth-first saturation. Throws EmptySet.
ElementSet stable_closure(const ActionView& action, std::span<const Elem> set);
ElementSet stable_closure(const GroupWithOperators& g, std::span<const Elem> set);

/// Additive closure (the Z-span) of S; {0} for empty S.
Subgroup additive_span(const FiniteAbelianGroup& group, std::span<const Elem> set);

enum class SpanMode { full, bracket };

/// full: Z-span of the union of A^n S over n >= 0. bracket: the same over n >= 1.
/// Throws EmptySet.
Subgroup generated_stable_subgroup(const ActionView& action, std::span<const Elem> set,
                                   SpanMode mode);
Subgroup generated_stable_subgroup(const GroupWithOperators& g, std::span<const Elem> set,
                                   SpanMode mode);

/// First (operator, element) with a*c outside the set, if any.
std::optional<Witness> stability_violation(const ActionView& action, const ElementSet& set);
std::optional<Witness> subgroup_violation(const FiniteAbelianGroup& group, const ElementSet& set);

/// First (b, c) with f(b + c) != f(b) + f(c).
std::optional<Witness> additivity_violation(const FiniteAbelianGroup& source,
                                            const FiniteAbelianGroup& target,
                                            std::span<const Elem> f);

struct SUnitalityReport {
  bool s_unital = false;
  bool weakly_s_unital = false;
  std::optional<Witness> s_witness;     // b with b not in Ab
  std::optional<Witness> weak_witness;  // b with b not in [b]
  /// Number of nonempty subsets S on which <S> = [S] was compared.
  std::size_t subsets_checked = 0;
  bool subsets_exhaustive = false;
  /// Whether "weakly s-unital <=> <S> = [S] for all tested S" held.
  bool equivalence_consistent = true;
  std::optional<Witness> equality_witness;  // first S with <S> != [S]
};

/// Evaluates s-unitality and weak s-unitality, and cross-checks the latter
/// against <S> = [S] over all singletons and, for |B| <= exhaustive_limit,
/// all nonempty subsets.
SUnitalityReport sunitality_report(const GroupWithOperators& g, std::size_t exhaustive_limit = 16);

struct Quotient {
  GroupWithOperators structure;
  /// Element of B -> coset index in the quotient.
  Table projection;
  /// Coset index -> least member in declared order.
  std::vector<Elem> representatives;
};

/// B/C with a(b + C) = ab + C. Throws NotStable if C is not a stable subgroup.
Quotient quotient(const GroupWithOperators& g, const Subgroup& c);

/// Componentwise group and action. Throws MismatchedOperators.
GroupWithOperators direct_product(std::span<const GroupWithOperators> factors);

/// All subgroups of a group, in discovery order. Throws BadParams if the
/// order exceeds limit.
std::vector<Subgroup> all_subgroups(const FiniteAbelianGroup& group, std::size_t limit = 16);
std::vector<Subgroup> stable_subgroups(const GroupWithOperators& g, std::size_t limit = 16);

/// Additive map between groups with the same operator set.
struct GroupHom {
  const GroupWithOperators* source = nullptr;
  const GroupWithOperators* target = nullptr;
  Table map;
};

struct HomReport {
  bool additive = false;
  bool a_stable = false;
  std::optional<bool> tau_twisted;
  std::optional<Witness> additive_witness;
  std::optional<Witness> a_stable_witness;
  std::optional<Witness> tau_witness;
  /// tau-twisted must imply A-stable; false would be an internal inconsistency.
  bool implication_consistent = true;
};

HomReport hom_predicates(const GroupHom& f, std::optional<std::span<const Elem>> tau = std::nullopt);

struct KernelChainReport {
  /// Least n with ker(f^n) = ker(f^(n+1)).
  std::size_t n_stable = 0;
  std::vector<Subgroup> kernels;  // ker(f^1) .. ker(f^(n+1))
  bool kernels_stable = true;
  bool kernel_image_trivial = false;  // ker(f^n) meets im(f^n) in {0}
  bool surjective = false;
  std::optional<bool> bijective;  // set only when surjective
};

/// Throws NotAdditive / NotAStable when f is not an additive A-stable endomorphism.
KernelChainReport kernel_chain_analysis(const GroupWithOperators& g, std::span<const Elem> f);

std::string format_set(const FiniteAbelianGroup& group, std::span<const Elem> set);

}  // namespace oreext
