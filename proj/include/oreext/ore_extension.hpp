#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oreext/core_algebra.hpp"

namespace oreext {

/// The pair (sigma, delta) of additive endomorphisms of B, with optional
/// companion maps on the operator set. Companion maps carry no axioms.
struct EndoPair {
  Table sigma;
  Table delta;
  std::optional<Table> sigma_A;
  std::optional<Table> delta_A;

  bool has_companions() const noexcept { return sigma_A.has_value() && delta_A.has_value(); }
};

/// Validates shapes and additivity. Throws NotEndomorphism / BadParams.
EndoPair make_endo_pair(const FiniteAbelianGroup& group, Table sigma, Table delta,
                        std::optional<Table> sigma_A = std::nullopt,
                        std::optional<Table> delta_A = std::nullopt, std::size_t num_ops = 0);

/// sigma = id, delta = 0, with sigma_A = id and delta_A = the zero operator.
EndoPair plain_pair(const GroupWithOperators& g);

/// Table of the map b -> z*b.
Table scalar_map(const FiniteAbelianGroup& group, long long z);
Table identity_map(std::size_t n);

enum class PiBuilder { dp, bruteforce };

/// pi_j^i: sum of all binom(i, j) compositions of j sigmas and i-j deltas.
struct PiOperator {
  unsigned i = 0;
  unsigned j = 0;
  Table table;
  PiBuilder builder = PiBuilder::dp;
};

PiOperator pi_map(const FiniteAbelianGroup& group, const EndoPair& pair, unsigned i, unsigned j,
                  PiBuilder builder);

/// Triangular cache of pi_j^i built with the one-shift recurrence
/// pi_j^(k+1) = pi_(j-1)^k o sigma + pi_j^k o delta.
/// at() is safe for concurrent readers once ensure() has covered the index.
class PiCalculus {
 public:
  PiCalculus(FiniteAbelianGroup group, Table sigma, Table delta);
  PiCalculus(const FiniteAbelianGroup& group, const EndoPair& pair)
      : PiCalculus(group, pair.sigma, pair.delta) {}

  void ensure(unsigned max_i);
  /// Requires ensure(i) beforehand. Returns the zero map for i < j.
  const Table& at(unsigned i, unsigned j) const;
  const Table& operator()(unsigned i, unsigned j) {
    ensure(i);
    return at(i, j);
  }
  unsigned rows() const noexcept { return static_cast<unsigned>(rows_.size()); }
  const FiniteAbelianGroup& group() const noexcept { return group_; }

 private:
  FiniteAbelianGroup group_;
  Table sigma_;
  Table delta_;
  Table zero_;
  std::vector<std::vector<Table>> rows_;
};

enum class PolySort { overA, overB, overC };

/// Sparse polynomial over a group or operator set; zero coefficients are never stored.
class GroupPolynomial {
 public:
  explicit GroupPolynomial(PolySort sort = PolySort::overB) : sort_(sort) {}

  static GroupPolynomial from_dense(std::span<const Elem> coeffs, Elem zero, PolySort sort);
  static GroupPolynomial monomial(Elem coeff, unsigned degree, Elem zero, PolySort sort);

  void set(unsigned degree, Elem coeff, Elem zero);
  Elem coeff(unsigned degree, Elem zero) const;
  /// -1 for the zero polynomial.
  int degree() const noexcept;
  bool is_zero() const noexcept { return terms_.empty(); }
  PolySort sort() const noexcept { return sort_; }
  const std::map<unsigned, Elem>& terms() const noexcept { return terms_; }
  std::vector<Elem> dense(Elem zero, std::size_t length) const;

  friend bool operator==(const GroupPolynomial&, const GroupPolynomial&) = default;

 private:
  PolySort sort_;
  std::map<unsigned, Elem> terms_;
};

/// "c0 + c1*x + c2*x^2", or "0".
std::string format_poly(const GroupPolynomial& p, const std::vector<std::string>& names);
std::string format_dense(std::span<const Elem> coeffs, Elem zero,
                         const std::vector<std::string>& names);

/// out += alpha * beta with the Ore action sum_{i,j,k} (a_i pi^i_k(b_j)) x^(k+j).
/// alpha holds operator indices (alpha_zero is the zero operator); out has
/// length >= len(alpha) + len(beta) - 1. pi must cover len(alpha) - 1.
void ore_act_dense(const ActionView& action, const PiCalculus& pi, std::span<const Elem> alpha,
                   Elem alpha_zero, std::span<const Elem> beta, std::span<Elem> out);

/// The Ore action of A[x] on B[x]. Throws SortMismatch.
GroupPolynomial ore_act(const GroupPolynomial& alpha, const GroupPolynomial& beta,
                        const GroupWithOperators& g, const EndoPair& pair);

struct IdentityReport {
  bool passed = true;
  std::uint64_t checks = 0;
  std::optional<Witness> witness;
};

struct VandermondeReport {
  IdentityReport vandermonde;
  IdentityReport one_shift;
  bool passed() const noexcept { return vandermonde.passed && one_shift.passed; }
};

/// sum_i pi_i^k o pi_(j-i)^n = pi_j^(k+n) and the one-shift specialisation, for
/// all j, k, n <= max_index and all b. The left side uses the recurrence cache,
/// the right side the word-enumeration builder.
VandermondeReport check_vandermonde(const FiniteAbelianGroup& group, const EndoPair& pair,
                                    unsigned max_index);

struct TwistReport {
  bool sigma_twisted = false;
  bool twisted_derivation = false;
  std::optional<Witness> sigma_witness;  // (a, b)
  std::optional<Witness> delta_witness;  // (a, b)
  bool holds() const noexcept { return sigma_twisted && twisted_derivation; }
};

/// sigma_B(ab) = sigma_A(a) sigma_B(b) and
/// delta_B(ab) = sigma_A(a) delta_B(b) + delta_A(a) b over A x B.
/// Throws MissingCompanionMaps.
TwistReport twist_predicates(const GroupWithOperators& g, const EndoPair& pair);

/// The formal composite pi_k^m(a) over an operator set without addition: the
/// multiset of words of length m with k letters 's' (sigma_A) and m-k letters
/// 'd' (delta_A). The leftmost letter is applied last.
struct FormalPiWord {
  unsigned length = 0;
  unsigned sigma_count = 0;
  std::vector<std::string> words;
  Elem base = 0;
};

FormalPiWord formal_pi(unsigned m, unsigned k, Elem base);
/// w(base) for every word, in word order. Requires companion maps.
std::vector<Elem> evaluate_words(const FormalPiWord& word, const EndoPair& pair);
/// sum over words w of w(base) * c, computed in B.
Elem act_formal(const GroupWithOperators& g, const EndoPair& pair, const FormalPiWord& word, Elem c);

struct LeibnizReport {
  IdentityReport leibniz;
  IdentityReport mixed;
  bool passed() const noexcept { return leibniz.passed && mixed.passed; }
};

/// Leibniz: pi_i^m(ab) = sum_k pi_k^m(a) pi_i^k(b).
/// Mixed:   sum_i pi_i^m(a pi_(j-i)^n(b)) = sum_i pi_i^m(a) pi_j^(i+n)(b).
/// Throws HypothesisNotMet when the twist predicates fail.
LeibnizReport check_leibniz_mixed(const GroupWithOperators& g, const EndoPair& pair,
                                  unsigned max_index);

/// (A, B, C): C carries actions of both A and B; each has an EndoPair.
struct AssocTriple {
  GroupWithOperators B;  // B over A; A is B.ops()
  FiniteAbelianGroup C;
  std::vector<Elem> act_A_on_C;  // |A| x |C|
  std::vector<Elem> act_B_on_C;  // |B| x |C|
  EndoPair pair_B;
  EndoPair pair_C;

  const OperatorSet& A() const noexcept { return B.ops(); }
  ActionView a_on_c() const noexcept { return {&C, A().size(), act_A_on_C.data()}; }
  ActionView b_on_c() const noexcept { return {&C, B.group().order(), act_B_on_C.data()}; }
};

/// Validates both actions on C (endomorphisms; zero of A and zero of B annihilate)
/// and both EndoPairs.
AssocTriple make_triple(GroupWithOperators b, FiniteAbelianGroup c, std::vector<Elem> act_A_on_C,
                        std::vector<Elem> act_B_on_C, EndoPair pair_B, EndoPair pair_C);

inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct TripleReport {
  bool triple_associative = false;
  bool sigma_twisted = false;
  bool delta_twisted_derivation = false;
  std::optional<Witness> assoc_witness;  // (a, b, c)
  std::optional<Witness> sigma_witness;  // (b, c)
  std::optional<Witness> delta_witness;  // (b, c)

  bool phase2_passed = false;
  bool exhaustive = false;
  std::uint64_t tuples_total = 0;
  std::uint64_t tuples_checked = 0;
  std::optional<Witness> phase2_witness;  // (alpha, beta, gamma)
  int witness_degree = -1;

  bool annihilator_trivial = false;
  std::uint64_t seed = kDefaultSeed;
  /// False if the outcome contradicts the associativity theorem or its converse.
  bool consistent = true;

  bool phase1() const noexcept {
    return triple_associative && sigma_twisted && delta_twisted_derivation;
  }
  bool passed() const noexcept { return phase1() && phase2_passed; }
};

/// Phase 1 checks the hypotheses on A x B x C. Phase 2 checks
/// (alpha beta) gamma = alpha (beta gamma) for degree <= max_degree,
/// exhaustively when the tuple count is <= budget and otherwise on `budget`
/// uniformly drawn tuples from a mt19937_64 seeded with `seed`.
TripleReport check_triple_associativity(const AssocTriple& t, unsigned max_degree,
                                        std::uint64_t budget,
                                        std::uint64_t seed = kDefaultSeed);

/// {c : ac = 0 for every operator a}.
Subgroup annihilator(const ActionView& action);

}  // namespace oreext
