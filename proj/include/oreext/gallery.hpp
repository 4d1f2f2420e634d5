#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "oreext/core_algebra.hpp"
#include "oreext/ore_extension.hpp"
#include "oreext/rings_modules.hpp"

namespace oreext {

/// F_(p^k) built modulo the first monic irreducible polynomial of degree k in
/// index order. Element index sum_i c_i p^(k-1-i) holds the coefficient of t^i
/// at tuple position i, matching FiniteAbelianGroup::cyclic_product naming.
struct FiniteField {
  unsigned p = 0;
  unsigned k = 0;
  std::vector<unsigned> modulus;  // low to high, monic, length k + 1
  FiniteRing ring;
  Table frobenius;  // x -> x^p

  std::size_t order() const noexcept { return ring.order(); }
  Elem one() const;
};

/// Throws BadParams unless p is prime and p^k <= 256.
FiniteField finite_field(unsigned p, unsigned k);

/// The ring acting on itself by left multiplication (requires left distributivity).
GroupWithOperators regular_operators(const FiniteRing& r);

/// A = B = C = R with both actions given by the multiplication. pair_B gets
/// companions (sigma_B, delta_B) on A = R.
AssocTriple regular_triple(const FiniteRing& r, const Table& sigma_B, const Table& delta_B,
                           const Table& sigma_C, const Table& delta_C);

/// Cayley-Dickson algebra of dimension 2^level over F_p with
/// (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)), conj(a,b) = (conj a, -b).
/// Elements are coefficient vectors.
class CayleyDickson {
 public:
  CayleyDickson(unsigned p, unsigned level);

  unsigned p() const noexcept { return p_; }
  unsigned level() const noexcept { return level_; }
  std::size_t dim() const noexcept { return std::size_t{1} << level_; }

  std::vector<unsigned> mul(const std::vector<unsigned>& x, const std::vector<unsigned>& y) const;
  std::vector<unsigned> conj(const std::vector<unsigned>& x) const;
  std::vector<unsigned> basis(std::size_t i) const;

  /// Expands the product of two generic elements with polynomial coordinates
  /// and checks every output coordinate is a bilinear form in (x, y). This
  /// certifies left and right distributivity. On failure, names the coordinate.
  std::optional<Witness> bilinearity_violation() const;
  /// First basis triple with (e_i e_j) e_k != e_i (e_j e_k). By trilinearity
  /// none means associative.
  std::optional<Witness> associator_witness() const;

  /// Full multiplication table; only for level <= 2. Throws BadParams otherwise.
  FiniteRing table() const;
  /// Element index of a coefficient vector in table() order.
  Elem encode(const std::vector<unsigned>& x) const;
  std::vector<unsigned> decode(Elem e) const;

 private:
  unsigned p_;
  unsigned level_;
};

struct Claim {
  std::string predicate;
  bool expected = false;
  std::string source;  // which published example or statement the claim reflects
};

struct GroupItem {
  GroupWithOperators g;
  EndoPair pair;
};
struct RingItem {
  FiniteRing ring;
  Table sigma;
  Table delta;
  std::vector<Elem> ideal_generators;
  unsigned ideal_depth = 0;
};
struct TripleItem {
  AssocTriple triple;
  GroupWithOperators v;  // C over A, with companion maps in v_pair
  EndoPair v_pair;
  unsigned max_degree = 1;
};
struct CayleyDicksonItem {
  CayleyDickson algebra;
};

struct GalleryItem {
  std::string id;  // canonical "family(params)"
  std::string family;
  std::vector<std::string> params;
  std::variant<GroupItem, RingItem, TripleItem, CayleyDicksonItem> structure;
  std::vector<Claim> claims;
};

struct GalleryFamily {
  std::string name;
  std::string signature;
  std::string description;
};
const std::vector<GalleryFamily>& gallery_families();

/// Default instances exercised by the test suite and `gallery verify`.
std::vector<std::string> gallery_default_ids();

/// build("cyclic_inversion", {"3"}) or build("cyclic_inversion(3)").
/// Throws UnknownId or BadParams.
GalleryItem build(const std::string& family, const std::vector<std::string>& params);
GalleryItem build(const std::string& id);

GalleryItem cyclic_inversion(unsigned n);
GalleryItem boolean_group(unsigned k);
GalleryItem odd_prime_product(unsigned k);
GalleryItem rps_algebra();
GalleryItem cayley_dickson(unsigned p, unsigned level);
GalleryItem twisted_pair(unsigned p, unsigned v, unsigned w);
GalleryItem frobenius_vector_space(unsigned p, unsigned k, unsigned dim, const std::string& alpha);

struct ClaimResult {
  Claim claim;
  bool actual = false;
  std::optional<Witness> witness;
  bool passed() const noexcept { return actual == claim.expected; }
};

struct GalleryReport {
  std::string id;
  std::vector<ClaimResult> results;
  bool passed() const noexcept;
};

GalleryReport verify_all(const GalleryItem& item);
/// Throws AlgebraError(ClaimFailed) naming the first failing claim.
void require_all(const GalleryItem& item);

/// Structure file text (JSON) for the item. Deterministic. Throws BadParams for
/// Cayley-Dickson levels without a multiplication table.
std::string emit(const GalleryItem& item);

}  // namespace oreext
