#include "oreext/gallery.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "oreext/noetherian.hpp"
#include "oreext/structure_file.hpp"

namespace oreext {

namespace {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::size_t ipow(std::size_t b, unsigned e) {
  std::size_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Coordinates with the last one fastest, as in cyclic_product.
Elem encode_digits(const std::vector<unsigned>& digits, unsigned base) {
  Elem e = 0;
  for (unsigned d : digits) e = e * base + d;
  return e;
}

std::vector<unsigned> decode_digits(Elem e, unsigned base, std::size_t count) {
  std::vector<unsigned> d(count);
  for (std::size_t i = count; i-- > 0;) {
    d[i] = e % base;
    e /= base;
  }
  return d;
}

FiniteAbelianGroup power_group(unsigned p, std::size_t count) {
  std::vector<unsigned> orders(count, p);
  return FiniteAbelianGroup::cyclic_product(orders);
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s;
}

// ---- polynomial arithmetic over F_p, coefficient vectors low to high --------

std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& m, unsigned p) {
  const std::size_t dm = m.size() - 1;  // m is monic
  for (std::size_t d = a.size(); d-- > dm;) {
    const unsigned c = a[d] % p;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dm; ++i) a[d - dm + i] = (a[d - dm + i] + (p - c) * m[i]) % p;
  }
  a.resize(std::min(a.size(), dm));
  return a;
}

bool irreducible(const std::vector<unsigned>& f, unsigned p) {
  const unsigned k = static_cast<unsigned>(f.size()) - 1;
  for (unsigned d = 1; 2 * d <= k; ++d)
    for (std::size_t idx = 0; idx < ipow(p, d); ++idx) {
      std::vector<unsigned> g(d + 1, 0);
      std::size_t t = idx;
      for (unsigned i = 0; i < d; ++i, t /= p) g[i] = t % p;
      g[d] = 1;
      auto r = poly_mod(f, g, p);
      if (std::all_of(r.begin(), r.end(), [](unsigned c) { return c == 0; })) return false;
    }
  return true;
}

// ---- Cayley-Dickson doubling, generic in the scalar -----------------------

template <class S>
std::vector<S> cd_conj(const std::vector<S>& x) {
  if (x.size() == 1) return x;
  const std::size_t h = x.size() / 2;
  std::vector<S> a(x.begin(), x.begin() + h), out = cd_conj(a);
  for (std::size_t i = h; i < x.size(); ++i) out.push_back(-x[i]);
  return out;
}

template <class S>
std::vector<S> cd_mul(const std::vector<S>& x, const std::vector<S>& y) {
  if (x.size() == 1) return {x[0] * y[0]};
  const std::size_t h = x.size() / 2;
  const std::vector<S> a(x.begin(), x.begin() + h), b(x.begin() + h, x.end());
  const std::vector<S> c(y.begin(), y.begin() + h), d(y.begin() + h, y.end());
  auto ac = cd_mul(a, c), db = cd_mul(cd_conj(d), b);
  auto da = cd_mul(d, a), bc = cd_mul(b, cd_conj(c));
  std::vector<S> out(x.size());
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = ac[i] - db[i];
    out[h + i] = da[i] + bc[i];
  }
  return out;
}

// Integer polynomial in variables x_0..x_(n-1) (ids < n) and y_0..y_(n-1).
struct Sym {
  std::map<std::vector<unsigned char>, long long> terms;

  static Sym var(unsigned char id) {
    Sym s;
    s.terms.emplace(std::vector<unsigned char>(1, id), 1);
    return s;
  }
  Sym operator+(const Sym& o) const {
    Sym r = *this;
    for (const auto& [m, c] : o.terms) r.terms[m] += c;
    r.prune();
    return r;
  }
  Sym operator-() const {
    Sym r = *this;
    for (auto& [m, c] : r.terms) c = -c;
    return r;
  }
  Sym operator-(const Sym& o) const { return *this + (-o); }
  Sym operator*(const Sym& o) const {
    Sym r;
    for (const auto& [m1, c1] : terms)
      for (const auto& [m2, c2] : o.terms) {
        auto m = m1;
        m.insert(m.end(), m2.begin(), m2.end());
        std::sort(m.begin(), m.end());
        r.terms[m] += c1 * c2;
      }
    r.prune();
    return r;
  }
  void prune() {
    std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
  }
};

std::vector<long long> to_ll(const std::vector<unsigned>& x) { return {x.begin(), x.end()}; }

std::vector<unsigned> reduce_mod(const std::vector<long long>& x, unsigned p) {
  std::vector<unsigned> out(x.size());
  const long long pp = p;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<unsigned>(((x[i] % pp) + pp) % pp);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Finite fields

Elem FiniteField::one() const {
  std::vector<unsigned> c(k, 0);
  c[0] = 1;
  return encode_digits(c, p);
}

FiniteField finite_field(unsigned p, unsigned k) {
  if (!is_prime(p) || k == 0 || ipow(p, k) > 256)
    throw AlgebraError(ErrorKind::BadParams, "finite field needs a prime p and p^k <= 256");
  std::vector<unsigned> modulus;
  for (std::size_t idx = 0; idx < ipow(p, k); ++idx) {
    std::vector<unsigned> f(k + 1, 0);
    std::size_t t = idx;
    for (unsigned i = 0; i < k; ++i, t /= p) f[i] = t % p;
    f[k] = 1;
    if (irreducible(f, p)) {
      modulus = f;
      break;
    }
  }
  const std::size_t n = ipow(p, k);
  Table mul(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const auto a = decode_digits(x, p, k), b = decode_digits(y, p, k);
      std::vector<unsigned> prod(2 * k - 1, 0);
      for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
      auto r = poly_mod(prod, modulus, p);
      r.resize(k, 0);
      mul[x * n + y] = encode_digits(r, p);
    }
  FiniteRing ring = FiniteRing::make(power_group(p, k), std::move(mul));
  Table frob(n);
  for (Elem x = 0; x < n; ++x) {
    Elem y = x;
    for (unsigned i = 1; i < p; ++i) y = ring.mul(y, x);
    frob[x] = y;
  }
  return FiniteField{p, k, std::move(modulus), std::move(ring), std::move(frob)};
}

GroupWithOperators regular_operators(const FiniteRing& r) {
  return module_as_operators(LeftModule::regular(r));
}

AssocTriple regular_triple(const FiniteRing& r, const Table& sigma_B, const Table& delta_B,
                           const Table& sigma_C, const Table& delta_C) {
  return make_triple(regular_operators(r), r.group(), r.mul_table(), r.mul_table(),
                     EndoPair{sigma_B, delta_B, sigma_B, delta_B}, EndoPair{sigma_C, delta_C, std::nullopt, std::nullopt});
}

// ---------------------------------------------------------------------------
// Cayley-Dickson

CayleyDickson::CayleyDickson(unsigned p, unsigned level) : p_(p), level_(level) {
  if (!is_prime(p) || p == 2 || level > 4)
    throw AlgebraError(ErrorKind::BadParams, "Cayley-Dickson needs an odd prime p and level <= 4");
}

std::vector<unsigned> CayleyDickson::mul(const std::vector<unsigned>& x,
                                         const std::vector<unsigned>& y) const {
  return reduce_mod(cd_mul(to_ll(x), to_ll(y)), p_);
}

std::vector<unsigned> CayleyDickson::conj(const std::vector<unsigned>& x) const {
  return reduce_mod(cd_conj(to_ll(x)), p_);
}

std::vector<unsigned> CayleyDickson::basis(std::size_t i) const {
  std::vector<unsigned> e(dim(), 0);
  e.at(i) = 1;
  return e;
}

std::optional<Witness> CayleyDickson::bilinearity_violation() const {
  const std::size_t n = dim();
  std::vector<Sym> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = Sym::var(static_cast<unsigned char>(i));
    y[i] = Sym::var(static_cast<unsigned char>(n + i));
  }
  const auto prod = cd_mul(x, y);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [mono, c] : prod[i].terms) {
      if (c % static_cast<long long>(p_) == 0) continue;
      const bool ok = mono.size() == 2 && mono[0] < n && mono[1] >= n;
      if (!ok) return Witness{"product coordinate is not bilinear", {std::to_string(i)}};
    }
  return std::nullopt;
}

std::optional<Witness> CayleyDickson::associator_witness() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto ei = basis(i), ej = basis(j), ek = basis(k);
        if (mul(mul(ei, ej), ek) != mul(ei, mul(ej, ek)))
          return Witness{"(e_i e_j) e_k != e_i (e_j e_k)",
                         {"e" + std::to_string(i), "e" + std::to_string(j), "e" + std::to_string(k)}};
      }
  return std::nullopt;
}

Elem CayleyDickson::encode(const std::vector<unsigned>& x) const { return encode_digits(x, p_); }

std::vector<unsigned> CayleyDickson::decode(Elem e) const { return decode_digits(e, p_, dim()); }

FiniteRing CayleyDickson::table() const {
  if (level_ > 2 || ipow(p_, static_cast<unsigned>(dim())) > 4096)
    throw AlgebraError(ErrorKind::BadParams, "multiplication tables are built for level <= 2 only");
  const std::size_t n = ipow(p_, static_cast<unsigned>(dim()));
  Table mul(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) mul[a * n + b] = encode(this->mul(decode(a), decode(b)));
  return FiniteRing::make(power_group(p_, dim()), std::move(mul));
}

// ---------------------------------------------------------------------------
// Gallery items

namespace {

GroupWithOperators inversion_on(const FiniteAbelianGroup& g) {
  Table neg(g.neg_table().begin(), g.neg_table().end());
  return GroupWithOperators::validate(g, {"a"}, std::nullopt, {neg});
}

std::vector<Claim> group_claims(bool s_unital, bool weakly) {
  std::vector<Claim> c{
      {"s_unital", s_unital, "inversion action: s-unital exactly on Boolean groups"},
      {"weakly_s_unital", weakly, "inversion action: always weakly s-unital"},
      {"sunitality_equivalence", true, "weak s-unitality <=> <S> = [S] for every S"},
      {"chain_not_applicable", weakly, "B[x] has no strict chain when the action is weakly s-unital"},
      {"vandermonde", true, "Vandermonde and one-shift identities of the pi-maps"},
      {"horrible_i", true, "leading-term lemma, part (i)"},
  };
  if (weakly) c.push_back({"horrible_ii", true, "leading-term lemma, part (ii), weak hypothesis"});
  return c;
}

}  // namespace

GalleryItem cyclic_inversion(unsigned n) {
  if (n == 0 || n > 64) throw AlgebraError(ErrorKind::BadParams, "cyclic_inversion needs 1 <= n <= 64");
  auto g = inversion_on(FiniteAbelianGroup::cyclic(n));
  EndoPair pair = plain_pair(g);
  return GalleryItem{"cyclic_inversion(" + std::to_string(n) + ")", "cyclic_inversion",
                     {std::to_string(n)}, GroupItem{g, pair}, group_claims(n <= 2, true)};
}

GalleryItem boolean_group(unsigned k) {
  if (k == 0 || k > 5) throw AlgebraError(ErrorKind::BadParams, "boolean_group needs 1 <= k <= 5");
  auto g = inversion_on(power_group(2, k));
  EndoPair pair = plain_pair(g);
  return GalleryItem{"boolean_group(" + std::to_string(k) + ")", "boolean_group",
                     {std::to_string(k)}, GroupItem{g, pair}, group_claims(true, true)};
}

GalleryItem odd_prime_product(unsigned k) {
  if (k == 0 || k > 3) throw AlgebraError(ErrorKind::BadParams, "odd_prime_product needs 1 <= k <= 3");
  std::vector<GroupWithOperators> factors;
  for (unsigned p = 3; factors.size() < k; p += 2)
    if (is_prime(p)) factors.push_back(inversion_on(FiniteAbelianGroup::cyclic(p)));
  auto g = direct_product(factors);
  EndoPair pair = plain_pair(g);
  return GalleryItem{"odd_prime_product(" + std::to_string(k) + ")", "odd_prime_product",
                     {std::to_string(k)}, GroupItem{g, pair}, group_claims(false, true)};
}

GalleryItem rps_algebra() {
  // Elements are subsets of {R, P, S} as bitmasks R = 1, P = 2, S = 4.
  const char* letters[] = {"R", "P", "S"};
  std::vector<std::string> names(8);
  names[0] = "0";
  for (unsigned m = 1; m < 8; ++m) {
    std::string s;
    for (unsigned i = 0; i < 3; ++i)
      if (m & (1u << i)) s += (s.empty() ? "" : "+") + std::string(letters[i]);
    names[m] = s;
  }
  std::vector<Elem> add(64), neg(8);
  for (unsigned a = 0; a < 8; ++a) {
    neg[a] = a;
    for (unsigned b = 0; b < 8; ++b) add[a * 8 + b] = a ^ b;
  }
  // magma: RR = R, PP = P, SS = S, RP = PR = P, RS = SR = R, PS = SP = S
  const unsigned magma[3][3] = {{1, 2, 1}, {2, 2, 4}, {1, 4, 4}};
  Table mul(64);
  for (unsigned a = 0; a < 8; ++a)
    for (unsigned b = 0; b < 8; ++b) {
      unsigned r = 0;
      for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = 0; j < 3; ++j)
          if ((a >> i & 1) && (b >> j & 1)) r ^= magma[i][j];
      mul[a * 8 + b] = r;
    }
  auto ring = FiniteRing::make(FiniteAbelianGroup::from_tables(names, add, neg, 0), std::move(mul));
  Table id = identity_map(8), zero(8, 0);
  std::vector<Claim> claims{
      {"boolean", true, "the rock-paper-scissors magma algebra is a Boolean ring"},
      {"s_unital", true, "Boolean rings are s-unital"},
      {"weakly_s_unital", true, "hence weakly s-unital"},
      {"left_unital", false, "no left identity: the candidates R and S are both refuted"},
      {"right_unital", false, "commutative, so no right identity either"},
      {"associative", false, "the magma is not associative"},
      {"left_distributive", true, "magma algebras are distributive"},
      {"right_distributive", true, "magma algebras are distributive"},
      {"dictionary_consistent", true, "module and operator readings agree"},
  };
  return GalleryItem{"rps_algebra()", "rps_algebra", {}, RingItem{ring, id, zero, {}, 0}, claims};
}

GalleryItem cayley_dickson(unsigned p, unsigned level) {
  CayleyDickson cd(p, level);
  std::vector<Claim> claims{
      {"left_distributive", true, "Cayley-Dickson algebras are left distributive at every level"},
      {"right_distributive", true, "Cayley-Dickson algebras are right distributive at every level"},
      {"associative", level <= 2, "associative up to the quaternion level, not beyond"},
  };
  if (level <= 2) {
    claims.push_back({"conj_involution", true, "conj(conj z) = z"});
    claims.push_back({"conj_antimultiplicative", true, "conj(zw) = conj(w) conj(z)"});
  }
  return GalleryItem{"cayley_dickson(" + std::to_string(p) + "," + std::to_string(level) + ")",
                     "cayley_dickson",
                     {std::to_string(p), std::to_string(level)},
                     CayleyDicksonItem{cd},
                     claims};
}

GalleryItem twisted_pair(unsigned p, unsigned v, unsigned w) {
  if (!is_prime(p) || p > 7 || v >= p || w >= p)
    throw AlgebraError(ErrorKind::BadParams, "twisted_pair needs a prime p <= 7 and v, w < p");
  const std::size_t n = std::size_t{p} * p;
  Table mul(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      const unsigned r = a / p, t = b / p, u = b % p;
      mul[a * n + b] = ((r * t) % p) * p + (r * u) % p;
    }
  auto ring = FiniteRing::make(power_group(p, 2), std::move(mul));
  const Elem vw = v * p + w;
  Table delta = adjoint_derivation(ring, vw);
  std::vector<Elem> ideal{static_cast<Elem>(1)};  // (0,1)
  std::vector<Claim> claims{
      {"associative", true, "(r,s)(t,u) = (rt,ru) is associative"},
      {"left_distributive", true, "(r,s)(t,u) = (rt,ru) is distributive"},
      {"right_distributive", true, "(r,s)(t,u) = (rt,ru) is distributive"},
      {"left_unital", true, "every (1,s) is a left identity"},
      {"left_identities_match", true, "the left identities are exactly the (1,s)"},
      {"right_unital", false, "(0,1)(t,u) = (0,0), so no right identity"},
      {"sigma_ring_endo", true, "sigma = id"},
      {"delta_derivation", true, "adjoint maps are derivations"},
      {"right_ideal_chain", true, "I_0 < I_1 < ... < I_6 are right ideals"},
  };
  return GalleryItem{"twisted_pair(" + join({std::to_string(p), std::to_string(v), std::to_string(w)}) + ")",
                     "twisted_pair",
                     {std::to_string(p), std::to_string(v), std::to_string(w)},
                     RingItem{ring, identity_map(n), delta, ideal, 6},
                     claims};
}

GalleryItem frobenius_vector_space(unsigned p, unsigned k, unsigned dim, const std::string& alpha) {
  if (!is_prime(p) || k == 0 || ipow(p, k) > 16 || dim == 0 || ipow(ipow(p, k), dim) > 256)
    throw AlgebraError(ErrorKind::BadParams, "frobenius_vector_space needs p^k <= 16 and |V| <= 256");
  std::vector<unsigned> perm(dim);
  for (unsigned i = 0; i < dim; ++i) perm[i] = i;
  if (alpha == "swap") {
    if (dim < 2) throw AlgebraError(ErrorKind::BadParams, "swap needs dim >= 2");
    std::swap(perm[0], perm[1]);
  } else if (alpha == "cycle") {
    for (unsigned i = 0; i < dim; ++i) perm[i] = (i + 1) % dim;
  } else if (alpha != "identity") {
    throw AlgebraError(ErrorKind::BadParams, "alpha must be identity, swap or cycle");
  }

  FiniteField F = finite_field(p, k);
  const unsigned q = static_cast<unsigned>(F.order());
  const std::size_t nV = ipow(q, dim);
  Table sigma_F = F.frobenius, delta_F(q);
  for (Elem x = 0; x < q; ++x) delta_F[x] = F.ring.group().sub(x, sigma_F[x]);

  // V = F^dim, coordinates encoded base q with the last one fastest.
  FiniteAbelianGroup V = power_group(p, k * dim);
  Table act(std::size_t{q} * nV), sigma_V(nV), delta_V(nV);
  for (Elem v = 0; v < nV; ++v) {
    const auto c = decode_digits(v, q, dim);
    std::vector<unsigned> s(dim), d(dim);
    for (unsigned i = 0; i < dim; ++i) {
      s[i] = sigma_F[c[perm[i]]];
      d[i] = delta_F[c[i]];
    }
    sigma_V[v] = encode_digits(s, q);
    delta_V[v] = encode_digits(d, q);
    for (Elem f = 0; f < q; ++f) {
      std::vector<unsigned> fc(dim);
      for (unsigned i = 0; i < dim; ++i) fc[i] = F.ring.mul(f, c[i]);
      act[f * nV + v] = encode_digits(fc, q);
    }
  }
  GroupWithOperators B = regular_operators(F.ring);
  AssocTriple t = make_triple(B, V, act, act, EndoPair{sigma_F, delta_F, sigma_F, delta_F},
                              EndoPair{sigma_V, delta_V, std::nullopt, std::nullopt});
  GroupWithOperators vg = GroupWithOperators::trusted(V, B.ops(), act);
  EndoPair v_pair{sigma_V, delta_V, sigma_F, delta_F};

  unsigned max_degree = 0;
  for (unsigned d = 2; d >= 1; --d) {
    const double tuples = std::pow(double(q), 2.0 * (d + 1)) * std::pow(double(nV), d + 1.0);
    if (tuples <= double(1u << 21)) {
      max_degree = d;
      break;
    }
  }
  std::vector<Claim> claims{
      {"twist_B", true, "Frobenius on F with delta_F = id - sigma_F satisfies the twist conditions"},
      {"twist_V", true, "sigma_V = sigma_F o alpha is sigma_F-twisted; delta_V is a twisted derivation"},
      {"phase1", true, "the triple (F, F, V) is associative with both twist conditions"},
      {"phase2", true, "hence (F[x], F[x; sigma_F, delta_F], V[x; sigma_V, delta_V]) is associative"},
      {"leibniz_mixed_V", true, "Leibniz and mixed identities under the twist hypotheses"},
      {"vandermonde_V", true, "Vandermonde and one-shift identities of the pi-maps"},
  };
  return GalleryItem{
      "frobenius_vector_space(" + join({std::to_string(p), std::to_string(k), std::to_string(dim), alpha}) + ")",
      "frobenius_vector_space",
      {std::to_string(p), std::to_string(k), std::to_string(dim), alpha},
      TripleItem{std::move(t), std::move(vg), std::move(v_pair), max_degree},
      claims};
}

const std::vector<GalleryFamily>& gallery_families() {
  static const std::vector<GalleryFamily> fams{
      {"cyclic_inversion", "cyclic_inversion N", "Z/N with the inversion action"},
      {"boolean_group", "boolean_group K", "(Z/2)^K with the inversion action"},
      {"odd_prime_product", "odd_prime_product K", "C_3 x C_5 x ... (K odd primes) with inversion"},
      {"rps_algebra", "rps_algebra", "F_2 algebra of the rock-paper-scissors magma"},
      {"cayley_dickson", "cayley_dickson P LEVEL", "Cayley-Dickson algebra of dimension 2^LEVEL over F_P"},
      {"twisted_pair", "twisted_pair P V W", "F_P x F_P with (r,s)(t,u) = (rt,ru) and the adjoint derivation of (V,W)"},
      {"frobenius_vector_space", "frobenius_vector_space P K DIM identity|swap|cycle",
       "F_(P^K) with Frobenius acting on F^DIM through a coordinate permutation"},
  };
  return fams;
}

std::vector<std::string> gallery_default_ids() {
  return {"cyclic_inversion(2)",  "cyclic_inversion(3)",
          "cyclic_inversion(4)",  "cyclic_inversion(6)",
          "boolean_group(2)",     "odd_prime_product(2)",
          "rps_algebra()",        "cayley_dickson(3,1)",
          "cayley_dickson(3,2)",  "cayley_dickson(3,3)",
          "twisted_pair(2,1,1)",  "frobenius_vector_space(2,2,1,identity)",
          "frobenius_vector_space(2,2,2,swap)"};
}

GalleryItem build(const std::string& family, const std::vector<std::string>& params) {
  auto num = [&](std::size_t i) -> unsigned {
    if (i >= params.size()) throw AlgebraError(ErrorKind::BadParams, family + ": missing parameter");
    unsigned v = 0;
    const auto& s = params[i];
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw AlgebraError(ErrorKind::BadParams, family + ": parameter '" + s + "' is not a number");
    return v;
  };
  auto arity = [&](std::size_t n) {
    if (params.size() != n)
      throw AlgebraError(ErrorKind::BadParams,
                         family + " takes " + std::to_string(n) + " parameter(s)");
  };
  if (family == "cyclic_inversion") return arity(1), cyclic_inversion(num(0));
  if (family == "boolean_group") return arity(1), boolean_group(num(0));
  if (family == "odd_prime_product") return arity(1), odd_prime_product(num(0));
  if (family == "rps_algebra") return arity(0), rps_algebra();
  if (family == "cayley_dickson") return arity(2), cayley_dickson(num(0), num(1));
  if (family == "twisted_pair") return arity(3), twisted_pair(num(0), num(1), num(2));
  if (family == "frobenius_vector_space") {
    arity(4);
    return frobenius_vector_space(num(0), num(1), num(2), params[3]);
  }
  throw AlgebraError(ErrorKind::UnknownId, "unknown gallery item '" + family + "'", {family});
}

GalleryItem build(const std::string& id) {
  const auto open = id.find('(');
  if (open == std::string::npos) return build(id, {});
  if (id.back() != ')') throw AlgebraError(ErrorKind::BadParams, "malformed gallery id '" + id + "'");
  std::vector<std::string> params;
  std::stringstream ss(id.substr(open + 1, id.size() - open - 2));
  for (std::string p; std::getline(ss, p, ',');) params.push_back(p);
  return build(id.substr(0, open), params);
}

// ---------------------------------------------------------------------------
// Claims

namespace {

using Eval = std::pair<bool, std::optional<Witness>>;

Eval from_property(const Property& p) { return {p.holds(), p.witness}; }

class GroupEvaluator {
 public:
  explicit GroupEvaluator(const GroupItem& it) : it_(it) {}
  Eval operator()(const std::string& pred) {
    if (pred == "s_unital") return {sun().s_unital, sun().s_witness};
    if (pred == "weakly_s_unital") return {sun().weakly_s_unital, sun().weak_witness};
    if (pred == "sunitality_equivalence") return {sun().equivalence_consistent, sun().equality_witness};
    if (pred == "chain_not_applicable" || pred == "chain_verified") {
      auto r = ascending_chain_witness(it_.g, 8);
      if (pred == "chain_not_applicable") return {std::holds_alternative<NotApplicable>(r), std::nullopt};
      const auto* c = std::get_if<ChainWitness>(&r);
      return {c && c->verified(), std::nullopt};
    }
    if (pred == "vandermonde") {
      auto r = check_vandermonde(it_.g.group(), it_.pair, 4);
      return {r.passed(), r.vandermonde.witness ? r.vandermonde.witness : r.one_shift.witness};
    }
    if (pred == "horrible_i") return {hor().part_i_passed, hor().part_i_witness};
    if (pred == "horrible_ii")
      return {hor().part_ii_passed && hor().part_ii_checked > 0, hor().part_ii_witness};
    throw AlgebraError(ErrorKind::UnknownId, "unknown predicate " + pred);
  }

 private:
  const SUnitalityReport& sun() {
    if (!sun_) sun_ = sunitality_report(it_.g);
    return *sun_;
  }
  const HorribleSummary& hor() {
    if (!hor_) hor_ = check_horrible_all(it_.g, it_.pair, 3);
    return *hor_;
  }
  const GroupItem& it_;
  std::optional<SUnitalityReport> sun_;
  std::optional<HorribleSummary> hor_;
};

Eval eval_ring(const RingItem& it, const std::string& pred, std::optional<PropertyReport>& cache) {
  if (!cache) cache = ring_property_report(it.ring);
  const PropertyReport& r = *cache;
  if (pred == "associative") return from_property(r.associative);
  if (pred == "left_distributive") return from_property(r.left_distributive);
  if (pred == "right_distributive") return from_property(r.right_distributive);
  if (pred == "left_unital") return from_property(r.left_unital);
  if (pred == "right_unital") return from_property(r.right_unital);
  if (pred == "s_unital") return from_property(r.s_unital);
  if (pred == "weakly_s_unital") return from_property(r.weakly_s_unital);
  if (pred == "boolean") return from_property(r.boolean);
  if (pred == "dictionary_consistent") return {r.dictionary_consistent, std::nullopt};
  if (pred == "left_identities_match") {
    // (1,s) has index p + s in the (r,s) encoding.
    const unsigned p = static_cast<unsigned>(std::lround(std::sqrt(double(it.ring.order()))));
    ElementSet expected;
    for (Elem s = 0; s < p; ++s) expected.push_back(p + s);
    return {r.left_identities == expected, std::nullopt};
  }
  if (pred == "sigma_ring_endo" || pred == "delta_derivation") {
    auto d = derivation_endo_predicates(LeftModule::regular(it.ring), it.sigma, it.delta, it.sigma, it.delta);
    return from_property(pred == "sigma_ring_endo" ? d.sigma_R_ring_endo : d.delta_R_derivation);
  }
  if (pred == "right_ideal_chain") {
    auto c = ideal_chain(OreRing{it.ring, it.sigma, it.delta}, it.ideal_generators, it.ideal_depth);
    std::optional<Witness> w;
    for (const auto& i : c.ideals)
      if (!i.closed && !w) w = i.witness;
    return {c.strict && c.all_right_ideals(), w};
  }
  throw AlgebraError(ErrorKind::UnknownId, "unknown predicate " + pred);
}

Eval eval_triple(const TripleItem& it, const std::string& pred, std::optional<TripleReport>& cache) {
  if (pred == "phase1" || pred == "phase2") {
    if (!cache) cache = check_triple_associativity(it.triple, it.max_degree, 1u << 21);
    if (pred == "phase1")
      return {cache->phase1(), cache->assoc_witness   ? cache->assoc_witness
                               : cache->sigma_witness ? cache->sigma_witness
                                                      : cache->delta_witness};
    return {cache->phase2_passed && cache->exhaustive, cache->phase2_witness};
  }
  if (pred == "twist_B" || pred == "twist_V") {
    auto r = pred == "twist_B" ? twist_predicates(it.triple.B, it.triple.pair_B) : twist_predicates(it.v, it.v_pair);
    return {r.holds(), r.sigma_witness ? r.sigma_witness : r.delta_witness};
  }
  if (pred == "leibniz_mixed_V") {
    auto r = check_leibniz_mixed(it.v, it.v_pair, 3);
    return {r.passed(), r.leibniz.witness ? r.leibniz.witness : r.mixed.witness};
  }
  if (pred == "vandermonde_V") {
    auto r = check_vandermonde(it.v.group(), it.v_pair, 4);
    return {r.passed(), r.vandermonde.witness ? r.vandermonde.witness : r.one_shift.witness};
  }
  throw AlgebraError(ErrorKind::UnknownId, "unknown predicate " + pred);
}

Eval eval_cd(const CayleyDicksonItem& it, const std::string& pred, std::optional<PropertyReport>& cache) {
  const CayleyDickson& cd = it.algebra;
  if (cd.level() <= 2 && !cache) cache = ring_property_report(cd.table());
  if (pred == "left_distributive" || pred == "right_distributive") {
    auto w = cd.bilinearity_violation();
    bool v = !w;
    if (cache) {
      const auto& p = pred == "left_distributive" ? cache->left_distributive : cache->right_distributive;
      v = v && p.holds();
      if (!w) w = p.witness;
    }
    return {v, w};
  }
  if (pred == "associative") {
    auto w = cd.associator_witness();
    bool v = !w;
    if (cache) {
      // Exhaustive table check and the basis search must agree.
      if (cache->associative.holds() != v) return {!v, cache->associative.witness};
    }
    return {v, w};
  }
  if (pred == "conj_involution" || pred == "conj_antimultiplicative") {
    const FiniteRing R = cd.table();
    for (Elem a = 0; a < R.order(); ++a) {
      const auto za = cd.decode(a);
      if (pred == "conj_involution") {
        if (cd.conj(cd.conj(za)) != za) return {false, Witness{"conj(conj z) != z", {R.group().name(a)}}};
        continue;
      }
      for (Elem b = 0; b < R.order(); ++b) {
        const auto zb = cd.decode(b);
        if (cd.conj(cd.mul(za, zb)) != cd.mul(cd.conj(zb), cd.conj(za)))
          return {false, Witness{"conj(zw) != conj(w)conj(z)", {R.group().name(a), R.group().name(b)}}};
      }
    }
    return {true, std::nullopt};
  }
  throw AlgebraError(ErrorKind::UnknownId, "unknown predicate " + pred);
}

}  // namespace

bool GalleryReport::passed() const noexcept {
  return std::all_of(results.begin(), results.end(), [](const ClaimResult& r) { return r.passed(); });
}

GalleryReport verify_all(const GalleryItem& item) {
  GalleryReport rep{item.id, {}};
  std::optional<PropertyReport> props;
  std::optional<TripleReport> triple;
  std::optional<GroupEvaluator> group;
  for (const auto& claim : item.claims) {
    Eval e = std::visit(
        [&](const auto& s) -> Eval {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, GroupItem>) {
            if (!group) group.emplace(s);
            return (*group)(claim.predicate);
          } else if constexpr (std::is_same_v<T, RingItem>) {
            return eval_ring(s, claim.predicate, props);
          } else if constexpr (std::is_same_v<T, TripleItem>) {
            return eval_triple(s, claim.predicate, triple);
          } else {
            return eval_cd(s, claim.predicate, props);
          }
        },
        item.structure);
    rep.results.push_back(ClaimResult{claim, e.first, e.second});
  }
  return rep;
}

void require_all(const GalleryItem& item) {
  for (const auto& r : verify_all(item).results)
    if (!r.passed()) {
      std::vector<std::string> tuple{r.claim.predicate, r.claim.source};
      if (r.witness)
        for (const auto& t : r.witness->tuple) tuple.push_back(t);
      throw AlgebraError(ErrorKind::ClaimFailed,
                         item.id + ": claim " + r.claim.predicate + " expected " +
                             (r.claim.expected ? "true" : "false") + " (" + r.claim.source + ")",
                         tuple);
    }
}

std::string emit(const GalleryItem& item) {
  return std::visit(
      [&](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GroupItem>) {
          return serialize(StructureFile{StructureKind::group_with_operators, item.id, GroupFile{s.g, s.pair}});
        } else if constexpr (std::is_same_v<T, RingItem>) {
          return serialize(StructureFile{StructureKind::ring, item.id,
                                         RingFile{s.ring, s.sigma, s.delta, s.ideal_generators}});
        } else if constexpr (std::is_same_v<T, TripleItem>) {
          return serialize(StructureFile{StructureKind::triple, item.id, TripleFile{s.triple}});
        } else {
          if (s.algebra.level() > 2)
            throw AlgebraError(ErrorKind::BadParams,
                               "Cayley-Dickson levels above 2 have no multiplication table to emit");
          return serialize(StructureFile{StructureKind::ring, item.id,
                                         RingFile{s.algebra.table(), std::nullopt, std::nullopt, {}}});
        }
      },
      item.structure);
}

}  // namespace oreext
