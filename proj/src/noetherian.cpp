#include "oreext/noetherian.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "oreext/parallel.hpp"

namespace oreext {

// ---------------------------------------------------------------------------
// PolySubgroup

PolySubgroup::PolySubgroup(FiniteAbelianGroup group, unsigned D)
    : group_(std::move(group)), D_(D), rep_(D + 1, std::vector<DensePoly>(group_.order())) {
  for (unsigned d = 0; d <= D_; ++d) rep_[d][group_.zero()] = DensePoly(D_ + 1, group_.zero());
}

void PolySubgroup::sub_into(DensePoly& v, const DensePoly& w) const {
  for (unsigned i = 0; i <= D_; ++i) v[i] = group_.sub(v[i], w[i]);
}

// Strips leading terms while they lie in L_d. On return `stuck` is the degree
// whose coefficient is not in L_d, or D_ + 1 when v reduced to zero.
DensePoly PolySubgroup::reduce(DensePoly v, unsigned& stuck) const {
  const Elem zero = group_.zero();
  for (unsigned d = D_ + 1; d-- > 0;) {
    if (v[d] == zero) continue;
    const DensePoly& r = rep_[d][v[d]];
    if (r.empty()) {
      stuck = d;
      return v;
    }
    sub_into(v, r);
  }
  stuck = D_ + 1;
  return v;
}

bool PolySubgroup::contains(const DensePoly& v) const {
  if (v.size() != D_ + 1) throw AlgebraError(ErrorKind::BadParams, "vector length does not match the slice");
  unsigned stuck = 0;
  reduce(v, stuck);
  return stuck == D_ + 1;
}

bool PolySubgroup::insert(const DensePoly& v0) {
  if (v0.size() != D_ + 1) throw AlgebraError(ErrorKind::BadParams, "vector length does not match the slice");
  bool grew = false;
  std::vector<DensePoly> pending{v0};
  while (!pending.empty()) {
    DensePoly v = std::move(pending.back());
    pending.pop_back();
    unsigned d = 0;
    v = reduce(std::move(v), d);
    if (d == D_ + 1) continue;
    grew = true;
    gens_.push_back(v);
    auto& reps = rep_[d];
    std::vector<Elem> old;
    std::vector<char> in_old(reps.size(), 0);
    for (Elem l = 0; l < reps.size(); ++l)
      if (!reps[l].empty()) {
        old.push_back(l);
        in_old[l] = 1;
      }
    // Adjoin the cosets l + k v until k v lands in the old L_d.
    DensePoly kv = v;
    while (!in_old[kv[d]]) {
      for (Elem l : old) {
        DensePoly r = reps[l];
        for (unsigned t = 0; t <= D_; ++t) r[t] = group_.add(r[t], kv[t]);
        reps[r[d]] = std::move(r);
      }
      for (unsigned t = 0; t <= D_; ++t) kv[t] = group_.add(kv[t], v[t]);
    }
    // kv = m v has leading value in the old L_d; the difference is a relation
    // of lower degree that must also be present.
    DensePoly rel = kv;
    sub_into(rel, reps[kv[d]]);
    pending.push_back(std::move(rel));
  }
  return grew;
}

ElementSet PolySubgroup::leading(unsigned d) const {
  ElementSet out;
  for (Elem l = 0; l < rep_.at(d).size(); ++l)
    if (!rep_[d][l].empty()) out.push_back(l);
  return out;
}

bool PolySubgroup::leading_contains(unsigned d, Elem c) const { return !rep_.at(d).at(c).empty(); }

const DensePoly& PolySubgroup::representative(unsigned d, Elem c) const {
  const DensePoly& r = rep_.at(d).at(c);
  if (r.empty()) throw AlgebraError(ErrorKind::BadParams, "no representative for this leading value");
  return r;
}

std::uint64_t PolySubgroup::size() const noexcept {
  std::uint64_t total = 1;
  for (const auto& reps : rep_) {
    std::uint64_t n = 0;
    for (const auto& r : reps) n += !r.empty();
    if (total > UINT64_MAX / n) return UINT64_MAX;
    total *= n;
  }
  return total;
}

bool PolySubgroup::subset_of(const PolySubgroup& other) const {
  if (D_ != other.D_) return false;
  return std::all_of(gens_.begin(), gens_.end(), [&](const DensePoly& g) { return other.contains(g); });
}

bool operator==(const PolySubgroup& a, const PolySubgroup& b) {
  return a.subset_of(b) && b.subset_of(a);
}

std::vector<DensePoly> PolySubgroup::elements(std::size_t limit) const {
  if (size() > limit) throw AlgebraError(ErrorKind::BadParams, "slice is too large to enumerate");
  std::vector<DensePoly> out{DensePoly(D_ + 1, group_.zero())};
  for (unsigned d = 0; d <= D_; ++d) {
    std::vector<DensePoly> next;
    for (const auto& r : rep_[d]) {
      if (r.empty()) continue;
      for (const auto& base : out) {
        DensePoly s = base;
        for (unsigned t = 0; t <= D_; ++t) s[t] = group_.add(s[t], r[t]);
        next.push_back(std::move(s));
      }
    }
    out = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monomial actions and slices

namespace {

struct TupleHash {
  std::size_t operator()(const MonomialTuple& t) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (const auto& table : t)
      for (Elem e : table) h = (h ^ e) * 1099511628211ull;
    return h;
  }
};

}  // namespace

std::vector<MonomialTuple> monomial_tuples(const FiniteAbelianGroup& group, const EndoPair& pair,
                                           unsigned D, std::size_t guard) {
  const std::size_t n = group.order();
  const Table zero(n, group.zero());
  MonomialTuple cur(D + 1, zero);
  cur[0] = identity_map(n);
  std::vector<MonomialTuple> out;
  std::unordered_set<MonomialTuple, TupleHash> seen;
  while (seen.insert(cur).second) {
    if (out.size() >= guard)
      throw AlgebraError(ErrorKind::BadParams, "monomial action tuples do not repeat within the guard");
    out.push_back(cur);
    MonomialTuple next(D + 1, zero);
    for (unsigned j = 0; j <= D; ++j)
      for (Elem b = 0; b < n; ++b) {
        Elem v = cur[j][pair.delta[b]];
        if (j >= 1) v = group.add(v, cur[j - 1][pair.sigma[b]]);
        next[j][b] = v;
      }
    cur = std::move(next);
  }
  return out;
}

DensePoly act_monomial_truncated(const GroupWithOperators& g, const MonomialTuple& tuple, Elem a,
                                 const DensePoly& v) {
  const auto& B = g.group();
  const std::size_t len = v.size();
  DensePoly out(len, B.zero());
  if (a == g.ops().zero) return out;
  const auto row = g.row(a);
  for (std::size_t j = 0; j < len; ++j) {
    if (v[j] == B.zero()) continue;
    for (std::size_t l = 0; l + j < len && l < tuple.size(); ++l) {
      const Elem x = tuple[l][v[j]];
      if (x != B.zero()) out[l + j] = B.add(out[l + j], row[x]);
    }
  }
  return out;
}

SlicedStableSubgroup slice_closure(const GroupWithOperators& g, const EndoPair& pair,
                                   const std::vector<GroupPolynomial>& generators, unsigned D) {
  return slice_closure(g, monomial_tuples(g.group(), pair, D), generators, D);
}

SlicedStableSubgroup slice_closure(const GroupWithOperators& g,
                                   const std::vector<MonomialTuple>& tuples,
                                   const std::vector<GroupPolynomial>& generators, unsigned D) {
  const Elem zero = g.group().zero();
  PolySubgroup slice(g.group(), D);
  for (const auto& p : generators) {
    if (p.degree() > static_cast<int>(D))
      throw AlgebraError(ErrorKind::DegreeTooHigh, "generator degree exceeds the slice bound",
                         {std::to_string(p.degree()), std::to_string(D)});
    slice.insert(p.dense(zero, D + 1));
  }
  // Each generator of the additive subgroup is pushed through every monomial
  // operator; newly created generators are processed in turn.
  for (std::size_t next = 0; next < slice.generators().size(); ++next) {
    const DensePoly v = slice.generators()[next];
    for (const auto& tuple : tuples)
      for (Elem a = 0; a < g.num_ops(); ++a) {
        if (a == g.ops().zero) continue;
        slice.insert(act_monomial_truncated(g, tuple, a, v));
      }
  }
  return SlicedStableSubgroup{D, std::move(slice), generators};
}

std::optional<Witness> slice_stability_violation(const GroupWithOperators& g,
                                                 const std::vector<MonomialTuple>& tuples,
                                                 const PolySubgroup& slice) {
  for (const auto& v : slice.generators())
    for (std::size_t k = 0; k < tuples.size(); ++k)
      for (Elem a = 0; a < g.num_ops(); ++a)
        if (!slice.contains(act_monomial_truncated(g, tuples[k], a, v)))
          return Witness{"(a x^k) p leaves the slice",
                         {g.ops().names[a], std::to_string(k),
                          format_dense(v, g.group().zero(), g.group().names())}};
  return std::nullopt;
}

GroupPolynomial beta_projection(const GroupPolynomial& p, unsigned n, Elem zero) {
  return GroupPolynomial::monomial(p.coeff(n, zero), n, zero, p.sort());
}

// ---------------------------------------------------------------------------
// Lemma checks

namespace {

Elem sigma_power(const EndoPair& pair, unsigned i, Elem b) {
  for (unsigned t = 0; t < i; ++t) b = pair.sigma[b];
  return b;
}

HorribleReport horrible_impl(const GroupWithOperators& g, const EndoPair& pair, const PiCalculus& pi,
                             const std::vector<MonomialTuple>& tuples, Elem b, unsigned i,
                             unsigned j, unsigned k, bool with_part_ii) {
  const auto& B = g.group();
  const Elem zero = B.zero();
  const unsigned top = i + j;
  HorribleReport r;

  // (A x^i)(b x^j) as dense vectors of length i+j+1, then k rounds of constant operators.
  std::set<DensePoly> polys;
  DensePoly alpha(i + 1, g.ops().zero), beta(j + 1, zero);
  beta[j] = b;
  for (Elem a = 0; a < g.num_ops(); ++a) {
    alpha[i] = a;
    DensePoly out(top + 1, zero);
    ore_act_dense(g.view(), pi, alpha, g.ops().zero, beta, out);
    polys.insert(std::move(out));
  }
  for (unsigned round = 0; round < k; ++round) {
    std::set<DensePoly> next;
    for (const auto& p : polys)
      for (Elem a = 0; a < g.num_ops(); ++a) {
        DensePoly q(p.size());
        for (std::size_t t = 0; t < p.size(); ++t) q[t] = g.act(a, p[t]);
        next.insert(std::move(q));
      }
    polys = std::move(next);
  }
  std::vector<Elem> lhs;
  for (const auto& p : polys) lhs.push_back(p[top]);
  r.lhs = make_set(std::move(lhs));
  const Elem s = sigma_power(pair, i, b);
  const Elem sv[] = {s};
  r.rhs = operator_images(g.view(), sv, k + 1);
  r.part_i = r.lhs == r.rhs;

  if (with_part_ii) {
    const Subgroup br = generated_stable_subgroup(g.view(), sv, SpanMode::bracket);
    if (br.contains(s)) {
      std::vector<GroupPolynomial> gens;
      for (Elem a = 0; a < g.num_ops(); ++a) {
        alpha[i] = a;
        DensePoly out(top + 1, zero);
        ore_act_dense(g.view(), pi, alpha, g.ops().zero, beta, out);
        gens.push_back(GroupPolynomial::from_dense(out, zero, PolySort::overB));
      }
      // Slices of degree <= i+j are exact, so L_(i+j) is the degree-(i+j) projection.
      const auto slice = slice_closure(g, tuples, gens, top);
      r.part_ii = slice.slice.leading_contains(top, s);
    }
  }
  return r;
}

}  // namespace

HorribleReport check_horrible_lemma(const GroupWithOperators& g, const EndoPair& pair, Elem b,
                                    unsigned i, unsigned j, unsigned k) {
  PiCalculus pi(g.group(), pair);
  pi.ensure(i);
  return horrible_impl(g, pair, pi, monomial_tuples(g.group(), pair, i + j), b, i, j, k, true);
}

HorribleSummary check_horrible_all(const GroupWithOperators& g, const EndoPair& pair,
                                   unsigned max_index) {
  const auto& B = g.group();
  PiCalculus pi(B, pair);
  pi.ensure(max_index);
  const auto tuples = monomial_tuples(B, pair, 2 * max_index);

  std::vector<HorribleSummary> per(B.order());
  parallel_for(B.order(), [&](std::size_t bi) {
    const auto b = static_cast<Elem>(bi);
    HorribleSummary& s = per[bi];
    for (unsigned i = 0; i <= max_index; ++i)
      for (unsigned j = 0; j <= max_index; ++j)
        for (unsigned k = 0; k <= max_index; ++k) {
          const auto r = horrible_impl(g, pair, pi, tuples, b, i, j, k, k == 0);
          ++s.part_i_checked;
          if (!r.part_i && s.part_i_passed) {
            s.part_i_passed = false;
            s.part_i_witness = Witness{"Lemma part (i) fails at (b, i, j, k)",
                                       {B.name(b), std::to_string(i), std::to_string(j), std::to_string(k)}};
          }
          if (k != 0) continue;
          if (!r.part_ii) {
            ++s.part_ii_skipped;
          } else {
            ++s.part_ii_checked;
            if (!*r.part_ii && s.part_ii_passed) {
              s.part_ii_passed = false;
              s.part_ii_witness = Witness{"Lemma part (ii) fails at (b, i, j)",
                                          {B.name(b), std::to_string(i), std::to_string(j)}};
            }
          }
        }
  });

  HorribleSummary out;
  for (const auto& s : per) {
    out.part_i_checked += s.part_i_checked;
    out.part_ii_checked += s.part_ii_checked;
    out.part_ii_skipped += s.part_ii_skipped;
    if (!s.part_i_passed && out.part_i_passed) {
      out.part_i_passed = false;
      out.part_i_witness = s.part_i_witness;
    }
    if (!s.part_ii_passed && out.part_ii_passed) {
      out.part_ii_passed = false;
      out.part_ii_witness = s.part_ii_witness;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Leading coefficients

LeadingCoeffReport leading_coeff_subgroup(const GroupWithOperators& g, const EndoPair& pair,
                                          const SlicedStableSubgroup& p) {
  const auto& B = g.group();
  const std::size_t n = B.order();
  std::vector<char> hit(n, 0);
  for (Elem b = 0; b < n; ++b) hit[pair.sigma[b]] = 1;
  for (Elem b = 0; b < n; ++b)
    if (!hit[b]) throw AlgebraError(ErrorKind::HypothesisNotMet, "sigma is not surjective", {B.name(b)});
  for (Elem a = 0; a < g.num_ops(); ++a)
    for (Elem b = 0; b < n; ++b) {
      bool found = false;
      for (Elem a2 = 0; a2 < g.num_ops() && !found; ++a2) found = g.act(a2, pair.sigma[b]) == pair.sigma[g.act(a, b)];
      if (!found)
        throw AlgebraError(ErrorKind::HypothesisNotMet, "sigma is not A-stable", {g.ops().names[a], B.name(b)});
    }

  std::vector<Elem> q;
  for (Elem b = 0; b < n; ++b) {
    Elem s = b;
    for (unsigned d = 0; d <= p.D; ++d) {
      if (p.slice.leading_contains(d, s)) {
        q.push_back(b);
        break;
      }
      s = pair.sigma[s];
    }
  }
  LeadingCoeffReport r;
  r.q.members = make_set(std::move(q));
  auto sub = subgroup_violation(B, r.q.members);
  auto stab = stability_violation(g.view(), r.q.members);
  r.is_subgroup = !sub;
  r.is_stable = !stab;
  r.witness = sub ? sub : stab;
  return r;
}

// ---------------------------------------------------------------------------
// Chains

std::variant<ChainWitness, NotApplicable> ascending_chain_witness(const GroupWithOperators& g,
                                                                  unsigned length) {
  if (length == 0) throw AlgebraError(ErrorKind::BadParams, "chain length must be positive");
  const auto& B = g.group();
  std::optional<Elem> c;
  Subgroup bracket;
  for (Elem b = 0; b < B.order() && !c; ++b) {
    const Elem bv[] = {b};
    bracket = generated_stable_subgroup(g, bv, SpanMode::bracket);
    if (!bracket.contains(b)) c = b;
  }
  if (!c) return NotApplicable{};

  Quotient q = quotient(g, bracket);
  const GroupWithOperators& Dq = q.structure;
  const Elem cbar = q.projection[*c];
  const Elem cv[] = {cbar};
  Subgroup e = generated_stable_subgroup(Dq, cv, SpanMode::full);

  bool annihilated = true;
  for (Elem a = 0; a < Dq.num_ops(); ++a)
    for (Elem x : e.members) annihilated = annihilated && Dq.act(a, x) == Dq.group().zero();

  const unsigned D = length - 1;
  const auto tuples = monomial_tuples(Dq.group(), plain_pair(Dq), D);
  const Elem zero = Dq.group().zero();
  std::vector<SlicedStableSubgroup> links;
  std::vector<GroupPolynomial> gens;
  for (unsigned n = 0; n < length; ++n) {
    gens.push_back(GroupPolynomial::monomial(cbar, n, zero, PolySort::overB));
    links.push_back(slice_closure(Dq, tuples, gens, D));
  }
  std::vector<GroupPolynomial> separators;
  bool strict = true, stable = true;
  for (unsigned n = 0; n < length; ++n) {
    stable = stable && !slice_stability_violation(Dq, tuples, links[n].slice);
    if (n + 1 < length) {
      auto sep = GroupPolynomial::monomial(cbar, n + 1, zero, PolySort::overB);
      const auto v = sep.dense(zero, D + 1);
      strict = strict && links[n].slice.subset_of(links[n + 1].slice) &&
               links[n + 1].slice.contains(v) && !links[n].slice.contains(v);
      separators.push_back(std::move(sep));
    }
  }
  return ChainWitness{*c,           std::move(bracket),   std::move(q),
                      std::move(e), std::move(links),     std::move(separators),
                      annihilated,  strict,               stable};
}

}  // namespace oreext
