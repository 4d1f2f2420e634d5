#include "oreext/rings_modules.hpp"

#include <algorithm>

namespace oreext {

namespace {

void check_shape(const Table& t, std::size_t len, std::size_t range, const char* what) {
  if (t.size() != len) throw AlgebraError(ErrorKind::SchemaError, std::string(what) + " has the wrong size");
  for (Elem v : t)
    if (v >= range) throw AlgebraError(ErrorKind::SchemaError, std::string(what) + " has an out-of-range entry");
}

Property yes() { return {Tri::yes, std::nullopt}; }
Property no(Witness w) { return {Tri::no, std::move(w)}; }

}  // namespace

std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "true";
    case Tri::no: return "false";
    case Tri::skipped: return "skipped";
  }
  return "?";
}

FiniteRing FiniteRing::make(FiniteAbelianGroup add, Table mul) {
  check_shape(mul, add.order() * add.order(), add.order(), "multiplication table");
  return FiniteRing(std::move(add), std::move(mul));
}

LeftModule LeftModule::make(FiniteRing ring, FiniteAbelianGroup group, Table act) {
  check_shape(act, ring.order() * group.order(), group.order(), "module action table");
  return LeftModule(std::move(ring), std::move(group), std::move(act));
}

LeftModule LeftModule::regular(const FiniteRing& ring) {
  return LeftModule(ring, ring.group(), ring.mul_table());
}

// ---------------------------------------------------------------------------
// Property reports

PropertyReport module_property_report(const LeftModule& mod) {
  const FiniteRing& R = mod.ring();
  const auto& RG = R.group();
  const auto& M = mod.group();
  const std::size_t nr = R.order(), nm = M.order();
  PropertyReport rep;

  rep.associative = yes();
  for (Elem r = 0; r < nr && rep.associative.holds(); ++r)
    for (Elem s = 0; s < nr && rep.associative.holds(); ++s)
      for (Elem m = 0; m < nm; ++m)
        if (mod.act(R.mul(r, s), m) != mod.act(r, mod.act(s, m))) {
          rep.associative = no({"(rs)m != r(sm)", {RG.name(r), RG.name(s), M.name(m)}});
          break;
        }

  rep.left_distributive = yes();
  for (Elem r = 0; r < nr && rep.left_distributive.holds(); ++r)
    for (Elem m = 0; m < nm && rep.left_distributive.holds(); ++m)
      for (Elem n = 0; n < nm; ++n)
        if (mod.act(r, M.add(m, n)) != M.add(mod.act(r, m), mod.act(r, n))) {
          rep.left_distributive = no({"r(m+n) != rm+rn", {RG.name(r), M.name(m), M.name(n)}});
          break;
        }

  rep.right_distributive = yes();
  for (Elem r = 0; r < nr && rep.right_distributive.holds(); ++r)
    for (Elem s = 0; s < nr && rep.right_distributive.holds(); ++s)
      for (Elem m = 0; m < nm; ++m)
        if (mod.act(RG.add(r, s), m) != M.add(mod.act(r, m), mod.act(s, m))) {
          rep.right_distributive = no({"(r+s)m != rm+sm", {RG.name(r), RG.name(s), M.name(m)}});
          break;
        }

  std::vector<Elem> ids;
  for (Elem e = 0; e < nr; ++e) {
    bool ok = true;
    for (Elem m = 0; m < nm; ++m)
      if (mod.act(e, m) != m) {
        rep.left_unital_refutations.push_back(
            {"em != m", {RG.name(e), M.name(m), M.name(mod.act(e, m))}});
        ok = false;
        break;
      }
    if (ok) ids.push_back(e);
  }
  rep.left_identities = ids;
  rep.left_unital = ids.empty() ? no(rep.left_unital_refutations.front()) : yes();

  rep.s_unital = yes();
  for (Elem m = 0; m < nm; ++m) {
    bool found = false;
    for (Elem r = 0; r < nr && !found; ++r) found = mod.act(r, m) == m;
    if (!found) {
      rep.s_unital = no({"m is not in Rm", {M.name(m)}});
      break;
    }
  }

  rep.weakly_s_unital = yes();
  for (Elem m = 0; m < nm; ++m) {
    const Elem mv[] = {m};
    if (!generated_stable_subgroup(mod.view(), mv, SpanMode::bracket).contains(m)) {
      rep.weakly_s_unital = no({"m is not in [m]", {M.name(m)}});
      break;
    }
  }

  // The same structure read as a group with operators.
  bool zero_kills = true;
  for (Elem m = 0; m < nm; ++m) zero_kills = zero_kills && mod.act(RG.zero(), m) == M.zero();
  std::vector<Table> rows(nr);
  for (Elem r = 0; r < nr; ++r) rows[r] = Table(mod.view().row(r).begin(), mod.view().row(r).end());
  try {
    auto g = GroupWithOperators::validate(
        M, RG.names(), zero_kills ? std::optional<std::string>(RG.name(RG.zero())) : std::nullopt, rows);
    if (!rep.left_distributive.holds()) rep.dictionary_consistent = false;
    if (sunitality_report(g, 0).weakly_s_unital != rep.weakly_s_unital.holds())
      rep.dictionary_consistent = false;
  } catch (const AlgebraError& e) {
    if (rep.left_distributive.holds()) rep.dictionary_consistent = false;
  }
  return rep;
}

PropertyReport ring_property_report(const FiniteRing& R) {
  PropertyReport rep = module_property_report(LeftModule::regular(R));
  const auto& G = R.group();
  std::vector<Elem> ids;
  std::optional<Witness> first;
  for (Elem e = 0; e < R.order(); ++e) {
    bool ok = true;
    for (Elem r = 0; r < R.order() && ok; ++r)
      if (R.mul(r, e) != r) {
        ok = false;
        if (!first) first = Witness{"re != r", {G.name(e), G.name(r), G.name(R.mul(r, e))}};
      }
    if (ok) ids.push_back(e);
  }
  rep.right_identities = ids;
  rep.right_unital = ids.empty() ? no(*first) : yes();
  rep.boolean = yes();
  for (Elem r = 0; r < R.order(); ++r)
    if (R.mul(r, r) != r) {
      rep.boolean = no({"rr != r", {G.name(r)}});
      break;
    }
  return rep;
}

GroupWithOperators module_as_operators(const LeftModule& mod) {
  const auto& RG = mod.ring().group();
  const auto& M = mod.group();
  for (Elem r = 0; r < mod.ring().order(); ++r)
    for (Elem m = 0; m < M.order(); ++m)
      for (Elem n = 0; n < M.order(); ++n)
        if (mod.act(r, M.add(m, n)) != M.add(mod.act(r, m), mod.act(r, n)))
          throw AlgebraError(ErrorKind::NotLeftDistributive, "r(m+n) != rm+rn",
                             {RG.name(r), M.name(m), M.name(n)});
  for (Elem m = 0; m < M.order(); ++m)
    if (mod.act(RG.zero(), m) != M.zero())
      throw AlgebraError(ErrorKind::BadZeroOperator, "0m != 0", {RG.name(RG.zero()), M.name(m)});
  return GroupWithOperators::trusted(M, mod.ring().as_operators(), mod.act_table());
}

GroupPolynomial ore_ring_module_act(const LeftModule& mod, const Table& sigma_R, const Table& delta_R,
                                    const Table& sigma_M, const Table& delta_M,
                                    const GroupPolynomial& alpha, const GroupPolynomial& beta) {
  module_as_operators(LeftModule::regular(mod.ring()));
  const GroupWithOperators g = module_as_operators(mod);
  EndoPair pair = make_endo_pair(mod.group(), sigma_M, delta_M, sigma_R, delta_R, mod.ring().order());
  return ore_act(alpha, beta, g, pair);
}

DerivationReport derivation_endo_predicates(const LeftModule& mod, const Table& sR, const Table& dR,
                                            const Table& sM, const Table& dM) {
  const FiniteRing& R = mod.ring();
  const auto& RG = R.group();
  const auto& M = mod.group();
  const std::size_t nr = R.order(), nm = M.order();
  check_shape(sR, nr, nr, "sigma_R");
  check_shape(dR, nr, nr, "delta_R");
  check_shape(sM, nm, nm, "sigma_M");
  check_shape(dM, nm, nm, "delta_M");
  DerivationReport rep;

  auto additive = [](const FiniteAbelianGroup& G, const Table& f) -> std::optional<Witness> {
    return additivity_violation(G, G, f);
  };

  if (auto w = additive(RG, sR)) {
    rep.sigma_R_ring_endo = no(*w);
  } else {
    rep.sigma_R_ring_endo = yes();
    for (Elem r = 0; r < nr && rep.sigma_R_ring_endo.holds(); ++r)
      for (Elem s = 0; s < nr; ++s)
        if (sR[R.mul(r, s)] != R.mul(sR[r], sR[s])) {
          rep.sigma_R_ring_endo = no({"sigma(rs) != sigma(r)sigma(s)", {RG.name(r), RG.name(s)}});
          break;
        }
  }

  if (auto w = additive(RG, dR)) {
    rep.delta_R_derivation = no(*w);
  } else {
    rep.delta_R_derivation = yes();
    for (Elem r = 0; r < nr && rep.delta_R_derivation.holds(); ++r)
      for (Elem s = 0; s < nr; ++s)
        if (dR[R.mul(r, s)] != RG.add(R.mul(sR[r], dR[s]), R.mul(dR[r], s))) {
          rep.delta_R_derivation =
              no({"delta(rs) != sigma(r)delta(s) + delta(r)s", {RG.name(r), RG.name(s)}});
          break;
        }
  }

  rep.sigma_M_twisted = yes();
  rep.delta_M_derivation = yes();
  if (auto w = additive(M, sM)) rep.sigma_M_twisted = no(*w);
  if (auto w = additive(M, dM)) rep.delta_M_derivation = no(*w);
  for (Elem r = 0; r < nr; ++r)
    for (Elem m = 0; m < nm; ++m) {
      const Elem rm = mod.act(r, m);
      if (rep.sigma_M_twisted.holds() && sM[rm] != mod.act(sR[r], sM[m]))
        rep.sigma_M_twisted = no({"sigma_M(rm) != sigma_R(r)sigma_M(m)", {RG.name(r), M.name(m)}});
      if (rep.delta_M_derivation.holds() &&
          dM[rm] != M.add(mod.act(sR[r], dM[m]), mod.act(dR[r], m)))
        rep.delta_M_derivation =
            no({"delta_M(rm) != sigma_R(r)delta_M(m) + delta_R(r)m", {RG.name(r), M.name(m)}});
    }
  return rep;
}

Table adjoint_derivation(const FiniteRing& R, Elem v) {
  Table t(R.order());
  for (Elem x = 0; x < R.order(); ++x) t[x] = R.group().sub(R.mul(v, x), R.mul(x, v));
  return t;
}

// ---------------------------------------------------------------------------
// Ore rings and right ideals

GroupPolynomial ore_ring_product(const OreRing& o, const GroupPolynomial& p, const GroupPolynomial& q) {
  const auto& G = o.ring.group();
  if (p.is_zero() || q.is_zero()) return GroupPolynomial(PolySort::overB);
  const auto lp = static_cast<std::size_t>(p.degree()) + 1;
  const auto lq = static_cast<std::size_t>(q.degree()) + 1;
  PiCalculus pi(G, o.sigma, o.delta);
  pi.ensure(static_cast<unsigned>(lp - 1));
  std::vector<Elem> out(lp + lq - 1, G.zero());
  ore_act_dense(o.ring.left_action(), pi, p.dense(G.zero(), lp), G.zero(), q.dense(G.zero(), lq), out);
  return GroupPolynomial::from_dense(out, G.zero(), PolySort::overB);
}

RightIdealReport right_ideal_slice_check(const OreRing& o, const std::vector<GroupPolynomial>& generators,
                                         unsigned D) {
  const auto& G = o.ring.group();
  const Elem zero = G.zero();
  PolySubgroup span(G, D);
  for (const auto& g : generators) {
    if (g.degree() > static_cast<int>(D))
      throw AlgebraError(ErrorKind::DegreeTooHigh, "generator degree exceeds the bound",
                         {std::to_string(g.degree()), std::to_string(D)});
    span.insert(g.dense(zero, D + 1));
  }
  PiCalculus pi(G, o.sigma, o.delta);
  pi.ensure(D);

  RightIdealReport rep;
  std::vector<Elem> pr(D + 1);
  for (const auto& p : span.elements(1u << 16)) {
    for (Elem r = 0; r < o.ring.order(); ++r) {
      // p r has degree <= deg p <= D.
      std::fill(pr.begin(), pr.end(), zero);
      const Elem rv[] = {r};
      ore_act_dense(o.ring.left_action(), pi, p, zero, rv, pr);
      int deg = -1;
      for (unsigned t = 0; t <= D; ++t)
        if (pr[t] != zero) deg = static_cast<int>(t);
      for (unsigned k = 0; k <= D + 1; ++k) {
        ++rep.products_checked;
        bool inside;
        DensePoly shifted(D + 1, zero);
        if (deg < 0) {
          inside = true;
        } else if (deg + static_cast<int>(k) > static_cast<int>(D)) {
          inside = false;
        } else {
          for (int t = 0; t <= deg; ++t) shifted[t + k] = pr[t];
          inside = span.contains(shifted);
        }
        if (!inside) {
          std::vector<Elem> full(D + 2 + D, zero);
          for (int t = 0; t <= deg; ++t) full[t + k] = pr[t];
          rep.closed = false;
          rep.witness = Witness{"p (r x^k) leaves the span",
                                {format_dense(p, zero, G.names()), G.name(r), std::to_string(k),
                                 format_dense(full, zero, G.names())}};
          return rep;
        }
      }
    }
  }
  return rep;
}

bool IdealChainReport::all_right_ideals() const noexcept {
  return std::all_of(ideals.begin(), ideals.end(), [](const RightIdealReport& r) { return r.closed; });
}

IdealChainReport ideal_chain(const OreRing& o, std::span<const Elem> coefficient_generators, unsigned D) {
  const auto& G = o.ring.group();
  const Elem zero = G.zero();
  IdealChainReport rep;
  rep.coefficients = additive_span(G, coefficient_generators);
  if (rep.coefficients.size() == 1)
    throw AlgebraError(ErrorKind::BadParams, "the coefficient subgroup is {0}");
  const Elem s = *std::find_if(rep.coefficients.members.begin(), rep.coefficients.members.end(),
                               [&](Elem e) { return e != zero; });

  std::vector<GroupPolynomial> gens;
  std::vector<PolySubgroup> spans;
  for (unsigned n = 0; n <= D; ++n) {
    for (Elem c : coefficient_generators)
      if (c != zero) gens.push_back(GroupPolynomial::monomial(c, n, zero, PolySort::overB));
    rep.ideals.push_back(right_ideal_slice_check(o, gens, D));
    PolySubgroup span(G, D);
    for (const auto& g : gens) span.insert(g.dense(zero, D + 1));
    spans.push_back(std::move(span));
  }
  rep.strict = true;
  for (unsigned n = 0; n < D; ++n) {
    auto sep = GroupPolynomial::monomial(s, n + 1, zero, PolySort::overB);
    const auto v = sep.dense(zero, D + 1);
    rep.strict = rep.strict && spans[n].subset_of(spans[n + 1]) && spans[n + 1].contains(v) &&
                 !spans[n].contains(v);
    rep.separators.push_back(std::move(sep));
  }
  return rep;
}

std::optional<IdentityReport> formal_collapse_check(const LeftModule& mod, const Table& sigma_R,
                                                    const Table& delta_R, unsigned max_index) {
  const FiniteRing& R = mod.ring();
  const auto& RG = R.group();
  const auto& M = mod.group();
  for (Elem r = 0; r < R.order(); ++r)
    for (Elem s = 0; s < R.order(); ++s)
      for (Elem m = 0; m < M.order(); ++m)
        if (mod.act(RG.add(r, s), m) != M.add(mod.act(r, m), mod.act(s, m))) return std::nullopt;

  EndoPair words_only{{}, {}, sigma_R, delta_R};
  IdentityReport rep;
  for (unsigned len = 0; len <= max_index; ++len)
    for (unsigned k = 0; k <= len; ++k)
      for (Elem a = 0; a < R.order(); ++a) {
        const auto values = evaluate_words(formal_pi(len, k, a), words_only);
        Elem ring_sum = RG.zero();
        for (Elem v : values) ring_sum = RG.add(ring_sum, v);
        for (Elem c = 0; c < M.order(); ++c) {
          Elem module_sum = M.zero();
          for (Elem v : values) module_sum = M.add(module_sum, mod.act(v, c));
          ++rep.checks;
          if (mod.act(ring_sum, c) != module_sum) {
            rep.passed = false;
            rep.witness = Witness{"formal sum does not collapse at (a, c, m, k)",
                                  {RG.name(a), M.name(c), std::to_string(len), std::to_string(k)}};
            return rep;
          }
        }
      }
  return rep;
}

}  // namespace oreext
