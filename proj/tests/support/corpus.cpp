#include "corpus.hpp"

#include <array>

#include "oreext/gallery.hpp"

namespace oreext::testkit {

FiniteRing zn_ring(unsigned n) {
  Table mul(n * n);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) mul[a * n + b] = (a * b) % n;
  return FiniteRing::make(FiniteAbelianGroup::cyclic(n), std::move(mul));
}

Table random_endo(const FiniteAbelianGroup& g, std::span<const unsigned> orders, std::mt19937_64& rng) {
  const std::size_t k = orders.size();
  std::vector<Elem> images(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order() - 1));
    do images[i] = pick(rng);
    while (g.times(orders[i], images[i]) != g.zero());
  }
  Table f(g.order());
  for (Elem e = 0; e < g.order(); ++e) {
    // digits of e, last coordinate fastest
    Elem rest = e, acc = g.zero();
    for (std::size_t i = k; i-- > 0;) {
      acc = g.add(acc, g.times(rest % orders[i], images[i]));
      rest /= orders[i];
    }
    f[e] = acc;
  }
  return f;
}

EndoPair with_trivial_companions(const GroupWithOperators& g, Table sigma, Table delta) {
  return make_endo_pair(g.group(), std::move(sigma), std::move(delta), identity_map(g.num_ops()),
                        Table(g.num_ops(), g.ops().zero), g.num_ops());
}

namespace {

GroupWithOperators multiplication_action(const FiniteRing& r, const std::vector<Elem>& ops) {
  std::vector<std::string> names;
  std::vector<Table> rows;
  for (Elem a : ops) {
    names.push_back(r.group().name(a));
    auto row = r.left_action().row(a);
    rows.emplace_back(row.begin(), row.end());
  }
  return GroupWithOperators::validate(r.group(), names, std::nullopt, rows);
}

GroupWithOperators matrix_action(unsigned p, const std::vector<std::array<unsigned, 4>>& mats) {
  const unsigned orders[] = {p, p};
  auto G = FiniteAbelianGroup::cyclic_product(orders);
  std::vector<std::string> names;
  std::vector<Table> rows;
  for (std::size_t m = 0; m < mats.size(); ++m) {
    const auto& M = mats[m];
    Table row(p * p);
    for (unsigned a = 0; a < p; ++a)
      for (unsigned b = 0; b < p; ++b)
        row[a * p + b] = ((M[0] * a + M[1] * b) % p) * p + (M[2] * a + M[3] * b) % p;
    names.push_back("M" + std::to_string(m + 1));
    rows.push_back(std::move(row));
  }
  return GroupWithOperators::validate(G, names, std::nullopt, rows);
}

Table matrix_map(unsigned p, std::array<unsigned, 4> M) {
  Table t(p * p);
  for (unsigned a = 0; a < p; ++a)
    for (unsigned b = 0; b < p; ++b)
      t[a * p + b] = ((M[0] * a + M[1] * b) % p) * p + (M[2] * a + M[3] * b) % p;
  return t;
}

EndoPair ring_pair(const GroupWithOperators& g, const FiniteRing& r, const Table& s, const Table& d) {
  return make_endo_pair(r.group(), s, d, s, d, g.num_ops());
}

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& id : gallery_default_ids()) {
    auto item = build(id);
    if (auto* gi = std::get_if<GroupItem>(&item.structure)) {
      out.push_back({id, gi->g, gi->pair});
    } else if (auto* ri = std::get_if<RingItem>(&item.structure)) {
      auto g = regular_operators(ri->ring);
      out.push_back({id, g, ring_pair(g, ri->ring, ri->sigma, ri->delta)});
    } else if (auto* ti = std::get_if<TripleItem>(&item.structure)) {
      out.push_back({id, ti->v, ti->v_pair});
    } else if (auto* ci = std::get_if<CayleyDicksonItem>(&item.structure)) {
      if (ci->algebra.level() > 2) continue;
      auto r = ci->algebra.table();
      auto g = regular_operators(r);
      out.push_back({id, g, plain_pair(g)});
    }
  }

  auto f5 = finite_field(5, 1);
  {
    auto g = regular_operators(f5.ring);
    const auto& G = g.group();
    out.push_back({"F5 sigma=2 delta=3", g,
                   with_trivial_companions(g, scalar_map(G, 2), scalar_map(G, 3))});
    // The companions make the twist fail: sigma_B(ab) = 2ab but sigma_A(a) sigma_B(b) = 4ab.
    out.push_back({"F5 sigma=2 broken companions", g,
                   make_endo_pair(G, scalar_map(G, 2), scalar_map(G, 0), scalar_map(G, 2),
                                  Table(5, 0), g.num_ops())});
  }
  for (unsigned n : {3u, 6u}) {
    auto g = GroupWithOperators::zero_action(FiniteAbelianGroup::cyclic(n));
    out.push_back({"Z/" + std::to_string(n) + " zero action", g, plain_pair(g)});
  }
  {
    auto g = GroupWithOperators::zero_action(FiniteAbelianGroup::cyclic(6));
    out.push_back({"Z/6 zero action sigma=5 delta=3", g,
                   make_endo_pair(g.group(), scalar_map(g.group(), 5), scalar_map(g.group(), 3))});
  }
  {
    auto z4 = zn_ring(4);
    auto g = multiplication_action(z4, {1, 3});
    out.push_back({"Z/4 odd residues sigma=3 delta=2", g,
                   with_trivial_companions(g, scalar_map(g.group(), 3), scalar_map(g.group(), 2))});
  }
  {
    auto z8 = zn_ring(8);
    auto g = multiplication_action(z8, {7});
    out.push_back({"Z/8 inversion sigma=3 delta=2", g,
                   with_trivial_companions(g, scalar_map(g.group(), 3), scalar_map(g.group(), 2))});
  }
  {
    auto z9 = zn_ring(9);
    auto g = multiplication_action(z9, {3});
    out.push_back({"Z/9 tripling", g, plain_pair(g)});
  }
  {
    const unsigned orders[] = {2, 4};
    auto G = FiniteAbelianGroup::cyclic_product(orders);
    Table dbl(G.order());
    for (Elem b = 0; b < G.order(); ++b) dbl[b] = G.add(b, b);
    auto g = GroupWithOperators::validate(G, {"d"}, std::nullopt, {dbl});
    out.push_back({"Z/2xZ/4 doubling", g, plain_pair(g)});
  }
  {
    auto g = matrix_action(3, {{1, 1, 0, 1}, {2, 0, 0, 0}});
    out.push_back({"F3^2 matrices", g,
                   make_endo_pair(g.group(), matrix_map(3, {0, 1, 1, 0}), matrix_map(3, {1, 2, 0, 1}))});
  }
  for (auto [p, k] : {std::pair{2u, 2u}, std::pair{3u, 2u}}) {
    auto F = finite_field(p, k);
    auto g = regular_operators(F.ring);
    const auto& G = g.group();
    out.push_back({"F" + std::to_string(F.order()) + " frobenius", g,
                   ring_pair(g, F.ring, F.frobenius, Table(G.order(), G.zero()))});
    if (p == 2) {
      Table d(G.order());
      for (Elem b = 0; b < G.order(); ++b) d[b] = G.sub(b, F.frobenius[b]);
      out.push_back({"F4 frobenius delta=id-sigma", g, ring_pair(g, F.ring, F.frobenius, d)});
    }
  }
  return out;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c = build_corpus();
  return c;
}

std::vector<TripleCase> phase1_triples() {
  std::vector<TripleCase> out;
  auto f5 = finite_field(5, 1).ring;
  const auto& G5 = f5.group();
  auto id5 = identity_map(5), zero5 = Table(5, 0);
  out.push_back({"F5 classical", regular_triple(f5, id5, zero5, id5, zero5)});
  out.push_back({"F5 sigma_C=2 delta_C=3",
                 regular_triple(f5, id5, zero5, scalar_map(G5, 2), scalar_map(G5, 3))});

  auto F4 = finite_field(2, 2);
  auto zero4 = Table(4, F4.ring.group().zero());
  out.push_back({"F4 frobenius", regular_triple(F4.ring, F4.frobenius, zero4, F4.frobenius, zero4)});

  auto z4 = zn_ring(4);
  out.push_back({"Z/4 sigma_C=3 delta_C=2",
                 regular_triple(z4, identity_map(4), Table(4, 0), scalar_map(z4.group(), 3),
                                scalar_map(z4.group(), 2))});

  auto tp = build("twisted_pair(2,1,1)");
  const auto& ri = std::get<RingItem>(tp.structure);
  out.push_back({"twisted_pair(2,1,1) adjoint",
                 regular_triple(ri.ring, ri.sigma, ri.delta, ri.sigma, ri.delta)});

  // F2 x F2 with componentwise product; index 2a + b for (a,b).
  const unsigned orders[] = {2, 2};
  auto G = FiniteAbelianGroup::cyclic_product(orders);
  Table mul(16);
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y) mul[x * 4 + y] = (((x >> 1) & (y >> 1)) << 1) | (x & y & 1);
  auto f2f2 = FiniteRing::make(G, mul);
  Table swap = {0, 2, 1, 3}, d(4);
  for (Elem b = 0; b < 4; ++b) d[b] = G.sub(b, swap[b]);
  out.push_back({"F2xF2 swap delta=id-swap", regular_triple(f2f2, swap, d, swap, d)});
  return out;
}

std::vector<TripleCase> broken_twist_triples() {
  std::vector<TripleCase> out;
  auto f5 = finite_field(5, 1).ring;
  const auto& G5 = f5.group();
  auto id5 = identity_map(5), zero5 = Table(5, 0);
  out.push_back({"F5 sigma_B=2", regular_triple(f5, scalar_map(G5, 2), zero5, id5, zero5)});
  out.push_back({"F5 delta_B=id delta_C=0", regular_triple(f5, id5, id5, id5, zero5)});

  auto F4 = finite_field(2, 2);
  const auto& G4 = F4.ring.group();
  Table d(4);
  for (Elem b = 0; b < 4; ++b) d[b] = G4.sub(b, F4.frobenius[b]);
  out.push_back({"F4 delta_C=0", regular_triple(F4.ring, F4.frobenius, d, F4.frobenius,
                                                Table(4, G4.zero()))});

  auto z4 = zn_ring(4);
  out.push_back({"Z/4 sigma_B=3", regular_triple(z4, scalar_map(z4.group(), 3), Table(4, 0),
                                                 identity_map(4), Table(4, 0))});
  return out;
}

}  // namespace oreext::testkit
