#pragma once

#include <optional>
#include <vector>

#include "oracle.hpp"
#include "oreext/ore_extension.hpp"

namespace oreext::oracle {

/// (alpha beta) gamma versus alpha (beta gamma) with the naive Ore action.
inline bool associates(const AssocTriple& t, const std::vector<Elem>& alpha,
                       const std::vector<Elem>& beta, const std::vector<Elem>& gamma) {
  const auto& B = t.B.group();
  const auto& C = t.C;
  auto a_on_b = [&](Elem a, Elem b) { return t.B.act(a, b); };
  auto a_on_c = [&](Elem a, Elem c) { return t.a_on_c().act(a, c); };
  auto b_on_c = [&](Elem b, Elem c) { return t.b_on_c().act(b, c); };
  auto ab = ore_act(B, t.pair_B.sigma, t.pair_B.delta, alpha, t.A().zero, beta, a_on_b);
  auto lhs = ore_act(C, t.pair_C.sigma, t.pair_C.delta, ab, B.zero(), gamma, b_on_c);
  auto bc = ore_act(C, t.pair_C.sigma, t.pair_C.delta, beta, B.zero(), gamma, b_on_c);
  auto rhs = ore_act(C, t.pair_C.sigma, t.pair_C.delta, alpha, t.A().zero, bc, a_on_c);
  return lhs == rhs;
}

struct TripleCounterexample {
  std::vector<Elem> alpha, beta, gamma;
};

/// alpha in {a, a x}, beta = b, gamma = c.
inline std::optional<TripleCounterexample> degree_one_counterexample(const AssocTriple& t) {
  const Elem za = t.A().zero;
  for (unsigned shape = 0; shape < 2; ++shape)
    for (Elem a = 0; a < t.A().size(); ++a)
      for (Elem b = 0; b < t.B.group().order(); ++b)
        for (Elem c = 0; c < t.C.order(); ++c) {
          std::vector<Elem> alpha = shape == 0 ? std::vector<Elem>{a} : std::vector<Elem>{za, a};
          if (!associates(t, alpha, {b}, {c})) return TripleCounterexample{alpha, {b}, {c}};
        }
  return std::nullopt;
}

}  // namespace oreext::oracle
