#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oreext/core_algebra.hpp"
#include "oreext/ore_extension.hpp"
#include "oreext/rings_modules.hpp"

namespace oreext::testkit {

struct CorpusEntry {
  std::string name;
  GroupWithOperators g;
  EndoPair pair;
};

/// Groups with operators used across the suites; includes every gallery
/// group, ring and vector-space item.
const std::vector<CorpusEntry>& corpus();

struct TripleCase {
  std::string name;
  AssocTriple triple;
};

/// Triples whose Phase-1 hypotheses hold, coefficient sets of size <= 5.
std::vector<TripleCase> phase1_triples();
/// Associative triples with Ann = {0} whose twist condition is broken.
std::vector<TripleCase> broken_twist_triples();

/// Z/n with multiplication mod n.
FiniteRing zn_ring(unsigned n);

/// Uniform random additive endomorphism of Z/n1 x ... x Z/nk.
Table random_endo(const FiniteAbelianGroup& g, std::span<const unsigned> orders, std::mt19937_64& rng);

/// Companion maps sigma_A = id, delta_A = 0 for a group with operators.
EndoPair with_trivial_companions(const GroupWithOperators& g, Table sigma, Table delta);

}  // namespace oreext::testkit
