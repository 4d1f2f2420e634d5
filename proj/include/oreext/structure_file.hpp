#pragma once

// JSON structure files. Four kinds share the same building blocks:
//
//   group    {"elements": [...], "add": [[...]], "neg": [...], "zero": id}
//            or {"cyclic_product": [n1, n2, ...]}
//   maps     {"elem": "elem", ...}, total on the domain
//   action   {"op": {"elem": "elem", ...}, ...}; the zero operator's row may be omitted
//
//   group_with_operators: group, operators {"elements", "zero"?}, action,
//                         endo {"sigma", "delta", "sigma_A"?, "delta_A"?}?
//   ring:                 group, mul [[...]], endo {"sigma", "delta"}?, ideal_generators [...]?
//   module:               ring (relative path), group, action,
//                         endo {"sigma_R", "delta_R", "sigma_M", "delta_M"}?
//   triple:               A {"elements", "zero"},
//                         B {group, action, endo {"sigma", "delta", "sigma_A"?, "delta_A"?}},
//                         C {group, action_A, action_B, endo {"sigma", "delta"}}

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oreext/core_algebra.hpp"
#include "oreext/ore_extension.hpp"
#include "oreext/rings_modules.hpp"

namespace oreext {

enum class StructureKind { group_with_operators, ring, module, triple };
std::string_view to_string(StructureKind k);

struct GroupFile {
  GroupWithOperators g;
  std::optional<EndoPair> pair;  // absent: sigma = id, delta = 0
  EndoPair pair_or_plain() const { return pair ? *pair : plain_pair(g); }
};

struct RingFile {
  FiniteRing ring;
  std::optional<Table> sigma;
  std::optional<Table> delta;
  std::vector<Elem> ideal_generators;
};

struct ModuleFile {
  LeftModule module;
  std::string ring_ref;
  std::optional<Table> sigma_R, delta_R, sigma_M, delta_M;
};

struct TripleFile {
  AssocTriple triple;
};

struct StructureFile {
  StructureKind kind;
  std::string name;
  std::variant<GroupFile, RingFile, ModuleFile, TripleFile> payload;
};

/// Throws AlgebraError with SyntaxError (line and column), SchemaError (JSON
/// pointer of the offending field) or SemanticError (first violated axiom with
/// its witness). Module files resolve their ring relative to base_dir.
StructureFile parse_structure_text(std::string_view text, const std::filesystem::path& base_dir = {});
StructureFile parse_structure_file(const std::filesystem::path& path);

/// Pretty-printed JSON with explicit tables. Module files keep their ring reference.
std::string serialize(const StructureFile& file);

}  // namespace oreext
