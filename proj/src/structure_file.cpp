#include "oreext/structure_file.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace oreext {

using json = nlohmann::ordered_json;

std::string_view to_string(StructureKind k) {
  switch (k) {
    case StructureKind::group_with_operators: return "group_with_operators";
    case StructureKind::ring: return "ring";
    case StructureKind::module: return "module";
    case StructureKind::triple: return "triple";
  }
  return "?";
}

namespace {

[[noreturn]] void schema(const std::string& ptr, const std::string& msg) {
  throw AlgebraError(ErrorKind::SchemaError, "at " + (ptr.empty() ? std::string("/") : ptr) + ": " + msg, {ptr});
}

// Re-raises validation failures as SemanticError, keeping the witness.
template <class F>
auto semantic(const std::string& ptr, F&& f) {
  try {
    return f();
  } catch (const AlgebraError& e) {
    if (e.kind() == ErrorKind::SchemaError || e.kind() == ErrorKind::SyntaxError ||
        e.kind() == ErrorKind::SemanticError)
      throw;
    throw AlgebraError(ErrorKind::SemanticError,
                       "at " + ptr + ": " + std::string(to_string(e.kind())) + ": " + e.what(), e.witness());
  }
}

std::string escape_ptr(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

const json& need(const json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.is_object()) schema(ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(ptr, "missing field '" + key + "'");
  return *it;
}

const json* maybe(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string ident(const json& j, const std::string& ptr) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  schema(ptr, "expected an element identifier (string or integer)");
}

std::vector<std::string> ident_list(const json& j, const std::string& ptr) {
  if (!j.is_array()) schema(ptr, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(ident(j[i], ptr + "/" + std::to_string(i)));
  return out;
}

Elem lookup(const std::vector<std::string>& names, const std::string& name, const std::string& ptr) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) schema(ptr, "unknown identifier '" + name + "'");
  return static_cast<Elem>(it - names.begin());
}

FiniteAbelianGroup parse_group(const json& j, const std::string& ptr) {
  if (!j.is_object()) schema(ptr, "expected an object");
  if (const json* cp = maybe(j, "cyclic_product")) {
    if (!cp->is_array() || cp->empty()) schema(ptr + "/cyclic_product", "expected a nonempty array");
    std::vector<unsigned> orders;
    for (std::size_t i = 0; i < cp->size(); ++i) {
      const auto& v = (*cp)[i];
      if (!v.is_number_unsigned() || v.get<unsigned>() == 0)
        schema(ptr + "/cyclic_product/" + std::to_string(i), "expected a positive integer");
      orders.push_back(v.get<unsigned>());
    }
    std::size_t total = 1;
    for (unsigned o : orders) {
      total *= o;
      if (total > 4096) schema(ptr + "/cyclic_product", "groups are limited to 4096 elements");
    }
    return FiniteAbelianGroup::cyclic_product(orders);
  }
  auto names = ident_list(need(j, "elements", ptr), ptr + "/elements");
  const std::size_t n = names.size();
  if (n == 0) schema(ptr + "/elements", "a group needs at least one element");
  const json& add = need(j, "add", ptr);
  if (!add.is_array() || add.size() != n) schema(ptr + "/add", "expected " + std::to_string(n) + " rows");
  std::vector<Elem> addt(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = ptr + "/add/" + std::to_string(r);
    if (!add[r].is_array() || add[r].size() != n) schema(rp, "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c)
      addt[r * n + c] = lookup(names, ident(add[r][c], rp + "/" + std::to_string(c)), rp + "/" + std::to_string(c));
  }
  const json& neg = need(j, "neg", ptr);
  if (!neg.is_array() || neg.size() != n) schema(ptr + "/neg", "expected " + std::to_string(n) + " entries");
  std::vector<Elem> negt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string ip = ptr + "/neg/" + std::to_string(i);
    negt[i] = lookup(names, ident(neg[i], ip), ip);
  }
  const Elem zero = lookup(names, ident(need(j, "zero", ptr), ptr + "/zero"), ptr + "/zero");
  return semantic(ptr, [&] { return FiniteAbelianGroup::from_tables(names, addt, negt, zero); });
}

Table parse_map(const json& j, const std::vector<std::string>& domain, const std::vector<std::string>& codomain,
                const std::string& ptr, std::optional<std::pair<Elem, Elem>> default_entry = std::nullopt) {
  if (!j.is_object()) schema(ptr, "expected an object mapping identifiers to identifiers");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(domain.begin(), domain.end(), it.key()) == domain.end())
      schema(ptr + "/" + escape_ptr(it.key()), "unknown identifier '" + it.key() + "'");
  Table t(domain.size());
  for (Elem i = 0; i < domain.size(); ++i) {
    const std::string ip = ptr + "/" + escape_ptr(domain[i]);
    auto it = j.find(domain[i]);
    if (it == j.end()) {
      if (default_entry && default_entry->first == i) {
        t[i] = default_entry->second;
        continue;
      }
      schema(ptr, "missing entry for '" + domain[i] + "'");
    }
    t[i] = lookup(codomain, ident(*it, ip), ip);
  }
  return t;
}

// Rows of an action; the row of `zero_op` may be omitted and then acts as zero.
std::vector<Table> parse_action(const json& j, const std::vector<std::string>& ops, std::optional<Elem> zero_op,
                                const FiniteAbelianGroup& target, const std::string& ptr) {
  if (!j.is_object()) schema(ptr, "expected an object keyed by operator");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(ops.begin(), ops.end(), it.key()) == ops.end())
      schema(ptr + "/" + escape_ptr(it.key()), "unknown operator '" + it.key() + "'");
  std::vector<Table> rows(ops.size());
  for (Elem a = 0; a < ops.size(); ++a) {
    auto it = j.find(ops[a]);
    if (it == j.end()) {
      if (zero_op && *zero_op == a) {
        rows[a] = Table(target.order(), target.zero());
        continue;
      }
      schema(ptr, "missing row for operator '" + ops[a] + "'");
    }
    const std::string rp = ptr + "/" + escape_ptr(ops[a]);
    if (!it->is_object()) schema(rp, "expected an object");
    for (auto e = it->begin(); e != it->end(); ++e)
      if (!target.find(e.key())) schema(rp + "/" + escape_ptr(e.key()), "unknown element '" + e.key() + "'");
    rows[a].resize(target.order());
    for (Elem b = 0; b < target.order(); ++b) {
      auto cell = it->find(target.name(b));
      if (cell == it->end())
        schema(rp, "missing cell (" + ops[a] + ", " + target.name(b) + ")");
      const std::string cp = rp + "/" + escape_ptr(target.name(b));
      rows[a][b] = lookup(target.names(), ident(*cell, cp), cp);
    }
  }
  return rows;
}

struct Ops {
  std::vector<std::string> names;  // as declared
  std::optional<std::string> zero;
};

Ops parse_ops(const json& j, const std::string& ptr) {
  Ops o;
  o.names = ident_list(need(j, "elements", ptr), ptr + "/elements");
  if (const json* z = maybe(j, "zero")) {
    o.zero = ident(*z, ptr + "/zero");
    lookup(o.names, *o.zero, ptr + "/zero");
  }
  for (std::size_t i = 0; i < o.names.size(); ++i)
    for (std::size_t k = i + 1; k < o.names.size(); ++k)
      if (o.names[i] == o.names[k]) schema(ptr + "/elements", "duplicate operator '" + o.names[i] + "'");
  return o;
}

// Validated group with operators from {operators, action} plus a group.
GroupWithOperators build_operators(const FiniteAbelianGroup& group, const Ops& ops, const json& action,
                                   const std::string& action_ptr) {
  std::optional<Elem> zero_idx;
  if (ops.zero) zero_idx = lookup(ops.names, *ops.zero, action_ptr);
  auto rows = parse_action(action, ops.names, zero_idx, group, action_ptr);
  return semantic(action_ptr, [&] { return GroupWithOperators::validate(group, ops.names, ops.zero, rows); });
}

std::optional<EndoPair> parse_endo(const json* endo, const GroupWithOperators& g, const std::string& ptr,
                                   bool companions_allowed) {
  if (!endo) return std::nullopt;
  const auto& B = g.group();
  Table sigma = parse_map(need(*endo, "sigma", ptr), B.names(), B.names(), ptr + "/sigma");
  Table delta = parse_map(need(*endo, "delta", ptr), B.names(), B.names(), ptr + "/delta");
  std::optional<Table> sA, dA;
  const json* jsA = maybe(*endo, "sigma_A");
  const json* jdA = maybe(*endo, "delta_A");
  if ((jsA || jdA) && !companions_allowed) schema(ptr, "companion maps are not allowed here");
  if (bool(jsA) != bool(jdA)) schema(ptr, "sigma_A and delta_A must be given together");
  if (jsA) {
    const auto zero = std::make_pair(g.ops().zero, g.ops().zero);
    sA = parse_map(*jsA, g.ops().names, g.ops().names, ptr + "/sigma_A", zero);
    dA = parse_map(*jdA, g.ops().names, g.ops().names, ptr + "/delta_A", zero);
  }
  return semantic(ptr, [&] { return make_endo_pair(B, sigma, delta, sA, dA, g.num_ops()); });
}

Table flatten(const std::vector<Table>& rows) {
  Table out;
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::optional<Table> additive_map(const json* j, const FiniteAbelianGroup& G, const std::string& ptr) {
  if (!j) return std::nullopt;
  Table t = parse_map(*j, G.names(), G.names(), ptr);
  if (auto w = additivity_violation(G, G, t))
    throw AlgebraError(ErrorKind::SemanticError, "at " + ptr + ": map is not additive", w->tuple);
  return t;
}

StructureFile parse_json(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) schema("", "expected an object");
  const json& kind = need(doc, "kind", "");
  if (!kind.is_string()) schema("/kind", "expected a string");
  const std::string k = kind.get<std::string>();
  std::string name;
  if (const json* n = maybe(doc, "name")) {
    if (!n->is_string()) schema("/name", "expected a string");
    name = n->get<std::string>();
  }

  if (k == "group_with_operators") {
    auto group = parse_group(need(doc, "group", ""), "/group");
    Ops ops = parse_ops(need(doc, "operators", ""), "/operators");
    auto g = build_operators(group, ops, need(doc, "action", ""), "/action");
    auto pair = parse_endo(maybe(doc, "endo"), g, "/endo", true);
    return {StructureKind::group_with_operators, name, GroupFile{std::move(g), std::move(pair)}};
  }

  if (k == "ring") {
    auto group = parse_group(need(doc, "group", ""), "/group");
    const std::size_t n = group.order();
    const json& mul = need(doc, "mul", "");
    if (!mul.is_array() || mul.size() != n) schema("/mul", "expected " + std::to_string(n) + " rows");
    Table m(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      const std::string rp = "/mul/" + std::to_string(r);
      if (!mul[r].is_array() || mul[r].size() != n) schema(rp, "expected " + std::to_string(n) + " entries");
      for (std::size_t c = 0; c < n; ++c) {
        const std::string cp = rp + "/" + std::to_string(c);
        m[r * n + c] = lookup(group.names(), ident(mul[r][c], cp), cp);
      }
    }
    RingFile rf{FiniteRing::make(group, std::move(m)), std::nullopt, std::nullopt, {}};
    if (const json* endo = maybe(doc, "endo")) {
      rf.sigma = additive_map(&need(*endo, "sigma", "/endo"), group, "/endo/sigma");
      rf.delta = additive_map(&need(*endo, "delta", "/endo"), group, "/endo/delta");
    }
    if (const json* ig = maybe(doc, "ideal_generators")) {
      const auto ids = ident_list(*ig, "/ideal_generators");
      for (std::size_t i = 0; i < ids.size(); ++i)
        rf.ideal_generators.push_back(lookup(group.names(), ids[i], "/ideal_generators/" + std::to_string(i)));
    }
    return {StructureKind::ring, name, std::move(rf)};
  }

  if (k == "module") {
    const json& ref = need(doc, "ring", "");
    if (!ref.is_string()) schema("/ring", "expected a relative path");
    const std::string ring_ref = ref.get<std::string>();
    StructureFile ring_file = [&] {
      try {
        return parse_structure_file(base_dir / ring_ref);
      } catch (const AlgebraError& e) {
        throw AlgebraError(e.kind(), "in ring file '" + ring_ref + "': " + e.what(), e.witness());
      }
    }();
    if (ring_file.kind != StructureKind::ring) schema("/ring", "'" + ring_ref + "' is not a ring file");
    FiniteRing ring = std::get<RingFile>(ring_file.payload).ring;
    auto group = parse_group(need(doc, "group", ""), "/group");
    auto rows = parse_action(need(doc, "action", ""), ring.group().names(), std::nullopt, group, "/action");
    ModuleFile mf{LeftModule::make(ring, group, flatten(rows)), ring_ref, {}, {}, {}, {}};
    if (const json* endo = maybe(doc, "endo")) {
      mf.sigma_R = additive_map(&need(*endo, "sigma_R", "/endo"), ring.group(), "/endo/sigma_R");
      mf.delta_R = additive_map(&need(*endo, "delta_R", "/endo"), ring.group(), "/endo/delta_R");
      mf.sigma_M = additive_map(&need(*endo, "sigma_M", "/endo"), group, "/endo/sigma_M");
      mf.delta_M = additive_map(&need(*endo, "delta_M", "/endo"), group, "/endo/delta_M");
    }
    return {StructureKind::module, name, std::move(mf)};
  }

  if (k == "triple") {
    Ops ops = parse_ops(need(doc, "A", ""), "/A");
    const json& jb = need(doc, "B", "");
    auto bgroup = parse_group(need(jb, "group", "/B"), "/B/group");
    auto B = build_operators(bgroup, ops, need(jb, "action", "/B"), "/B/action");
    auto pair_B = parse_endo(&need(jb, "endo", "/B"), B, "/B/endo", true);
    const json& jc = need(doc, "C", "");
    auto C = parse_group(need(jc, "group", "/C"), "/C/group");
    auto a_rows = parse_action(need(jc, "action_A", "/C"), B.ops().names, B.ops().zero, C, "/C/action_A");
    auto b_rows = parse_action(need(jc, "action_B", "/C"), bgroup.names(), bgroup.zero(), C, "/C/action_B");
    const json& jce = need(jc, "endo", "/C");
    Table sC = parse_map(need(jce, "sigma", "/C/endo"), C.names(), C.names(), "/C/endo/sigma");
    Table dC = parse_map(need(jce, "delta", "/C/endo"), C.names(), C.names(), "/C/endo/delta");
    auto t = semantic("/C", [&] {
      return make_triple(B, C, flatten(a_rows), flatten(b_rows), *pair_B, EndoPair{sC, dC, std::nullopt, std::nullopt});
    });
    return {StructureKind::triple, name, TripleFile{std::move(t)}};
  }
  schema("/kind", "unknown kind '" + k + "'");
}

// ---- serialization ----------------------------------------------------------

json group_json(const FiniteAbelianGroup& g) {
  json j;
  j["elements"] = g.names();
  json add = json::array();
  for (Elem a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (Elem b = 0; b < g.order(); ++b) row.push_back(g.name(g.add(a, b)));
    add.push_back(std::move(row));
  }
  j["add"] = std::move(add);
  json neg = json::array();
  for (Elem a = 0; a < g.order(); ++a) neg.push_back(g.name(g.neg(a)));
  j["neg"] = std::move(neg);
  j["zero"] = g.name(g.zero());
  return j;
}

json map_json(std::span<const Elem> t, const std::vector<std::string>& dom, const std::vector<std::string>& cod) {
  json j = json::object();
  for (Elem i = 0; i < t.size(); ++i) j[dom[i]] = cod[t[i]];
  return j;
}

json action_json(const ActionView& v, const std::vector<std::string>& ops) {
  json j = json::object();
  for (Elem a = 0; a < v.num_ops; ++a) j[ops[a]] = map_json(v.row(a), v.target->names(), v.target->names());
  return j;
}

json ops_json(const OperatorSet& o) {
  json j;
  j["elements"] = o.names;
  j["zero"] = o.names[o.zero];
  return j;
}

json endo_json(const EndoPair& p, const std::vector<std::string>& names, const OperatorSet* ops) {
  json j;
  j["sigma"] = map_json(p.sigma, names, names);
  j["delta"] = map_json(p.delta, names, names);
  if (ops && p.has_companions()) {
    j["sigma_A"] = map_json(*p.sigma_A, ops->names, ops->names);
    j["delta_A"] = map_json(*p.delta_A, ops->names, ops->names);
  }
  return j;
}

}  // namespace

StructureFile parse_structure_text(std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw AlgebraError(ErrorKind::SyntaxError,
                       "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what(),
                       {std::to_string(line), std::to_string(col)});
  }
  return parse_json(doc, base_dir);
}

StructureFile parse_structure_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AlgebraError(ErrorKind::SyntaxError, "cannot read '" + path.string() + "'", {path.string()});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_structure_text(ss.str(), path.parent_path());
}

std::string serialize(const StructureFile& file) {
  json doc;
  doc["kind"] = std::string(to_string(file.kind));
  if (!file.name.empty()) doc["name"] = file.name;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GroupFile>) {
          doc["group"] = group_json(p.g.group());
          doc["operators"] = ops_json(p.g.ops());
          doc["action"] = action_json(p.g.view(), p.g.ops().names);
          if (p.pair) doc["endo"] = endo_json(*p.pair, p.g.group().names(), &p.g.ops());
        } else if constexpr (std::is_same_v<T, RingFile>) {
          const auto& G = p.ring.group();
          doc["group"] = group_json(G);
          json mul = json::array();
          for (Elem a = 0; a < G.order(); ++a) {
            json row = json::array();
            for (Elem b = 0; b < G.order(); ++b) row.push_back(G.name(p.ring.mul(a, b)));
            mul.push_back(std::move(row));
          }
          doc["mul"] = std::move(mul);
          if (p.sigma && p.delta) {
            json e;
            e["sigma"] = map_json(*p.sigma, G.names(), G.names());
            e["delta"] = map_json(*p.delta, G.names(), G.names());
            doc["endo"] = std::move(e);
          }
          if (!p.ideal_generators.empty()) {
            json ig = json::array();
            for (Elem e : p.ideal_generators) ig.push_back(G.name(e));
            doc["ideal_generators"] = std::move(ig);
          }
        } else if constexpr (std::is_same_v<T, ModuleFile>) {
          const auto& M = p.module.group();
          const auto& RG = p.module.ring().group();
          doc["ring"] = p.ring_ref;
          doc["group"] = group_json(M);
          doc["action"] = action_json(p.module.view(), RG.names());
          if (p.sigma_R && p.delta_R && p.sigma_M && p.delta_M) {
            json e;
            e["sigma_R"] = map_json(*p.sigma_R, RG.names(), RG.names());
            e["delta_R"] = map_json(*p.delta_R, RG.names(), RG.names());
            e["sigma_M"] = map_json(*p.sigma_M, M.names(), M.names());
            e["delta_M"] = map_json(*p.delta_M, M.names(), M.names());
            doc["endo"] = std::move(e);
          }
        } else {
          const AssocTriple& t = p.triple;
          doc["A"] = ops_json(t.A());
          json b;
          b["group"] = group_json(t.B.group());
          b["action"] = action_json(t.B.view(), t.A().names);
          b["endo"] = endo_json(t.pair_B, t.B.group().names(), &t.A());
          doc["B"] = std::move(b);
          json c;
          c["group"] = group_json(t.C);
          c["action_A"] = action_json(t.a_on_c(), t.A().names);
          c["action_B"] = action_json(t.b_on_c(), t.B.group().names());
          c["endo"] = endo_json(t.pair_C, t.C.names(), nullptr);
          doc["C"] = std::move(c);
        }
      },
      file.payload);
  return doc.dump(2) + "\n";
}

}  // namespace oreext
