#include "oreext/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "oreext/core_algebra.hpp"
#include "oreext/gallery.hpp"
#include "oreext/noetherian.hpp"
#include "oreext/ore_extension.hpp"
#include "oreext/parallel.hpp"
#include "oreext/rings_modules.hpp"
#include "oreext/structure_file.hpp"

namespace oreext::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw AlgebraError(ErrorKind::Internal, "sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

namespace {

struct Report {
  std::string command;
  std::vector<std::string> inputs;
  std::string verdict = "pass";
  std::vector<Witness> witnesses;
  json details = json::object();

  void add(const std::optional<Witness>& w) {
    if (w && std::find(witnesses.begin(), witnesses.end(), *w) == witnesses.end())
      witnesses.push_back(*w);
  }
  void fail(const std::optional<Witness>& w, const std::string& fallback) {
    verdict = "fail";
    witnesses.push_back(w ? *w : Witness{fallback, {}});
  }
};

json to_json(const Witness& w) { return json{{"what", w.what}, {"tuple", w.tuple}}; }

json names_of(const FiniteAbelianGroup& g, std::span<const Elem> set) {
  json a = json::array();
  for (Elem e : set) a.push_back(g.name(e));
  return a;
}

json property_json(const Property& p) {
  if (p.value == Tri::skipped) return "skipped";
  return p.holds();
}

struct Input {
  std::string text;
  StructureFile file;
};

Input load(const std::string& path, Report& rep) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AlgebraError(ErrorKind::BadParams, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  rep.inputs.push_back(sha256_hex(text));
  auto file = parse_structure_text(text, fs::path(path).parent_path());
  return {std::move(text), std::move(file)};
}

// A group file, or a ring file read as the ring acting on itself with its
// endomorphism pair serving as its own companions.
struct OperatorInput {
  GroupWithOperators g;
  EndoPair pair;
  bool explicit_pair = false;
};

OperatorInput operators_of(const StructureFile& f) {
  if (const auto* gf = std::get_if<GroupFile>(&f.payload))
    return {gf->g, gf->pair_or_plain(), gf->pair.has_value()};
  if (const auto* rf = std::get_if<RingFile>(&f.payload)) {
    GroupWithOperators g = regular_operators(rf->ring);
    if (rf->sigma && rf->delta) {
      auto pair = make_endo_pair(rf->ring.group(), *rf->sigma, *rf->delta, *rf->sigma, *rf->delta,
                                 g.num_ops());
      return {g, pair, true};
    }
    return {g, plain_pair(g), false};
  }
  throw AlgebraError(ErrorKind::BadParams, "expected a group_with_operators or ring file, got " +
                                               std::string(to_string(f.kind)));
}

bool is_plain(const GroupWithOperators& g, const EndoPair& p) {
  const auto& G = g.group();
  for (Elem b = 0; b < G.order(); ++b)
    if (p.sigma[b] != b || p.delta[b] != G.zero()) return false;
  return true;
}

// Comma-separated identifiers; commas inside parentheses belong to tuple names.
std::vector<std::string> split_set(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::string witness_text(const Witness& w) {
  std::string s = w.what;
  if (!w.tuple.empty()) {
    s += ": (";
    for (std::size_t i = 0; i < w.tuple.size(); ++i) s += (i ? ", " : "") + w.tuple[i];
    s += ")";
  }
  return s;
}

std::string render_value(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render_text(const json& obj, int indent, std::string& out) {
  for (const auto& [k, v] : obj.items()) {
    out += std::string(indent, ' ') + k + ":";
    if (v.is_object() && !v.empty()) {
      out += "\n";
      render_text(v, indent + 2, out);
    } else {
      out += " " + render_value(v) + "\n";
    }
  }
}

std::string render(const Report& rep, bool as_json, std::optional<long long> elapsed) {
  if (as_json) {
    json j;
    j["command"] = rep.command;
    j["inputs"] = rep.inputs;
    j["verdict"] = rep.verdict;
    json w = json::array();
    for (const auto& x : rep.witnesses) w.push_back(to_json(x));
    j["witnesses"] = w;
    j["elapsed_ms"] = elapsed ? json(*elapsed) : json(nullptr);
    j["details"] = rep.details;
    return j.dump(2) + "\n";
  }
  std::string out = "command: " + rep.command + "\nverdict: " + rep.verdict + "\n";
  for (const auto& d : rep.inputs) out += "input: sha256:" + d + "\n";
  render_text(rep.details, 0, out);
  for (const auto& w : rep.witnesses) out += "witness: " + witness_text(w) + "\n";
  if (elapsed) out += "elapsed_ms: " + std::to_string(*elapsed) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// commands

void cmd_validate(const std::string& path, Report& rep) {
  auto in = load(path, rep);
  const auto& f = in.file;
  auto& d = rep.details;
  d["kind"] = std::string(to_string(f.kind));
  d["name"] = f.name;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GroupFile>) {
          d["order"] = p.g.group().order();
          d["operators"] = p.g.ops().names;
          d["zero_operator"] = p.g.ops().names[p.g.ops().zero];
          d["endo"] = p.pair.has_value();
          d["companions"] = p.pair && p.pair->has_companions();
        } else if constexpr (std::is_same_v<T, RingFile>) {
          d["order"] = p.ring.order();
          d["endo"] = p.sigma.has_value();
          d["ideal_generators"] = names_of(p.ring.group(), p.ideal_generators);
        } else if constexpr (std::is_same_v<T, ModuleFile>) {
          d["ring"] = p.ring_ref;
          d["ring_order"] = p.module.ring().order();
          d["order"] = p.module.group().order();
          d["endo"] = p.sigma_R.has_value();
        } else {
          d["A"] = p.triple.A().size();
          d["B"] = p.triple.B.group().order();
          d["C"] = p.triple.C.order();
        }
      },
      f.payload);
}

void cmd_closure(const std::string& path, const std::string& set, const std::string& mode,
                 Report& rep) {
  auto in = load(path, rep);
  auto op = operators_of(in.file);
  const auto& G = op.g.group();
  std::vector<Elem> s;
  for (const auto& name : split_set(set)) s.push_back(G.parse(name));
  if (s.empty()) throw AlgebraError(ErrorKind::EmptySet, "--set is empty");
  auto ss = make_set(s);
  auto stable = stable_closure(op.g, ss);
  auto sub = generated_stable_subgroup(op.g, ss, mode == "bracket" ? SpanMode::bracket : SpanMode::full);
  rep.details["set"] = names_of(G, ss);
  rep.details["mode"] = mode;
  rep.details["stable_closure"] = names_of(G, stable);
  rep.details["subgroup"] = names_of(G, sub.members);
  rep.details["size"] = sub.size();
}

void cmd_sunital(const std::string& path, Report& rep) {
  auto in = load(path, rep);
  auto op = operators_of(in.file);
  auto r = sunitality_report(op.g);
  rep.details["s_unital"] = r.s_unital;
  rep.details["weakly_s_unital"] = r.weakly_s_unital;
  rep.details["subsets_checked"] = r.subsets_checked;
  rep.details["subsets_exhaustive"] = r.subsets_exhaustive;
  rep.details["equivalence_consistent"] = r.equivalence_consistent;
  rep.add(r.s_witness);
  rep.add(r.weak_witness);
  if (!r.equivalence_consistent) rep.fail(r.equality_witness, "closure equivalence failed");
}

json identity_json(const IdentityReport& r) { return json{{"passed", r.passed}, {"checks", r.checks}}; }

void cmd_identities(const std::string& path, unsigned max_index, Report& rep) {
  auto in = load(path, rep);
  auto op = operators_of(in.file);
  auto v = check_vandermonde(op.g.group(), op.pair, max_index);
  rep.details["max_index"] = max_index;
  rep.details["vandermonde"] = identity_json(v.vandermonde);
  rep.details["one_shift"] = identity_json(v.one_shift);
  if (!v.vandermonde.passed) rep.fail(v.vandermonde.witness, "vandermonde failed");
  if (!v.one_shift.passed) rep.fail(v.one_shift.witness, "one-shift failed");

  if (!op.pair.has_companions()) {
    rep.details["leibniz"] = "skipped: no companion maps";
    rep.details["mixed"] = "skipped: no companion maps";
    return;
  }
  auto t = twist_predicates(op.g, op.pair);
  rep.details["sigma_twisted"] = t.sigma_twisted;
  rep.details["twisted_derivation"] = t.twisted_derivation;
  if (!t.holds()) {
    rep.add(t.sigma_witness);
    rep.add(t.delta_witness);
    rep.details["leibniz"] = "skipped: twist predicates fail";
    rep.details["mixed"] = "skipped: twist predicates fail";
    return;
  }
  auto l = check_leibniz_mixed(op.g, op.pair, max_index);
  rep.details["leibniz"] = identity_json(l.leibniz);
  rep.details["mixed"] = identity_json(l.mixed);
  if (!l.leibniz.passed) rep.fail(l.leibniz.witness, "leibniz failed");
  if (!l.mixed.passed) rep.fail(l.mixed.witness, "mixed failed");
}

void cmd_assoc(const std::string& path, unsigned max_degree, std::uint64_t budget,
               std::uint64_t seed, Report& rep) {
  auto in = load(path, rep);
  const auto* tf = std::get_if<TripleFile>(&in.file.payload);
  if (!tf) throw AlgebraError(ErrorKind::BadParams, "assoc expects a triple file");
  auto r = check_triple_associativity(tf->triple, max_degree, budget, seed);
  auto& d = rep.details;
  d["max_degree"] = max_degree;
  d["triple_associative"] = r.triple_associative;
  d["sigma_twisted"] = r.sigma_twisted;
  d["delta_twisted_derivation"] = r.delta_twisted_derivation;
  d["phase2_passed"] = r.phase2_passed;
  d["exhaustive"] = r.exhaustive;
  d["tuples_total"] = r.tuples_total;
  d["tuples_checked"] = r.tuples_checked;
  d["seed"] = r.seed;
  d["annihilator_trivial"] = r.annihilator_trivial;
  d["witness_degree"] = r.witness_degree;
  d["consistent"] = r.consistent;
  rep.add(r.assoc_witness);
  rep.add(r.sigma_witness);
  rep.add(r.delta_witness);
  rep.add(r.phase2_witness);
  if (!r.passed() || !r.consistent) {
    rep.verdict = "fail";
    if (rep.witnesses.empty()) rep.witnesses.push_back({"outcome contradicts the criterion", {}});
  }
}

void cmd_chain(const std::string& path, unsigned length, Report& rep) {
  auto in = load(path, rep);
  auto op = operators_of(in.file);
  if (!is_plain(op.g, op.pair)) rep.details["note"] = "endo pair ignored; chain uses sigma = id, delta = 0";
  auto res = ascending_chain_witness(op.g, length);
  if (std::holds_alternative<NotApplicable>(res)) {
    rep.verdict = "not_applicable";
    rep.details["weakly_s_unital"] = true;
    return;
  }
  const auto& w = std::get<ChainWitness>(res);
  const auto& G = op.g.group();
  auto& d = rep.details;
  d["weakly_s_unital"] = false;
  d["c"] = G.name(w.c);
  d["bracket"] = names_of(G, w.bracket.members);
  d["quotient_order"] = w.quotient.structure.group().order();
  d["e"] = names_of(w.quotient.structure.group(), w.e.members);
  json sizes = json::array();
  for (const auto& l : w.links) sizes.push_back(l.slice.size());
  d["link_sizes"] = sizes;
  json seps = json::array();
  for (const auto& s : w.separators) seps.push_back(format_poly(s, w.quotient.structure.group().names()));
  d["separators"] = seps;
  d["annihilated"] = w.annihilated;
  d["strict"] = w.strict;
  d["links_stable"] = w.links_stable;
  rep.witnesses.push_back({"c not in [c]", {G.name(w.c)}});
  if (!w.verified()) rep.fail(std::nullopt, "chain not verified");
}

void cmd_horrible(const std::string& path, unsigned max_index, Report& rep) {
  auto in = load(path, rep);
  auto op = operators_of(in.file);
  auto s = check_horrible_all(op.g, op.pair, max_index);
  auto& d = rep.details;
  d["max_index"] = max_index;
  d["part_i"] = json{{"passed", s.part_i_passed}, {"checked", s.part_i_checked}};
  d["part_ii"] = json{{"passed", s.part_ii_passed},
                      {"checked", s.part_ii_checked},
                      {"skipped", s.part_ii_skipped}};
  if (!s.part_i_passed) rep.fail(s.part_i_witness, "part (i) failed");
  if (!s.part_ii_passed) rep.fail(s.part_ii_witness, "part (ii) failed");
}

void property_report(const PropertyReport& p, const FiniteAbelianGroup& R, bool ring, Report& rep) {
  auto& d = rep.details;
  std::vector<std::pair<const char*, const Property*>> props = {
      {"associative", &p.associative},       {"left_distributive", &p.left_distributive},
      {"right_distributive", &p.right_distributive}, {"left_unital", &p.left_unital},
      {"s_unital", &p.s_unital},             {"weakly_s_unital", &p.weakly_s_unital}};
  if (ring) {
    props.insert(props.begin() + 4, {"right_unital", &p.right_unital});
    props.push_back({"boolean", &p.boolean});
  }
  for (const auto& [name, prop] : props) {
    d[name] = property_json(*prop);
    rep.add(prop->witness);
  }
  d["left_identities"] = names_of(R, p.left_identities);
  if (ring) d["right_identities"] = names_of(R, p.right_identities);
  d["dictionary_consistent"] = p.dictionary_consistent;
  for (const auto& w : p.left_unital_refutations) rep.add(w);
  if (!p.dictionary_consistent) rep.fail(std::nullopt, "module and operator readings disagree");
}

void cmd_ring_report(const std::string& path, Report& rep) {
  auto in = load(path, rep);
  const auto* rf = std::get_if<RingFile>(&in.file.payload);
  if (!rf) throw AlgebraError(ErrorKind::BadParams, "ring-report expects a ring file");
  property_report(ring_property_report(rf->ring), rf->ring.group(), true, rep);
}

void cmd_module_report(const std::string& ring_path, const std::string& module_path, Report& rep) {
  auto rin = load(ring_path, rep);
  auto min = load(module_path, rep);
  const auto* rf = std::get_if<RingFile>(&rin.file.payload);
  const auto* mf = std::get_if<ModuleFile>(&min.file.payload);
  if (!rf || !mf)
    throw AlgebraError(ErrorKind::BadParams, "module-report expects a ring file and a module file");
  const auto& R = mf->module.ring();
  if (!R.group().same_tables(rf->ring.group()) || R.mul_table() != rf->ring.mul_table())
    throw AlgebraError(ErrorKind::SemanticError,
                       "module file references a ring different from " + ring_path);
  property_report(module_property_report(mf->module), R.group(), false, rep);
  if (mf->sigma_R) {
    auto dr = derivation_endo_predicates(mf->module, *mf->sigma_R, *mf->delta_R, *mf->sigma_M,
                                         *mf->delta_M);
    json e;
    e["sigma_R_ring_endo"] = property_json(dr.sigma_R_ring_endo);
    e["delta_R_derivation"] = property_json(dr.delta_R_derivation);
    e["sigma_M_twisted"] = property_json(dr.sigma_M_twisted);
    e["delta_M_derivation"] = property_json(dr.delta_M_derivation);
    rep.details["endo"] = e;
    for (const auto* p : {&dr.sigma_R_ring_endo, &dr.delta_R_derivation, &dr.sigma_M_twisted,
                          &dr.delta_M_derivation})
      rep.add(p->witness);
  }
}

void cmd_ideal_chain(const std::string& path, unsigned depth, Report& rep) {
  auto in = load(path, rep);
  const auto* rf = std::get_if<RingFile>(&in.file.payload);
  if (!rf) throw AlgebraError(ErrorKind::BadParams, "ideal-chain expects a ring file");
  if (rf->ideal_generators.empty())
    throw AlgebraError(ErrorKind::BadParams, "ring file has no ideal_generators");
  const auto& G = rf->ring.group();
  OreRing o{rf->ring, rf->sigma.value_or(identity_map(G.order())),
            rf->delta.value_or(Table(G.order(), G.zero()))};
  auto r = ideal_chain(o, rf->ideal_generators, depth);
  auto& d = rep.details;
  d["depth"] = depth;
  d["coefficients"] = names_of(G, r.coefficients.members);
  json ideals = json::array();
  for (const auto& i : r.ideals)
    ideals.push_back(json{{"right_ideal", i.closed}, {"products_checked", i.products_checked}});
  d["ideals"] = ideals;
  json seps = json::array();
  for (const auto& s : r.separators) seps.push_back(format_poly(s, G.names()));
  d["separators"] = seps;
  d["strict"] = r.strict;
  for (const auto& i : r.ideals)
    if (!i.closed) rep.fail(i.witness, "not a right ideal");
  if (!r.strict) rep.fail(std::nullopt, "chain is not strict");
}

void cmd_gallery_list(Report& rep) {
  json fams = json::array();
  for (const auto& f : gallery_families())
    fams.push_back(json{{"name", f.name}, {"signature", f.signature}, {"description", f.description}});
  rep.details["families"] = fams;
  rep.details["defaults"] = gallery_default_ids();
}

GalleryItem build_item(const std::string& id, const std::vector<std::string>& params) {
  if (params.empty()) return build(id);
  return build(id, params);
}

void cmd_gallery_emit(const std::string& id, const std::vector<std::string>& params,
                      const std::string& out_path, Report& rep, std::string& stdout_text) {
  auto item = build_item(id, params);
  std::string text = emit(item);
  rep.details["id"] = item.id;
  rep.details["sha256"] = sha256_hex(text);
  if (out_path.empty()) {
    stdout_text = text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw AlgebraError(ErrorKind::BadParams, "cannot write " + out_path);
  out << text;
  rep.details["out"] = out_path;
}

void cmd_gallery_verify(const std::string& id, const std::vector<std::string>& params, Report& rep) {
  std::vector<GalleryItem> items;
  if (id.empty()) {
    for (const auto& i : gallery_default_ids()) items.push_back(build(i));
  } else {
    items.push_back(build_item(id, params));
  }
  json all = json::object();
  for (const auto& item : items) {
    auto r = verify_all(item);
    json claims = json::object();
    for (const auto& c : r.results) {
      claims[c.claim.predicate] =
          json{{"expected", c.claim.expected}, {"actual", c.actual}, {"passed", c.passed()}};
      if (!c.passed()) {
        Witness w = c.witness ? *c.witness : Witness{"claim mismatch", {}};
        w.what = r.id + " " + c.claim.predicate + ": " + w.what;
        rep.fail(w, "");
      }
    }
    all[r.id] = claims;
  }
  rep.details["items"] = all;
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
  CLI::App app{"Ore extensions of abelian groups with operators"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");

  std::string format = "text";
  int jobs = 0;
  bool no_timing = false;
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", jobs, "worker threads (0: hardware concurrency)")->check(CLI::NonNegativeNumber);
  app.add_flag("--no-timing", no_timing, "omit elapsed time");

  std::string file, file2, set, mode = "full";
  unsigned n = 0;
  std::uint64_t budget = 1'000'000, seed = kDefaultSeed;

  auto* validate = app.add_subcommand("validate", "parse and validate a structure file");
  validate->add_option("FILE", file)->required();

  auto* closure = app.add_subcommand("closure", "stable subgroup generated by a set");
  closure->add_option("FILE", file)->required();
  closure->add_option("--set", set, "comma-separated element identifiers")->required();
  closure->add_option("--mode", mode)->check(CLI::IsMember({"full", "bracket"}));

  auto* sunital = app.add_subcommand("sunital", "s-unitality and weak s-unitality");
  sunital->add_option("FILE", file)->required();

  auto* identities = app.add_subcommand("identities", "Vandermonde, one-shift, Leibniz and mixed identities");
  identities->add_option("FILE", file)->required();
  identities->add_option("--max-index", n)->required();

  auto* assoc = app.add_subcommand("assoc", "associativity of the Ore action on a triple");
  assoc->add_option("TRIPLE_FILE", file)->required();
  assoc->add_option("--max-degree", n)->required()->check(CLI::Range(0, 31));
  assoc->add_option("--budget", budget);
  assoc->add_option("--seed", seed);

  unsigned length = 8;
  auto* chain = app.add_subcommand("chain", "strict ascending chain of stable subgroups of B[x]");
  chain->add_option("FILE", file)->required();
  chain->add_option("--length", length)->check(CLI::Range(1, 64));

  auto* horrible = app.add_subcommand("horrible", "leading coefficients of A^k (A x^i)(b x^j)");
  horrible->add_option("FILE", file)->required();
  horrible->add_option("--max-index", n)->required()->check(CLI::Range(0, 8));

  auto* ring_report = app.add_subcommand("ring-report", "ring axioms and unitality");
  ring_report->add_option("FILE", file)->required();

  auto* module_report = app.add_subcommand("module-report", "module axioms and unitality");
  module_report->add_option("RING_FILE", file)->required();
  module_report->add_option("MODULE_FILE", file2)->required();

  unsigned depth = 6;
  auto* ideal = app.add_subcommand("ideal-chain", "right ideals I_n = sum_{i<=n} S x^i");
  ideal->add_option("FILE", file)->required();
  ideal->add_option("--depth", depth)->check(CLI::Range(0, 24));

  auto* gallery = app.add_subcommand("gallery", "built-in example structures");
  gallery->require_subcommand(1);
  auto* glist = gallery->add_subcommand("list", "families and default instances");
  std::string gid, out_path;
  std::vector<std::string> gparams;
  auto* gemit = gallery->add_subcommand("emit", "write a structure file");
  gemit->add_option("ID", gid)->required();
  gemit->add_option("PARAMS", gparams);
  gemit->add_option("--out", out_path);
  auto* gverify = gallery->add_subcommand("verify", "check the claims of gallery items");
  gverify->add_option("ID", gid);
  gverify->add_option("PARAMS", gparams);

  Outcome res;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    res.out = app.help();
    return res;
  } catch (const CLI::CallForAllHelp&) {
    res.out = app.help("", CLI::AppFormatMode::All);
    return res;
  } catch (const CLI::ParseError& e) {
    res.exit_code = 2;
    res.err = std::string("error: ") + e.what() + "\n";
    return res;
  }

  const bool as_json = format == "json";
  Report rep;
  std::string raw_stdout;
  const unsigned saved_jobs = oreext::jobs();
  set_jobs(static_cast<unsigned>(jobs));
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (validate->parsed()) {
      rep.command = "validate";
      cmd_validate(file, rep);
    } else if (closure->parsed()) {
      rep.command = "closure";
      cmd_closure(file, set, mode, rep);
    } else if (sunital->parsed()) {
      rep.command = "sunital";
      cmd_sunital(file, rep);
    } else if (identities->parsed()) {
      rep.command = "identities";
      cmd_identities(file, n, rep);
    } else if (assoc->parsed()) {
      rep.command = "assoc";
      cmd_assoc(file, n, budget, seed, rep);
    } else if (chain->parsed()) {
      rep.command = "chain";
      cmd_chain(file, length, rep);
    } else if (horrible->parsed()) {
      rep.command = "horrible";
      cmd_horrible(file, n, rep);
    } else if (ring_report->parsed()) {
      rep.command = "ring-report";
      cmd_ring_report(file, rep);
    } else if (module_report->parsed()) {
      rep.command = "module-report";
      cmd_module_report(file, file2, rep);
    } else if (ideal->parsed()) {
      rep.command = "ideal-chain";
      cmd_ideal_chain(file, depth, rep);
    } else if (glist->parsed()) {
      rep.command = "gallery list";
      cmd_gallery_list(rep);
    } else if (gemit->parsed()) {
      rep.command = "gallery emit";
      cmd_gallery_emit(gid, gparams, out_path, rep, raw_stdout);
    } else if (gverify->parsed()) {
      rep.command = "gallery verify";
      cmd_gallery_verify(gid, gparams, rep);
    }
  } catch (const AlgebraError& e) {
    set_jobs(saved_jobs);
    res.exit_code = 2;
    if (as_json) {
      json j;
      j["command"] = rep.command;
      j["inputs"] = rep.inputs;
      j["verdict"] = "invalid";
      j["error"] = json{{"kind", std::string(to_string(e.kind()))},
                        {"message", e.what()},
                        {"witness", e.witness()}};
      res.out = j.dump(2) + "\n";
    } else {
      std::string w;
      for (const auto& x : e.witness()) w += (w.empty() ? "" : ", ") + x;
      res.err = "error: " + std::string(to_string(e.kind())) + ": " + e.what() +
                (w.empty() ? "" : " [" + w + "]") + "\n";
    }
    return res;
  } catch (const std::exception& e) {
    set_jobs(saved_jobs);
    res.exit_code = 2;
    res.err = std::string("error: ") + e.what() + "\n";
    return res;
  }
  set_jobs(saved_jobs);

  std::optional<long long> elapsed;
  if (!no_timing)
    elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                  .count();
  res.exit_code = rep.verdict == "fail" ? 1 : 0;
  // `gallery emit` without --out writes the structure file itself.
  res.out = raw_stdout.empty() ? render(rep, as_json, elapsed) : raw_stdout;
  return res;
}

}  // namespace oreext::cli
