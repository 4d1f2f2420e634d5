#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "oreext/cli.hpp"
#include "corpus.hpp"
#include "oreext/gallery.hpp"
#include "oreext/structure_file.hpp"

using namespace oreext;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("oreext_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string emit_file(const std::string& id) {
    return write(id + ".json", emit(build(id)));
  }
  static json run_json(std::vector<std::string> args, int expect_code) {
    args.insert(args.begin(), {"--format", "json", "--no-timing"});
    auto r = cli::run(args);
    EXPECT_EQ(r.exit_code, expect_code) << r.out << r.err;
    return json::parse(r.out);
  }

  fs::path dir_;
};

std::string f5_file() {
  json j;
  j["kind"] = "group_with_operators";
  j["name"] = "F5 sigma=2 delta=3";
  j["group"] = json{{"cyclic_product", {5}}};
  j["operators"] = json{{"elements", {"0", "1", "2", "3", "4"}}, {"zero", "0"}};
  json action, sigma, delta, sA, dA;
  for (int a = 0; a < 5; ++a) {
    json row;
    for (int b = 0; b < 5; ++b) row[std::to_string(b)] = std::to_string(a * b % 5);
    action[std::to_string(a)] = row;
    sigma[std::to_string(a)] = std::to_string(2 * a % 5);
    delta[std::to_string(a)] = std::to_string(3 * a % 5);
    sA[std::to_string(a)] = std::to_string(a);
    dA[std::to_string(a)] = "0";
  }
  j["action"] = action;
  j["endo"] = json{{"sigma", sigma}, {"delta", delta}, {"sigma_A", sA}, {"delta_A", dA}};
  return j.dump(2);
}

}  // namespace

TEST(Sha256, KnownVector) {
  EXPECT_EQ(cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(CliTest, SunitalOnInversion) {
  auto j = run_json({"sunital", emit_file("cyclic_inversion(3)")}, 0);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["details"]["s_unital"], false);
  EXPECT_EQ(j["details"]["weakly_s_unital"], true);
  ASSERT_EQ(j["inputs"].size(), 1u);
  EXPECT_EQ(j["inputs"][0].get<std::string>().size(), 64u);
  EXPECT_TRUE(j["elapsed_ms"].is_null());
}

TEST_F(CliTest, IdentitiesOverF5) {
  auto j = run_json({"identities", write("f5.json", f5_file()), "--max-index", "4"}, 0);
  EXPECT_EQ(j["details"]["vandermonde"]["passed"], true);
  EXPECT_EQ(j["details"]["leibniz"]["passed"], true);
  EXPECT_EQ(j["details"]["mixed"]["passed"], true);
}

TEST_F(CliTest, RingReportOnRps) {
  auto j = run_json({"ring-report", emit_file("rps_algebra()")}, 0);
  EXPECT_EQ(j["details"]["left_unital"], false);
  EXPECT_EQ(j["details"]["boolean"], true);
  auto has = [&](std::vector<std::string> t) {
    for (const auto& w : j["witnesses"])
      if (w["tuple"].get<std::vector<std::string>>() == t) return true;
    return false;
  };
  EXPECT_TRUE(has({"R", "S", "R"}));
  EXPECT_TRUE(has({"S", "P", "S"}));
}

TEST_F(CliTest, ClosureModes) {
  auto f = emit_file("cyclic_inversion(3)");
  auto j = run_json({"closure", f, "--set", "1", "--mode", "bracket"}, 0);
  EXPECT_EQ(j["details"]["subgroup"], json({"0", "1", "2"}));
  auto bad = cli::run({"closure", f, "--set", "7"});
  EXPECT_EQ(bad.exit_code, 2);
}

TEST_F(CliTest, ChainVerdicts) {
  auto j = run_json({"chain", emit_file("cyclic_inversion(4)")}, 0);
  EXPECT_EQ(j["verdict"], "not_applicable");
  auto z = write("z3.json", R"({"kind": "group_with_operators", "name": "zero", "group": {"cyclic_product": [3]},
    "operators": {"elements": ["eps"], "zero": "eps"}, "action": {}})");
  auto k = run_json({"chain", z, "--length", "8"}, 0);
  EXPECT_EQ(k["verdict"], "pass");
  EXPECT_EQ(k["details"]["link_sizes"].size(), 8u);
  EXPECT_EQ(k["details"]["strict"], true);
}

TEST_F(CliTest, AssocPassAndFail) {
  auto ok = run_json({"assoc", emit_file("frobenius_vector_space(2,2,1,identity)"), "--max-degree", "1"}, 0);
  EXPECT_EQ(ok["details"]["exhaustive"], true);
  auto broken = testkit::broken_twist_triples().front();
  auto file = write("broken.json", serialize(StructureFile{StructureKind::triple, broken.name,
                                                           TripleFile{broken.triple}}));
  auto bad = run_json({"assoc", file, "--max-degree", "1"}, 1);
  EXPECT_EQ(bad["verdict"], "fail");
  EXPECT_FALSE(bad["witnesses"].empty());
  EXPECT_EQ(bad["details"]["consistent"], true);
}

TEST_F(CliTest, IdealChainAndHorrible) {
  auto f = emit_file("twisted_pair(2,1,1)");
  auto j = run_json({"ideal-chain", f, "--depth", "6"}, 0);
  EXPECT_EQ(j["details"]["strict"], true);
  EXPECT_EQ(j["details"]["separators"].size(), 6u);
  auto h = run_json({"horrible", f, "--max-index", "2"}, 0);
  EXPECT_EQ(h["details"]["part_i"]["passed"], true);
}

TEST_F(CliTest, InvalidInputs) {
  auto missing = cli::run({"validate", (dir_ / "nope.json").string()});
  EXPECT_EQ(missing.exit_code, 2);
  auto broken = write("broken.json", "{\"kind\": ");
  auto j = run_json({"validate", broken}, 2);
  EXPECT_EQ(j["verdict"], "invalid");
  EXPECT_EQ(j["error"]["kind"], "SyntaxError");
  EXPECT_EQ(cli::run({"frobnicate"}).exit_code, 2);
  EXPECT_EQ(cli::run({"identities", broken}).exit_code, 2);  // --max-index missing
  auto ring = emit_file("rps_algebra()");
  EXPECT_EQ(cli::run({"assoc", ring, "--max-degree", "1"}).exit_code, 2);
}

TEST_F(CliTest, ModuleReport) {
  auto ring = write("z4.json", R"({"kind": "ring", "name": "Z/4", "group": {"cyclic_product": [4]},
    "mul": [["0","0","0","0"],["0","1","2","3"],["0","2","0","2"],["0","3","2","1"]]})");
  auto mod = write("z2.json", R"({"kind": "module", "name": "Z/2", "ring": "z4.json",
    "group": {"cyclic_product": [2]},
    "action": {"0": {"0": "0", "1": "0"}, "1": {"0": "0", "1": "1"}, "2": {"0": "0", "1": "0"},
               "3": {"0": "0", "1": "1"}}})");
  auto j = run_json({"module-report", ring, mod}, 0);
  EXPECT_EQ(j["details"]["left_unital"], true);
  EXPECT_EQ(j["details"]["s_unital"], true);
  EXPECT_EQ(j["inputs"].size(), 2u);
}

TEST_F(CliTest, GalleryEmitAndVerify) {
  auto out = (dir_ / "ci3.json").string();
  auto e = run_json({"gallery", "emit", "cyclic_inversion", "3", "--out", out}, 0);
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text, emit(build("cyclic_inversion(3)")));
  EXPECT_EQ(e["details"]["sha256"], cli::sha256_hex(text));
  auto v = run_json({"gallery", "verify", "rps_algebra()"}, 0);
  EXPECT_EQ(v["verdict"], "pass");
  EXPECT_EQ(cli::run({"gallery", "emit", "cayley_dickson(3,3)"}).exit_code, 2);
}

TEST_F(CliTest, JobsDoNotChangeReports) {
  auto f = emit_file("frobenius_vector_space(2,2,2,swap)");
  auto a = cli::run({"--format", "json", "--no-timing", "--jobs", "1", "assoc", f, "--max-degree", "1"});
  auto b = cli::run({"--format", "json", "--no-timing", "--jobs", "8", "assoc", f, "--max-degree", "1"});
  EXPECT_EQ(a.out, b.out);
}
