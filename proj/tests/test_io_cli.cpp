#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coopstab/cli.hpp"
#include "coopstab/errors.hpp"
#include "coopstab/io.hpp"
#include "support.hpp"

namespace coopstab {
namespace {

namespace fs = std::filesystem;
using testing::collinear_instance;

class Workspace : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("coopstab_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  struct Run {
    int code;
    std::string out;
    std::string err;
    json parsed() const { return json::parse(out); }
  };

  Run run(const std::vector<std::string>& args) const {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  static json without_timing(json j) {
    j.erase("timing_ms");
    return j;
  }

 private:
  fs::path dir_;
};

TEST(InstanceJson, RoundTripsMatrixAndProvenance) {
  const DistanceMatrix d = gen_asymmetric_metric(5, 8);
  const json j = instance_to_json(d);
  EXPECT_EQ(j["format"], kInstanceFormat);
  EXPECT_EQ(j["n"], 5);
  EXPECT_EQ(j["seed"], 8);
  const DistanceMatrix back = instance_from_json(j);
  EXPECT_EQ(back.entries(), d.entries());
  EXPECT_EQ(back.seed(), d.seed());
  EXPECT_EQ(back.generator(), d.generator());
}

TEST(InstanceJson, RejectsInconsistentFiles) {
  json j = instance_to_json(collinear_instance());
  j["symmetric"] = false;
  EXPECT_THROW(instance_from_json(j), DomainError);
  j = instance_to_json(collinear_instance());
  j.erase("matrix");
  EXPECT_THROW(instance_from_json(j), ShapeError);
  j = instance_to_json(collinear_instance());
  j["matrix"][0][2] = 100.0;
  j["matrix"][2][0] = 100.0;
  EXPECT_THROW(instance_from_json(j), DomainError);
}

TEST(CostGameJson, RoundTripsEveryCoalition) {
  const CostGame g = reference_game_g3();
  const json j = cost_game_to_json(g);
  EXPECT_EQ(j["costs"].size(), 7u);
  EXPECT_EQ(j["costs"]["7"], 10.0);
  const CostGame back = cost_game_from_json(j);
  EXPECT_EQ(all_costs(back), all_costs(g));
}

TEST(CostGameJson, RejectsMissingCoalitions) {
  json j = cost_game_to_json(reference_game_g3());
  j["costs"].erase("3");
  EXPECT_THROW(cost_game_from_json(j), ShapeError);
  j = cost_game_to_json(reference_game_g3());
  j["format"] = "something-else";
  EXPECT_THROW(cost_game_from_json(j), ShapeError);
}

TEST_F(Workspace, GenWritesSevenBySevenMatrix) {
  const Run r = run({"gen", "euclidean", "--n", "6", "--seed", "1", "--out", path("e6.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.parsed()["valid"].get<bool>());
  const json inst = read_json_file(path("e6.json"));
  EXPECT_EQ(inst["matrix"].size(), 7u);
  EXPECT_EQ(inst["matrix"][0].size(), 7u);
}

TEST_F(Workspace, GenIsByteIdenticalOnRegeneration) {
  ASSERT_EQ(run({"gen", "euclidean", "--n", "6", "--seed", "1", "--out", path("a.json")}).code, kExitOk);
  ASSERT_EQ(run({"gen", "--kind", "euclidean", "--n", "6", "--seed", "1", "--out", path("b.json")}).code, kExitOk);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(Workspace, GenAsymmetricIsValid) {
  ASSERT_EQ(run({"gen", "asymmetric", "--n", "4", "--seed", "3", "--out", path("a4.json")}).code, kExitOk);
  const InputFile in = read_input_file(path("a4.json"));
  const auto& d = std::get<DistanceMatrix>(in);
  EXPECT_TRUE(validate_metric(d.entries()).valid);
  EXPECT_TRUE(testing::satisfies_triangle_inequality(d.entries()));
}

TEST_F(Workspace, AnalyzeReferenceGameCoss) {
  write_json_file(path("g3.json"), cost_game_to_json(reference_game_g3()));
  const Run r = run({"analyze", path("g3.json"), "--concepts", "coss"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json report = r.parsed();
  ASSERT_EQ(report["results"].size(), 1u);
  EXPECT_EQ(report["results"][0]["concept"], "coss");
  EXPECT_NEAR(report["results"][0]["value"].get<double>(), 2.5, 1e-9);
  EXPECT_TRUE(report["cost_table"]["on_demand"].get<bool>());
}

TEST_F(Workspace, AnalyzeCollinearCore) {
  write_json_file(path("line.json"), instance_to_json(collinear_instance()));
  const Run r = run({"analyze", path("line.json"), "--concepts", "core"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json report = r.parsed();
  EXPECT_EQ(report["results"][0]["status"], "already stable");
  EXPECT_EQ(report["results"][0]["value"], 0.0);
  EXPECT_EQ(report["cost_table"]["coalitions"], 7);
}

TEST_F(Workspace, BoundsOnSymmetricSixPlayers) {
  ASSERT_EQ(run({"gen", "euclidean", "--n", "6", "--seed", "4", "--out", path("e.json")}).code, kExitOk);
  const Run r = run({"bounds", path("e.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json mst = r.parsed()["bounds"]["cos_mst_bound"];
  EXPECT_LE(mst["value"].get<double>(), 0.5 * mst["grand_cost"].get<double>() + kTolLp);
}

TEST_F(Workspace, AnalyzeEveryConceptIsReproducible) {
  ASSERT_EQ(run({"gen", "asymmetric", "--n", "7", "--seed", "2", "--out", path("a.json")}).code, kExitOk);
  const Run first = run({"analyze", path("a.json"), "--weight", "weak", "--jobs", "2"});
  const Run second = run({"analyze", path("a.json"), "--weight", "weak"});
  ASSERT_EQ(first.code, kExitOk) << first.err;
  EXPECT_EQ(first.parsed()["results"].size(), 7u);
  EXPECT_EQ(without_timing(first.parsed()), without_timing(second.parsed()));
  EXPECT_TRUE(first.err.empty());
}

TEST_F(Workspace, ExitCodes) {
  write_json_file(path("g3.json"), cost_game_to_json(reference_game_g3()));
  EXPECT_EQ(run({"analyze", path("g3.json"), "--concepts", "shapley"}).code, kExitUsage);
  EXPECT_EQ(run({"analyze", path("g3.json"), "--weight", "heavy"}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"analyze", path("missing.json")}).code, kExitInput);

  std::ofstream(path("bad.json")) << "{ not json";
  EXPECT_EQ(run({"analyze", path("bad.json")}).code, kExitInput);

  ASSERT_EQ(run({"gen", "euclidean", "--n", "17", "--seed", "1", "--out", path("big.json")}).code, kExitOk);
  const Run big = run({"analyze", path("big.json"), "--concepts", "cos"});
  EXPECT_EQ(big.code, kExitCapacity);
  EXPECT_TRUE(big.out.empty());
  EXPECT_NE(big.err.find("capacity"), std::string::npos);
}

TEST_F(Workspace, BatchSmallSymmetricCoresAreNonempty) {
  const json config = {{"families",
                        {{{"id", "stsg"}, {"kind", "euclidean"}, {"n", {5, 5}}, {"seeds", {1, 200}},
                          {"checks", {"core_nonempty", "semicore_nonempty"}}}}}};
  write_json_file(path("cfg.json"), config);
  const Run r = run({"batch", path("cfg.json"), "--out", path("suite.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.out << r.err;
  const json fam = r.parsed()["families"][0];
  EXPECT_EQ(fam["checks"]["core_nonempty"]["pass"], 200);
  EXPECT_EQ(fam["checks"]["semicore_nonempty"]["pass"], 200);

  std::ifstream csv(path("suite.csv"));
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header,
            "instance_id,n,symmetric,c_grand,cos,wOeC,sOeC,alpha,coss,sOeS,bound_mst,bound_max_marginal,"
            "bound_avg_ir,semicore_empty");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 200);
}

TEST_F(Workspace, BatchFormulaAndCostOfStabilityChecks) {
  const json config = {
      {"tol", 1e-7},
      {"families",
       {{{"id", "tables"}, {"kind", "table-semicore-stressed"}, {"n", {4, 8}}, {"seeds", {1, 6}},
         {"checks", {"coss_formula_eq_lp", "soes_formula_eq_lp", "coss_soes_ratio", "criterion_agrees_lp"}}},
        {{"id", "tsg"}, {"kind", "asymmetric"}, {"n", {4, 8}}, {"seeds", {1, 8}},
         {"checks", {json{{"name", "cos_eq_n_woec"}, {"tol", 1e-6}}, "alpha_relation", "alpha_le_3_2"}}}}}};
  write_json_file(path("cfg.json"), config);
  const Run r = run({"batch", path("cfg.json"), "--jobs", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.out << r.err;
  const json summary = r.parsed();
  EXPECT_EQ(summary["failures"], 0);
  EXPECT_EQ(summary["families"][0]["checks"]["coss_formula_eq_lp"]["pass"], 30);
}

TEST_F(Workspace, BatchReportsFirstCounterexample) {
  const json config = {{"families",
                        {{{"id", "stressed"}, {"kind", "table-semicore-stressed"}, {"n", {4, 4}}, {"seeds", {1, 3}},
                          {"checks", {"core_nonempty"}}}}}};
  write_json_file(path("cfg.json"), config);
  const Run r = run({"batch", path("cfg.json")});
  EXPECT_EQ(r.code, kExitSuiteFailure);
  const json check = r.parsed()["families"][0]["checks"]["core_nonempty"];
  EXPECT_EQ(check["fail"], 3);
  EXPECT_EQ(check["first_counterexample"]["instance_id"], "stressed/n4/s1");
  EXPECT_EQ(check["first_counterexample"]["instance"]["format"], kCostGameFormat);
}

TEST_F(Workspace, BatchSearchReportsFoundOrShortfall) {
  const json config = {{"families",
                        {{{"id", "search"}, {"kind", "search-asymmetric"}, {"n", {5, 5}}, {"seeds", {0, 0}},
                          {"attempts", 4000}, {"checks", {"criterion_agrees_lp", "coss_avg_ir_bound"}}}}}};
  write_json_file(path("cfg.json"), config);
  const Run r = run({"batch", path("cfg.json")});
  ASSERT_EQ(r.code, kExitOk) << r.out << r.err;
  const json search = r.parsed()["families"][0]["search"];
  EXPECT_EQ(search["searches"], 1);
  EXPECT_EQ(search["shortfall"].get<bool>(), search["found"] == 0);
}

TEST_F(Workspace, MalformedBatchConfigIsUsageError) {
  std::ofstream(path("cfg.json")) << R"({"families": [{"kind": "euclidean"}]})";
  EXPECT_EQ(run({"batch", path("cfg.json")}).code, kExitUsage);
  std::ofstream(path("cfg2.json")) << R"({"families": [{"kind": "euclidean", "n": 4, "seeds": 1, "checks": ["nope"]}]})";
  EXPECT_EQ(run({"batch", path("cfg2.json")}).code, kExitUsage);
  std::ofstream(path("cfg3.json")) << "[";
  EXPECT_EQ(run({"batch", path("cfg3.json")}).code, kExitUsage);
}

}  // namespace
}  // namespace coopstab
