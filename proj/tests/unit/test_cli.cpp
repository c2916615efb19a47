#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "conedyn/cli.hpp"

using namespace conedyn;
using cli::Scenario;
using cli::ScenarioError;
using nlohmann::json;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("conedyn_test_" + name);
  std::ofstream(path) << text;
  return path;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "conedyn");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool mentions(const ScenarioError& e, const std::string& key) {
  for (const auto& p : e.problems())
    if (p.find(key) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("minimal scenario gets documented defaults") {
  const Scenario s = cli::parse_scenario(json{{"system", "coop2d"}, {"experiment", "converge"}});
  CHECK(s.T == 100.0);
  CHECK(s.dt == 1e-3);
  CHECK(s.n == 1000);
  CHECK(s.seed == 0);
  CHECK(s.field.is_null());
}

TEST_CASE("unknown system is named in the validation error") {
  try {
    cli::parse_scenario(json{{"system", "nope"}});
    FAIL("expected a validation error");
  } catch (const ScenarioError& e) {
    CHECK(mentions(e, "system"));
    CHECK(mentions(e, "experiment"));
    CHECK(std::string(e.what()).find("system") != std::string::npos);
  }
}

TEST_CASE("every violation is listed, unknown keys carry their path") {
  const json j = {{"system", "coop2d"}, {"experiment", "converge"}, {"T", -1},
                  {"n", 0},             {"bogus", 1},               {"field", {{"field", "constant"}, {"extra", 2}}}};
  try {
    cli::parse_scenario(j);
    FAIL("expected a validation error");
  } catch (const ScenarioError& e) {
    CHECK(mentions(e, "/T"));
    CHECK(mentions(e, "/n"));
    CHECK(mentions(e, "/bogus"));
    CHECK(mentions(e, "/field/extra"));
    CHECK(mentions(e, "/field/cone"));
    CHECK(e.problems().size() == 5);
  }
}

TEST_CASE("scenario round-trips through save and load") {
  Scenario s;
  s.system = "spd_lyapunov";
  s.experiment = "check-dp";
  s.field = json{{"field", "homogeneous_spd"}, {"n", 2}};
  s.T = 12.5;
  s.dt = 5e-4;
  s.n = 17;
  s.seed = 42;
  s.out = "report.json";
  const auto path = std::filesystem::temp_directory_path() / "conedyn_test_roundtrip.json";
  cli::save_scenario(s, path.string());
  CHECK(cli::load_scenario(path.string()) == s);
}

TEST_CASE("parse errors report line and column") {
  const auto path = temp_file("broken.json", "{\n  \"system\": \"coop2d\",\n  \"T\": ,\n}\n");
  try {
    cli::load_scenario(path.string());
    FAIL("expected a parse error");
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
}

TEST_CASE("cli examples") {
  const auto dp = run({"check-dp", "--system", "coop2d", "--field", "orthant", "--seed", "7"});
  CHECK(dp.code == cli::kOk);
  CHECK(json::parse(dp.out)["counts"]["status"] == "SDP");

  const auto conv = run({"converge", "--system", "rotation2d", "--n", "10"});
  CHECK(conv.code == cli::kVerdictFailed);
  const auto report = json::parse(conv.out);
  CHECK(report["counts"]["converged"] == 0);
  CHECK(report["counts"]["precondition_sdp"] == false);

  const auto list = run({"list"});
  CHECK(list.code == cli::kOk);
  for (const char* key : {"coop2d", "metzler_linear", "rotation2d", "bistable1d", "spd_lyapunov"}) {
    CHECK(list.out.find(key) != std::string::npos);
  }
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"check-dp", "--system", "nope"}).code == cli::kUsage);
  CHECK(run({"check-dp", "--system", "coop2d", "--field", "homogeneous_spd"}).code == cli::kUsage);
  CHECK(run({"check-dp", "--system", "rotation2d", "--n", "10"}).code == cli::kVerdictFailed);
  // The Lyapunov flow drives I towards 0; after T = 50 the eigenvalues are
  // below the positive-definiteness threshold.
  CHECK(run({"pf", "--system", "spd_lyapunov", "--T", "50"}).code == cli::kNumeric);
  CHECK(run({"check-dp", "--help"}).code == cli::kOk);
}

TEST_CASE("cli runs a scenario file and honours flag overrides") {
  const auto path = temp_file("scenario.json",
                              R"({"system":"metzler_linear","experiment":"check-dp","n":5,"seed":3})");
  const auto a = run({"check-dp", "--scenario", path.string()});
  const auto b = run({"check-dp", "--scenario", path.string()});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["params"]["x_samples"] == 5);
  const auto c = run({"check-dp", "--scenario", path.string(), "--n", "7"});
  CHECK(json::parse(c.out)["params"]["x_samples"] == 7);
  CHECK(run({"converge", "--scenario", path.string()}).code == cli::kUsage);
}

TEST_CASE("cli accepts JSON field specs") {
  const auto r = run({"check-dp", "--system", "coop2d", "--n", "5", "--field",
                      R"({"field":"constant","cone":{"type":"polyhedral","generators":[[1,0],[0,1]],"facet_normals":[[1,0],[0,1]]}})"});
  CHECK(r.code == cli::kOk);
  CHECK(json::parse(r.out)["counts"]["status"] == "SDP");
}

TEST_CASE("cli writes JSON and CSV files") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto out = (dir / "conedyn_test_conv.json").string();
  const auto csv = (dir / "conedyn_test_conv.csv").string();
  const auto r = run({"converge", "--system", "bistable1d", "--n", "6", "--T", "30", "--out", out, "--csv", csv});
  CHECK(r.code == cli::kOk);
  std::ifstream jf(out);
  const json j = json::parse(jf);
  CHECK(j["report_type"] == "converge");
  std::ifstream cf(csv);
  std::string line;
  int lines = 0;
  while (std::getline(cf, line)) ++lines;
  CHECK(lines == 7);
}
