// End-to-end checks against the built binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "crosstrainer/linmodel.hpp"
#include "crosstrainer/rng.hpp"
#include "crosstrainer/reporting.hpp"
#include "test_util.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string out_path = testutil::temp_path("cli_output.txt");
  std::string cmd = std::string(CROSSTRAINER_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return {code, ss.str()};
}

const char* kTinySynthetic =
    "--synthetic --n-target 240 --n-source 400 --d 6 --sigma 1.5 --noise-sd 1 "
    "--seed 3 --l2 1e-4 --max-epochs 30 --tolerance 1e-3 --k 4";

json read_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("cli: no subcommand is a usage error") {
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("cli: fit echoes the defaults and writes model plus report") {
  std::string report = testutil::temp_path("fit_report.json");
  std::string model = testutil::temp_path("fit_model.txt");
  fs::remove(report);
  fs::remove(model);

  RunResult r = run_cli(std::string("fit ") + kTinySynthetic + " --delta 0.05 --out " + report +
                        " --model-out " + model);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("alpha_star") != std::string::npos);
  CHECK(r.output.find("probe 1 ") != std::string::npos);

  json j = read_json(report);
  CHECK(j["command"] == "fit");
  CHECK(j["config"]["delta"] == 0.05);
  CHECK(j["config"]["k"] == 4);
  CHECK(j["search"]["strategy"] == "gss");
  CHECK(j["alpha_star"].get<double>() >= 0.0);
  CHECK(j["alpha_star"].get<double>() <= 1.0);

  crosstrainer::TrainConfig cfg;
  crosstrainer::LinearModel m = crosstrainer::load_model(model, &cfg);
  CHECK(m.dim() == 6);
  CHECK(cfg.l2_penalty == 1e-4);
}

TEST_CASE("cli: fit defaults are delta=0.01 and k=5") {
  std::string report = testutil::temp_path("fit_defaults.json");
  fs::remove(report);
  RunResult r = run_cli(
      "fit --synthetic --n-target 150 --n-source 200 --d 4 --seed 1 --l2 1e-4 "
      "--max-epochs 15 --tolerance 3e-3 --out " +
      report + " --model-out " + testutil::temp_path("fit_defaults_model.txt"));
  REQUIRE(r.exit_code == 0);
  json j = read_json(report);
  CHECK(j["config"]["delta"] == 0.01);
  CHECK(j["config"]["k"] == 5);
}

TEST_CASE("cli: missing source file exits 3 and leaves no partial outputs") {
  std::string report = testutil::temp_path("missing_report.json");
  std::string model = testutil::temp_path("missing_model.txt");
  fs::remove(report);
  fs::remove(model);
  std::string target = testutil::write_file("present.csv", "a,y\n1,0\n2,1\n-1,0\n3,1\n");
  RunResult r = run_cli("fit --target " + target + " --source " +
                        testutil::temp_path("definitely_absent.csv") + " --out " + report +
                        " --model-out " + model);
  CHECK(r.exit_code == 3);
  CHECK(!fs::exists(report));
  CHECK(!fs::exists(model));
}

TEST_CASE("cli: malformed input exits 2") {
  std::string bad = testutil::write_file("bad_labels.csv", "a,y\n1,7\n");
  std::string ok = testutil::write_file("ok_tiny.csv", "a,y\n1,0\n2,1\n");
  RunResult r = run_cli("fit --target " + bad + " --source " + ok);
  CHECK(r.exit_code == 2);
}

TEST_CASE("cli: benchmark table, report fields, reproducibility") {
  std::string report1 = testutil::temp_path("bench1.json");
  std::string report2 = testutil::temp_path("bench2.json");
  std::string args = std::string("benchmark ") + kTinySynthetic +
                     " --delta 0.05 --downsample-target 120 --out ";
  RunResult r1 = run_cli(args + report1);
  REQUIRE(r1.exit_code == 0);
  CHECK(r1.output.find("crosstrainer") != std::string::npos);
  CHECK(r1.output.find("speed-up") != std::string::npos);

  json j = read_json(report1);
  CHECK(j["command"] == "benchmark");
  for (const char* name :
       {"target", "source", "all", "crosstrainer", "crosstrainer_unopt", "pred", "import",
        "feataug"}) {
    bool found = false;
    for (const auto& m : j["methods"])
      if (m["name"] == name) found = true;
    CHECK_MESSAGE(found, name);
  }
  CHECK(j["timing"].contains("speedup_total"));
  CHECK(j["data"]["n_target_train"] == 120);

  RunResult r2 = run_cli(args + report2);
  REQUIRE(r2.exit_code == 0);
  CHECK(crosstrainer::without_timing(read_json(report1)).dump() ==
        crosstrainer::without_timing(read_json(report2)).dump());
}

TEST_CASE("cli: sweep-sigma echoes the requested sigmas in order") {
  std::string report = testutil::temp_path("sweep.json");
  RunResult r = run_cli(std::string("sweep-sigma ") + kTinySynthetic +
                        " --delta 0.1 --downsample-target 100 --sigmas 2.5,0.5,1.0 --out " +
                        report);
  REQUIRE(r.exit_code == 0);
  json j = read_json(report);
  CHECK(j["command"] == "sweep-sigma");
  REQUIRE(j["runs"].size() == 3);
  CHECK(j["sigmas"] == json::array({2.5, 0.5, 1.0}));
  CHECK(j["runs"][0]["sigma"] == 2.5);
  CHECK(j["runs"][1]["sigma"] == 0.5);
  CHECK(j["runs"][2]["sigma"] == 1.0);

  RunResult bad = run_cli("sweep-sigma --synthetic --sigmas -1");
  CHECK(bad.exit_code == 2);
  RunResult nofiles = run_cli("sweep-sigma --sigmas 1  --target x.csv --source y.csv");
  CHECK(nofiles.exit_code == 2);  // sweep requires the synthetic generator
}

TEST_CASE("cli: search-trace emits one series per strategy") {
  std::string report = testutil::temp_path("trace.json");
  RunResult r = run_cli(std::string("search-trace ") + kTinySynthetic +
                        " --delta 0.01 --random-probes 17 --out " + report);
  REQUIRE(r.exit_code == 0);
  json j = read_json(report);
  CHECK(j["command"] == "search-trace");
  auto& traces = j["traces"];
  CHECK(traces["gss"].size() <= 25);
  CHECK(traces["grid"].size() == 101);
  CHECK(traces["random"].size() == 17);
  for (const char* strategy : {"gss", "grid", "random"}) {
    double best = -1.0;
    for (const auto& point : traces[strategy]) {
      double b = point["best_so_far"].get<double>();
      CHECK(b >= best);  // monotone nondecreasing
      best = b;
    }
  }
}

TEST_CASE("cli: bound prints the curve and the minimizer") {
  std::string report = testutil::temp_path("bound.json");
  RunResult r = run_cli("bound --beta 0.5 --A 1 --B 1 --grid-step 0.05 --out " + report);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("alpha_g") != std::string::npos);
  CHECK(r.output.find("convex true") != std::string::npos);
  json j = read_json(report);
  CHECK(j["convex"] == true);
  CHECK(std::abs(j["alpha_g"].get<double>() - 0.78868) < 1e-3);
  CHECK(j["table"].size() == 21);
}

TEST_CASE("cli: sparse input files train end to end") {
  std::ostringstream target, source;
  target << "#d=3\n";
  source << "#d=3\n";
  crosstrainer::Rng rng(8);
  for (int i = 0; i < 60; ++i) {
    double a = rng.normal(), b = rng.normal();
    target << (a + b > 0 ? 1 : 0) << " 1:" << a << " 2:" << b << "\n";
    source << (a + b > 0 ? 1 : 0) << " 1:" << a << " 3:" << b << "\n";
  }
  std::string tpath = testutil::write_file("sparse_target.txt", target.str());
  std::string spath = testutil::write_file("sparse_source.txt", source.str());
  RunResult r = run_cli("fit --target " + tpath + " --source " + spath +
                        " --delta 0.2 --k 3 --l2 1e-3 --max-epochs 10 --model-out " +
                        testutil::temp_path("sparse_model.txt"));
  CHECK(r.exit_code == 0);
}
