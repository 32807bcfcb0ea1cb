#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rsv/cli.hpp"
#include "rsv/error.hpp"
#include "rsv/report.hpp"

using namespace rsv;
namespace fs = std::filesystem;

namespace {

const std::string kData = RSV_TEST_DATA_DIR;

struct Outcome {
  int code = -1;
  std::string out;
  Json report;
  fs::path dir;
};

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rsv_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  return {std::istreambuf_iterator<char>(is), {}};
}

Outcome run_cli(const std::string& name, const std::string& args) {
  Outcome o;
  o.dir = fresh_dir(name);
  const std::string cmd = std::string(RSV_CLI_PATH) + " " + args + " --out " + (o.dir / "out").string() + " > " +
                          (o.dir / "stdout.txt").string() + " 2> " + (o.dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.out = slurp(o.dir / "stdout.txt");
  if (fs::exists(o.dir / "out" / "report.json")) o.report = Json::parse(slurp(o.dir / "out" / "report.json"));
  return o;
}

std::string problem(const std::string& name) { return "--problem " + kData + "/" + name + ".json"; }

}  // namespace

TEST_CASE("level1 on the toy problem") {
  const auto o = run_cli("level1", "level1 " + problem("d1_tau05"));
  REQUIRE(o.code == 0);
  CHECK(o.report["status"] == "ok");
  const auto& sample = o.report["results"][0]["laplace"]["samples"][0];
  CHECK(sample["z"][0].get<double>() == 2.0);
  CHECK(sample["Phi"][0].get<double>() == doctest::Approx(0.169620).epsilon(1e-4));
  CHECK(Json::parse(o.out) == o.report);
  CHECK(fs::exists(o.dir / "out" / "psi_0.csv"));
  CHECK(fs::exists(o.dir / "out" / "Psi_0.csv"));
}

TEST_CASE("double root fails validation") {
  const auto o = run_cli("double", "level1 " + problem("double_root"));
  CHECK(o.code == 1);
  const auto& reasons = o.report["validation"]["reasons"];
  CHECK(std::find(reasons.begin(), reasons.end(), "DoubleRoot") != reasons.end());
  const auto v = run_cli("double_verify", "verify-all " + problem("double_root"));
  CHECK(v.code == 1);
  CHECK(v.out.find("validate") != std::string::npos);
  CHECK(v.out.find("FAIL") != std::string::npos);
}

TEST_CASE("configuration errors exit with 3") {
  CHECK(run_cli("missing", "solve --problem /nonexistent/problem.json").code == 3);
  CHECK(run_cli("command", "frobnicate " + problem("d1_tau05")).code == 3);
  CHECK(run_cli("flag", "solve " + problem("d1_tau05") + " --tol abc").code == 3);
  const fs::path bad = fresh_dir("bad_json") / "bad.json";
  std::ofstream(bad) << "{\"P\": [1, 1], \"Q\": ";
  CHECK(run_cli("malformed", "solve --problem " + bad.string()).code == 3);
  const fs::path noq = fresh_dir("no_q") / "noq.json";
  std::ofstream(noq) << "{\"P\": [1, 1]}";
  CHECK(run_cli("noq", "solve --problem " + noq.string()).code == 3);
}

TEST_CASE("numerical and condition failures map to their codes") {
  // frequency left of the half-plane
  CHECK(run_cli("halfplane", "level1 " + problem("d1_tau05") + " --z \"-1,0\"").code == 1);
  // requested ray runs into the other singular point
  CHECK(run_cli("ray", "solve " + problem("two_root") + " --theta 3.141592653589793").code == 1);
  // a very short ray cannot meet the tail target
  const fs::path shortray = fresh_dir("short_json") / "short.json";
  std::ofstream(shortray) << R"({"P": [1, 1], "Q": [0.5], "grid": {"T": 2}})";
  const auto o = run_cli("short", "laplace --problem " + shortray.string());
  CHECK(o.code == 2);
  CHECK(o.report["error"]["code"] == "TailTooLarge");
}

TEST_CASE("verify-all matrix") {
  const auto o = run_cli("verify_toy", "verify-all " + problem("d1_tau05"));
  CHECK(o.code == 0);
  CHECK(o.out.find("FAIL") == std::string::npos);
  int na = 0;
  for (const auto& row : o.report["checks"]) {
    if (row["verdict"] == "N/A") ++na;
    if (row["check"] == "smoothing") CHECK(row["verdict"] == "N/A");
  }
  CHECK(na == 3);
  const auto p = run_cli("verify_r", "verify-all " + problem("d1_r025"));
  CHECK(p.code == 0);
  CHECK(p.out.find("N/A") == std::string::npos);
}

TEST_CASE("reports are deterministic") {
  const auto a = run_cli("det_a", "solve " + problem("d1_r025") + " --seed 11");
  const auto b = run_cli("det_b", "solve " + problem("d1_r025") + " --seed 11");
  REQUIRE(a.code == 0);
  CHECK(slurp(a.dir / "out" / "report.json") == slurp(b.dir / "out" / "report.json"));
  CHECK(slurp(a.dir / "out" / "psi_0.csv") == slurp(b.dir / "out" / "psi_0.csv"));
  CHECK(a.report["config"]["seed"] == 11);
}

TEST_CASE("overrides reach the pipeline") {
  const auto o = run_cli("overrides", "laplace " + problem("two_root") +
                                          " --grid-panels 24 --nodes-per-panel 12 --tol 1e-11 --z \"0,-3;0,-5\"");
  REQUIRE(o.code == 0);
  const auto& cfg = o.report["config"];
  CHECK(cfg["grid"]["panels"] == 24);
  CHECK(cfg["grid"]["nodes_per_panel"] == 12);
  CHECK(cfg["solver"]["tol"].get<double>() == 1e-11);
  CHECK(cfg["z_samples"].size() == 2);
  const auto& res = o.report["results"][0];
  CHECK(res["index"] == 1);
  CHECK(res["theta"].get<double>() == doctest::Approx(kPi / 2));
  CHECK(res["laplace"]["samples"].size() == 2);
}

TEST_CASE("z lists") {
  const auto z = parse_z_list("2,0; 4,-1.5;8");
  REQUIRE(z.size() == 3);
  CHECK(z[1] == Complex{4.0, -1.5});
  CHECK(z[2] == Complex{8.0, 0.0});
  CHECK_THROWS_AS(parse_z_list("a,b"), Error);
  CHECK_THROWS_AS(parse_z_list(""), Error);
}

TEST_CASE("every error code has one exit status") {
  for (int c = 0; c <= static_cast<int>(ErrorCode::ConfigError); ++c) {
    const int e = exit_code(static_cast<ErrorCode>(c));
    CHECK((e == 1 || e == 2 || e == 3));
  }
  CHECK(exit_code(ErrorCode::ConfigError) == 3);
  CHECK(exit_code(ErrorCode::NotContracting) == 2);
  CHECK(exit_code(ErrorCode::TailTooLarge) == 2);
  CHECK(exit_code(ErrorCode::QuadratureFailure) == 2);
  CHECK(exit_code(ErrorCode::ConditionFailed) == 1);
}

TEST_CASE("run in process") {
  RunConfig cfg;
  cfg.command = "validate";
  cfg.problem = kData + "/two_root.json";
  std::ostringstream out, err;
  CHECK(run(cfg, out, err) == 0);
  const Json j = Json::parse(out.str());
  CHECK(j["singular_points"].size() == 2);
  CHECK(j["config"]["theta"].get<double>() == doctest::Approx(kPi / 2));
}
