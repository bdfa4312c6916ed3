#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "fracbs/cli.hpp"
#include "fracbs/stability.hpp"

using namespace fracbs;
using namespace fracbs::cli;

namespace {

struct Argv {
  std::vector<std::string> store;
  std::vector<const char*> ptrs;
  Argv(std::initializer_list<std::string> args) : store(args) {
    store.insert(store.begin(), "fracbs");
    for (const auto& s : store) ptrs.push_back(s.c_str());
  }
  int argc() const { return static_cast<int>(ptrs.size()); }
  const char* const* argv() const { return ptrs.data(); }
};

RunConfig parse(std::initializer_list<std::string> args) {
  Argv a(args);
  return parse_config(a.argc(), a.argv());
}

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::initializer_list<std::string> args) {
  Argv a(args);
  std::ostringstream out, err;
  const int code = run(a.argc(), a.argv(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("defaults without arguments") {
  const auto cfg = parse({});
  CHECK(cfg.command == "price");
  CHECK(cfg.market.alpha == 0.999);
  CHECK(cfg.market.K == 2.0);
  CHECK(cfg.grid.n == 500);
  CHECK(cfg.grid.N == 50);
  CHECK(cfg.theta == 0.5);
  CHECK_FALSE(cfg.theta_optimal);
}

TEST_CASE("optimal theta is resolved") {
  const auto cfg = parse({"price", "--alpha", "0.5", "--theta", "optimal"});
  CHECK(cfg.theta_optimal);
  CHECK(cfg.theta == doctest::Approx(0.36940).epsilon(1e-5));
  CHECK(cfg.theta == optimal_theta(0.5));
}

TEST_CASE("command defaults") {
  const auto time = parse({"converge"});
  CHECK(time.market.T == 1.0);
  CHECK(time.grid.n == 10);
  CHECK(time.theta == 0.0);
  CHECK(time.alphas.size() == 5);
  const auto sweep = parse({"alpha-sweep"});
  CHECK(sweep.grid.n == 1000);
  CHECK(sweep.grid.N == 140);
  CHECK(sweep.theta_optimal);
  const auto grid = parse({"error-grid"});
  CHECK(grid.thetas == std::vector<double>{0.0, 0.25, 0.5, 0.6, 0.9});
}

TEST_CASE("bad values name the key and exit 2") {
  const auto r = run_cli({"price", "--alpha", "1.5"});
  CHECK(r.code == kUsage);
  CHECK(r.err.find("alpha") != std::string::npos);
  CHECK(run_cli({"price", "--theta", "abc"}).code == kUsage);
  CHECK(run_cli({"price", "--n", "2"}).err.find("n:") != std::string::npos);
  CHECK(run_cli({"nonsense"}).code == kUsage);
  CHECK(run_cli({"price", "--bogus", "1"}).code == kUsage);
  CHECK(run_cli({"error-grid", "--grids", "12y4"}).code == kUsage);
}

TEST_CASE("unknown config keys are rejected") {
  const auto dir = scratch_dir("fracbs_cli_unknown");
  const auto file = dir / "bad.cfg";
  std::ofstream(file) << "alpha=0.5\nnot_a_key=3\n";
  CHECK_THROWS_AS(parse({"--config", file.string()}), UsageError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("echoed configuration parses back to the same run") {
  const auto dir = scratch_dir("fracbs_cli_echo");
  const auto original = parse({"alpha-sweep", "--alpha", "0.37", "--sigma", "0.3", "--K", "1.1",
                               "--maturities", "0.5,2", "--seed", "77", "--antithetic"});
  std::string text;
  for (const auto& line : echo_config(original)) text += line + "\n";
  const auto file = dir / "echo.cfg";
  std::ofstream(file) << text;
  const auto again = parse({"--config", file.string()});
  CHECK(again == original);

  // Same through a CSV artifact.
  const auto csv_cfg = parse({"price", "--alpha", "0.7", "--theta", "optimal", "--n", "100",
                              "--N", "20", "--output", dir.string()});
  std::ostringstream out, err;
  REQUIRE(dispatch(csv_cfg, out, err) == kOk);
  std::filesystem::path csv;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".csv") csv = e.path();
  REQUIRE_FALSE(csv.empty());
  std::ifstream in(csv);
  const std::string body((std::istreambuf_iterator<char>(in)), {});
  const auto cfg_file = dir / "from_csv.cfg";
  std::ofstream(cfg_file) << config_from_preamble(body);
  CHECK(parse({"--config", cfg_file.string()}) == csv_cfg);
  std::filesystem::remove_all(dir);
}

TEST_CASE("flags override config keys") {
  const auto dir = scratch_dir("fracbs_cli_override");
  const auto file = dir / "c.cfg";
  std::ofstream(file) << "alpha=0.4\nn=120\n";
  const auto cfg = parse({"--config", file.string(), "--alpha", "0.6"});
  CHECK(cfg.market.alpha == 0.6);
  CHECK(cfg.grid.n == 120);
  std::filesystem::remove_all(dir);
}

TEST_CASE("stability command warns and exits 0") {
  const auto r = run_cli({"stability", "--alpha", "0.5", "--theta", "0.6", "--n", "5000", "--N", "140"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("unstable") != std::string::npos);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("unwritable output directory exits 4") {
  const auto dir = scratch_dir("fracbs_cli_io");
  const auto blocker = dir / "file";
  std::ofstream(blocker) << "x";
  const auto r = run_cli({"bs", "--output", (blocker / "sub").string()});
  CHECK(r.code == kIo);
  std::filesystem::remove_all(dir);
}

TEST_CASE("converge writes a csv artifact") {
  const auto dir = scratch_dir("fracbs_cli_conv");
  const auto r = run_cli({"converge", "--variable", "space", "--alpha", "0.5", "--output", dir.string()});
  CHECK(r.code == kOk);
  int count = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    CHECK(e.path().filename().string().rfind("converge", 0) == 0);
    std::ifstream in(e.path());
    const std::string body((std::istreambuf_iterator<char>(in)), {});
    CHECK(body.find("study,alpha,theta,n,N,value,error,seconds") != std::string::npos);
    ++count;
  }
  CHECK(count == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("json format") {
  const auto dir = scratch_dir("fracbs_cli_json");
  CHECK(run_cli({"bs", "--format", "json", "--output", dir.string()}).code == kOk);
  int count = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    CHECK(e.path().extension() == ".json");
    ++count;
  }
  CHECK(count == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("help text") {
  std::string help;
  Argv a({"--help"});
  parse_config(a.argc(), a.argv(), &help);
  CHECK(help.find("--alpha") != std::string::npos);
  CHECK(run_cli({"--help"}).code == kOk);
}

TEST_CASE("exit codes stay in the documented set") {
  for (const auto& r : {run_cli({}), run_cli({"bs"}), run_cli({"price", "--alpha", "2"}),
                        run_cli({"price", "--format", "xml"}), run_cli({"--N", "0"})}) {
    const bool known = r.code == kOk || r.code == kUsage || r.code == kNumerical || r.code == kIo;
    CHECK(known);
  }
}
