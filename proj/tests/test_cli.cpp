#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lowreg/cli/app.hpp"

namespace fs = std::filesystem;
using namespace lowreg;

namespace {

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("LOWREG_TEST_TMP");
  fs::path root = env ? fs::path(env) : fs::temp_directory_path() / "lowreg_cli_test";
  fs::path p = root / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "lowreg");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<fs::path> files_matching(const fs::path& dir, const std::string& suffix) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
      out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string path_line(const std::string& out) {
  std::istringstream in(out);
  for (std::string l; std::getline(in, l);)
    if (l.rfind("path ", 0) == 0) return l.substr(5);
  return {};
}

} // namespace

TEST_CASE("help and usage errors", "[cli]") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"convergence", "--help"}).code == 0);
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"run", "--tau", "abc"}).code == 1);
}

TEST_CASE("gen-data", "[cli]") {
  const auto a = scratch("gen_a"), b = scratch("gen_b");
  const auto ra = run({"gen-data", "--alpha", "2", "--n", "256", "--seed", "7", "--out", a.string()});
  const auto rb = run({"gen-data", "--alpha", "2", "--n", "256", "--seed", "7", "--out", b.string()});
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  const fs::path fa = path_line(ra.out), fb = path_line(rb.out);
  REQUIRE(fs::exists(fa));
  CHECK(fa.filename() == fb.filename());
  CHECK(slurp(fa) == slurp(fb));
  const Field u = load_field(fa);
  CHECK(u.size() == 256);
  CHECK(std::abs(sobolev_norm(u, 0.0) - 1.0) <= 1e-12);
  CHECK(ra.out.find("h2 ") != std::string::npos);

  const auto c = scratch("gen_c");
  CHECK(run({"gen-data", "--alpha", "-1", "--out", c.string()}).code == 1);
  CHECK(run({"gen-data", "--n", "7", "--out", c.string()}).code == 1);
}

TEST_CASE("convergence command", "[cli]") {
  const auto dir = scratch("conv");
  const auto cfg = dir / "conv.json";
  std::ofstream(cfg) << R"({"steppers": ["slri1", "lri1"], "grid": {"n": 32}, "mu": 1.0,
    "data": {"kind": "plane_wave", "amplitude": 1, "mode": 1},
    "reference": {"kind": "exact"}, "taus": [0.015625, 0.0078125, 0.00390625], "final_time": 1})";
  const auto out = dir / "out";
  const auto r = run({"convergence", "--config", cfg.string(), "--out", out.string()});
  INFO(r.err);
  REQUIRE(r.code == 0);
  const auto csvs = files_matching(out, ".csv");
  REQUIRE(csvs.size() == 2);
  CHECK(slurp(csvs[0]).rfind("tau,err_l2,err_h1,wall_s\n", 0) == 0);
  const auto sidecars = files_matching(out, "_slri1.json");
  REQUIRE(sidecars.size() == 1);
  const auto j = nlohmann::json::parse(slurp(sidecars[0]));
  CHECK(j.at("stepper") == "slri1");
  CHECK(j.at("slopes").at("l2").get<double>() > 1.8);

  // the echoed config reloads to the same hash
  const auto echo = files_matching(out, ".config.json");
  REQUIRE(echo.size() == 1);
  const auto reloaded = config_from_json(nlohmann::json::parse(slurp(echo[0])));
  CHECK(j.at("config_hash") == config_hash(reloaded));

  SECTION("--tau replaces the ladder") {
    const auto out2 = dir / "single";
    REQUIRE(run({"convergence", "--config", cfg.string(), "--tau", "0.0078125", "--out", out2.string()}).code == 0);
    const auto rows = slurp(files_matching(out2, "_slri1.csv").at(0));
    CHECK(std::count(rows.begin(), rows.end(), '\n') == 2);
  }
  SECTION("refuses to overwrite its input") {
    CHECK(run({"convergence", "--config", cfg.string(), "--out", dir.string()}).code == 0);
    CHECK(fs::exists(cfg));
  }
}

TEST_CASE("config errors", "[cli]") {
  const auto dir = scratch("cfg");
  std::ofstream(dir / "typo.json") << R"({"stepperr": "slri1"})";
  const auto r = run({"convergence", "--config", (dir / "typo.json").string(), "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("stepperr") != std::string::npos);

  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK(run({"run", "--config", (dir / "broken.json").string(), "--out", dir.string()}).code == 1);
  CHECK(run({"run", "--stepper", "slri9", "--out", dir.string()}).code == 1);
  CHECK(run({"run", "--tau", "0.3", "--final-time", "1", "--out", dir.string()}).code == 1);
}

TEST_CASE("io errors", "[cli]") {
  const auto dir = scratch("io");
  CHECK(run({"run", "--config", (dir / "missing.json").string(), "--out", dir.string()}).code == 3);
  std::ofstream(dir / "blocker") << "x";
  CHECK(run({"gen-data", "--out", (dir / "blocker" / "sub").string()}).code == 3);
}

TEST_CASE("run command", "[cli]") {
  SECTION("normal run") {
    const auto dir = scratch("run_ok");
    const auto r = run({"run", "--stepper", "slri2", "--n", "64", "--tau", "0.01", "--steps", "50",
                        "--mu", "-1", "--out", dir.string()});
    INFO(r.err);
    REQUIRE(r.code == 0);
    const auto csv = files_matching(dir, ".csv");
    REQUIRE(csv.size() == 1);
    const auto text = slurp(csv[0]);
    CHECK(text.rfind("t,mass_rel,energy_rel\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 52);
    const auto fields = files_matching(dir, "_final.field");
    REQUIRE(fields.size() == 1);
    CHECK(load_field(fields[0]).size() == 64);
  }
  SECTION("focusing blow-up") {
    const auto dir = scratch("run_blowup");
    const auto r = run({"run", "--stepper", "slri1", "--mu", "-50", "--tau", "0.05", "--final-time", "10",
                        "--n", "64", "--alpha", "1", "--seed", "3", "--out", dir.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("exceeded") != std::string::npos);
    const auto csv = files_matching(dir, ".csv");
    REQUIRE(csv.size() == 1);
    const auto text = slurp(csv[0]);
    CHECK(std::count(text.begin(), text.end(), '\n') >= 2);
  }
  SECTION("initial data from a file") {
    const auto dir = scratch("run_file");
    const auto g = run({"gen-data", "--n", "32", "--alpha", "1", "--out", dir.string()});
    REQUIRE(g.code == 0);
    const auto cfg = dir / "from_file.json";
    std::ofstream(cfg) << R"({"stepper": "slri1", "grid": {"n": 32}, "data": {"kind": "file", "path": ")"
                       << path_line(g.out) << R"("}, "tau": 0.01, "steps": 10})";
    CHECK(run({"run", "--config", cfg.string(), "--out", (dir / "o").string()}).code == 0);
    CHECK(run({"run", "--config", cfg.string(), "--n", "64", "--out", (dir / "p").string()}).code == 1);
  }
}

TEST_CASE("conserve and timing commands", "[cli]") {
  const auto dir = scratch("conserve");
  const auto r = run({"conserve", "--n", "32", "--tau", "0.01", "--final-time", "1", "--out", dir.string()});
  INFO(r.err);
  REQUIRE(r.code == 0);
  CHECK(files_matching(dir, ".csv").size() == 4);
  CHECK(r.out.find("slri2") != std::string::npos);

  const auto tdir = scratch("timing");
  const auto t = run({"timing", "--n", "32", "--stepper", "slri1,slri2", "--final-time", "0.5",
                      "--out", tdir.string()});
  INFO(t.err);
  REQUIRE(t.code == 0);
  const auto csv = files_matching(tdir, ".csv");
  REQUIRE(csv.size() == 1);
  CHECK(slurp(csv[0]).rfind("stepper,tau,steps,err_l2,wall_s\n", 0) == 0);
}
