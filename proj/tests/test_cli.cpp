#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kScenarios = PMC_SCENARIO_DIR;

fs::path workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "pmc_test_cli";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load(const fs::path& p) { return json::parse(slurp(p), nullptr, true, true); }

struct Run {
  int code;
  std::string log;
  fs::path out;
};

// Copies a scenario with its output redirected under the work directory.
fs::path stage(const std::string& scenario, const std::string& tag,
               const std::function<void(json&)>& edit = {}) {
  json doc = load(kScenarios / scenario);
  for (const char* key : {"f", "initial"}) {
    if (doc[key]["params"].contains("path"))
      doc[key]["params"]["path"] = (kScenarios / doc[key]["params"]["path"].get<std::string>()).string();
  }
  doc["output"]["directory"] = (workdir() / tag / "out").string();
  if (edit) edit(doc);
  const fs::path cfg = workdir() / tag / "run.cfg";
  fs::create_directories(cfg.parent_path());
  std::ofstream(cfg) << doc.dump(2);
  return cfg;
}

Run run(const std::string& args, const fs::path& cfg) {
  const fs::path log = cfg.parent_path() / "log.txt";
  const std::string cmd = std::string("\"") + PMC_CLI_PATH + "\" " + args + " --config \"" +
                          cfg.string() + "\" > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  json doc = load(cfg);
  return {code, slurp(log), doc["output"]["directory"].get<std::string>()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("evolve: gaussian scenario converges and writes every artifact") {
  const Run r = run("evolve", stage("gaussian_cmc.cfg", "gaussian"));
  CAPTURE(r.log);
  CHECK(r.code == 0);
  const json summary = load(r.out / "summary.json");
  CHECK(summary["status"] == "Converged");
  CHECK(summary["audit"]["overall_pass"] == true);
  const long steps = summary["steps"];
  CHECK(fs::exists(r.out / "snapshots" / "step_0.csv"));
  CHECK(fs::exists(r.out / "snapshots" / ("step_" + std::to_string(steps) + ".csv")));
  CHECK(fs::exists(r.out / "snapshots" / "step_100000.csv"));

  const auto snap = lines(slurp(r.out / "snapshots" / ("step_" + std::to_string(steps) + ".csv")));
  CHECK(snap.front() == "x1,u,H,vtilde,kappa1");
  REQUIRE(snap.size() == 65);
  for (std::size_t i = 1; i < snap.size(); ++i) {
    const double u = std::stod(snap[i].substr(snap[i].find(',') + 1));
    CHECK(std::abs(u + 0.3) <= 1e-6);
  }

  const auto series = lines(slurp(r.out / "series.csv"));
  CHECK(series.front() ==
        "time,dt,sup_abs_residual,min_signed_residual,max_vtilde,max_abs_kappa,max_abs_H,u_min,u_max,max_du_norm");
  CHECK(series.size() == summary["records"].get<std::size_t>() + 1);
}

TEST_CASE("evolve: repeated runs give identical series") {
  auto shorten = [](json& d) {
    d["flow"]["max_steps"] = 3000;
    d["output"]["record_every"] = 100;
  };
  const Run a = run("evolve", stage("gaussian_cmc.cfg", "det_a", shorten));
  const Run b = run("evolve", stage("gaussian_cmc.cfg", "det_b", shorten));
  CHECK(a.code == 1);  // step budget, not convergence
  CHECK(load(a.out / "summary.json")["status"] == "MaxStepsReached");
  CHECK(slurp(a.out / "series.csv") == slurp(b.out / "series.csv"));
  CHECK(slurp(a.out / "series.csv").size() > 1000);
}

TEST_CASE("evolve: cosh repeller diverges") {
  const Run r = run("evolve", stage("cosh_repeller.cfg", "cosh"));
  CHECK(r.code == 1);
  CHECK(r.log.find("Diverged") != std::string::npos);
  const json summary = load(r.out / "summary.json");
  CHECK(summary["status"] == "Diverged");
  CHECK(summary["audit"]["overall_pass"] == false);
}

TEST_CASE("evolve: unwritable output directory") {
  // a path below a regular file cannot be created, even with elevated rights
  const fs::path blocker = workdir() / "blocker";
  std::ofstream(blocker) << "x";
  const Run r = run("evolve", stage("cosh_repeller.cfg", "ioerr", [&](json& d) {
    d["output"]["directory"] = (blocker / "out").string();
  }));
  CHECK(r.code == 1);
  CHECK(r.log.find("IoError") != std::string::npos);
}

TEST_CASE("evolve: invalid configuration") {
  const Run r = run("evolve", stage("cosh_repeller.cfg", "badcfg", [](json& d) { d["grid"]["points"] = 7; }));
  CHECK(r.code == 1);
  CHECK(r.log.find("grid.points") != std::string::npos);
}

TEST_CASE("verify: sine graph passes and a corrupted model fails") {
  const Run ok = run("verify", stage("minkowski_sine.cfg", "verify_ok"));
  CAPTURE(ok.log);
  CHECK(ok.code == 0);
  const json v = load(ok.out / "verify.json");
  CHECK(v["passed"] == true);
  bool saw_ratio = false;
  for (const auto& c : v["checks"])
    if (c["name"] == "dual_path") {
      const double q = c["details"]["ratios"][0];
      CHECK(q >= 3.5);
      CHECK(q <= 4.5);
      saw_ratio = true;
    }
  CHECK(saw_ratio);

  const Run bad = run("verify", stage("gaussian_slices.cfg", "verify_bad", [](json& d) {
    d["spacetime"]["test_flip_christoffel"] = true;
  }));
  CHECK(bad.code == 1);
  const json vb = load(bad.out / "verify.json");
  CHECK(vb["passed"] == false);
}

TEST_CASE("verify: constant graphs in every model") {
  const char* models[] = {
      R"({"type": "minkowski_torus"})",
      R"({"type": "flrw_torus", "params": {"scale": "gaussian"}})",
      R"({"type": "flrw_torus", "params": {"scale": "cosh"}})",
      R"({"type": "flrw_torus", "params": {"scale": "exponential", "H0": 0.7}})",
      R"({"type": "flrw_torus", "params": {"scale": "power", "p": 0.5}})",
      R"({"type": "conformal_bump", "params": {"A": 0.2, "waves": 2}})",
  };
  int k = 0;
  for (const char* m : models) {
    CAPTURE(m);
    const Run r = run("verify", stage("gaussian_slices.cfg", "verify_c" + std::to_string(k++),
                                      [&](json& d) { d["spacetime"] = json::parse(m); }));
    CAPTURE(r.log);
    CHECK(r.code == 0);
  }
}

TEST_CASE("refine: curvature and slice studies") {
  const Run c = run("refine --levels 32,64,128", stage("minkowski_sine.cfg", "refine_curv"));
  CAPTURE(c.log);
  CHECK(c.code == 0);
  const json tc = load(c.out / "refine.json");
  CHECK(tc["verdict"] == "order_ok");
  for (int i = 0; i < 2; ++i) {
    const double order = tc["rows"][i]["observed_order"];
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
  }

  const Run s = run("refine --levels 16,32,64", stage("gaussian_slices.cfg", "refine_slice"));
  CHECK(s.code == 0);
  CHECK(load(s.out / "refine.json")["verdict"] == "exact");

  const Run f = run("refine --levels 8,16", stage("gaussian_cmc.cfg", "refine_flow"));
  CHECK(f.code == 0);
  CHECK(load(f.out / "refine.json")["verdict"] == "exact");
}

TEST_CASE("refine: sampled data has no reference") {
  const Run r = run("refine --levels 16,32", stage("sampled_f.cfg", "refine_sampled"));
  CHECK(r.code == 1);
  CHECK(r.log.find("NoReference") != std::string::npos);
  CHECK(load(r.out / "refine.json")["error"] == "NoReference");
}

TEST_CASE("slice-scan") {
  const Run g = run("slice-scan --from -1 --to 1 --steps 5", stage("gaussian_slices.cfg", "scan_g"));
  CHECK(g.code == 0);
  const auto rows = lines(slurp(g.out / "slices.csv"));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "x0,H_slice");
  const double expect[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  for (int i = 0; i < 5; ++i) {
    const std::string& row = rows[i + 1];
    CHECK(std::stod(row.substr(row.find(',') + 1)) == doctest::Approx(expect[i]).epsilon(1e-14));
  }

  const Run m = run("slice-scan --from 0 --to 2 --steps 3", stage("minkowski_sine.cfg", "scan_m"));
  CHECK(m.code == 0);
  const auto flat = lines(slurp(m.out / "slices.csv"));
  CHECK(flat.size() == 4);
  for (std::size_t i = 1; i < flat.size(); ++i)
    CHECK(std::stod(flat[i].substr(flat[i].find(',') + 1)) == 0.0);

  const Run b = run("slice-scan --from 0 --to 1 --steps 3", stage("maximal_bump.cfg", "scan_b"));
  CHECK(b.code == 1);
  CHECK(b.log.find("UnsupportedModel") != std::string::npos);
}

TEST_CASE("usage errors exit with status 1") {
  const fs::path cfg = stage("minkowski_sine.cfg", "usage");
  CHECK(run("frobnicate", cfg).code == 1);
  CHECK(run("slice-scan --from 0", cfg).code == 1);
}
