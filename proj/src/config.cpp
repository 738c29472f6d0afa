#include "pmc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pmc/errors.hpp"

namespace pmc {

namespace {

using nlohmann::json;
using Code = ConfigIssue::Code;

class Parser {
 public:
  explicit Parser(std::filesystem::path base) : base_(std::move(base)) {}

  void fail(const std::string& path, const std::string& msg, Code code = Code::Invalid) {
    issues_.push_back({path, msg, code});
  }
  std::vector<ConfigIssue>& issues() { return issues_; }

  // Object lookup; reports keys outside `allowed`.
  const json* section(const json& parent, const std::string& key, const std::string& path,
                      bool required) {
    const std::string here = path.empty() ? key : path + "." + key;
    if (!parent.is_object() || !parent.contains(key)) {
      if (required) fail(here, "missing section");
      return nullptr;
    }
    const json& node = parent.at(key);
    if (!node.is_object()) {
      fail(here, "expected an object");
      return nullptr;
    }
    return &node;
  }

  void allow(const json* node, const std::string& path, std::set<std::string> keys) {
    if (!node) return;
    for (const auto& [k, _] : node->items())
      if (!keys.contains(k)) fail(path + "." + k, "unknown key");
  }

  template <typename T>
  T get(const json* node, const std::string& path, const std::string& key, T fallback,
        bool required = false) {
    const std::string here = path + "." + key;
    if (!node || !node->contains(key)) {
      if (required) fail(here, "missing value");
      return fallback;
    }
    try {
      const json& v = node->at(key);
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw std::invalid_argument("");
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!v.is_number_integer()) throw std::invalid_argument("");
      }
      return v.get<T>();
    } catch (const std::exception&) {
      fail(here, "wrong type");
      return fallback;
    }
  }

  // A scalar broadcast to every dimension, or one entry per dimension.
  template <typename T>
  std::array<T, kMaxDim> per_dim(const json* node, const std::string& path,
                                 const std::string& key, int dim, T fallback, bool required) {
    std::array<T, kMaxDim> out{};
    out.fill(fallback);
    const std::string here = path + "." + key;
    if (!node || !node->contains(key)) {
      if (required) fail(here, "missing value");
      return out;
    }
    const json& v = node->at(key);
    try {
      if (v.is_array()) {
        if (static_cast<int>(v.size()) != dim) {
          fail(here, "expected " + std::to_string(dim) + " entries");
          return out;
        }
        for (int k = 0; k < dim; ++k) out[k] = v.at(k).get<T>();
      } else {
        const T s = v.get<T>();
        for (int k = 0; k < dim; ++k) out[k] = s;
      }
    } catch (const std::exception&) {
      fail(here, "wrong type");
    }
    return out;
  }

  std::optional<ScalarField> table(const json* node, const std::string& path, const GridSpec& grid,
                                   bool grid_ok) {
    const auto file = get<std::string>(node, path, "path", "", true);
    if (file.empty()) return std::nullopt;
    std::filesystem::path p(file);
    if (p.is_relative()) p = base_ / p;
    std::ifstream in(p);
    if (!in) {
      fail(path + ".path", "cannot read " + p.string());
      return std::nullopt;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    for (char& c : text)
      if (c == ',' || c == ';') c = ' ';
    std::istringstream values(text);
    std::vector<double> data;
    std::string token;
    while (values >> token) {
      try {
        std::size_t used = 0;
        data.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        fail(path + ".path", "non-numeric entry '" + token + "' in " + p.string());
        return std::nullopt;
      }
    }
    if (!grid_ok) return std::nullopt;
    if (data.size() != grid.size()) {
      fail(path + ".path",
           "table has " + std::to_string(data.size()) + " values, grid has " +
               std::to_string(grid.size()) + " nodes",
           Code::GridMismatch);
      return std::nullopt;
    }
    return ScalarField(grid, std::move(data));
  }

 private:
  std::filesystem::path base_;
  std::vector<ConfigIssue> issues_;
};

}  // namespace

RefinementScenario RunConfig::refinement_scenario() const {
  RefinementScenario s;
  s.kind = refine_study;
  s.model = model;
  s.initial = initial;
  s.f = f;
  s.flow = flow;
  s.dim = grid.dim();
  s.lengths = {grid.length(0), grid.length(1)};
  return s;
}

RunConfig parse_config(std::string_view document, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError({{"(document)", e.what(), Code::Invalid}});
  }
  if (!doc.is_object()) throw ConfigError({{"(document)", "expected a JSON object", Code::Invalid}});

  Parser P(base_dir);
  RunConfig cfg;
  P.allow(&doc, "", {"spacetime", "grid", "f", "initial", "flow", "audit", "output", "verify",
                     "refine"});

  // grid first: other sections depend on its dimension and lengths
  const json* grid = P.section(doc, "grid", "", true);
  P.allow(grid, "grid", {"dim", "points", "lengths"});
  const int dim = P.get<int>(grid, "grid", "dim", 1, true);
  bool grid_ok = grid != nullptr;
  if (dim < 1 || dim > kMaxDim) {
    P.fail("grid.dim", "must be 1 or 2");
    grid_ok = false;
  }
  const int d = std::clamp(dim, 1, kMaxDim);
  const auto points = P.per_dim<int>(grid, "grid", "points", d, 8, true);
  const auto lengths = P.per_dim<double>(grid, "grid", "lengths", d, 1.0, false);
  for (int k = 0; k < d; ++k) {
    if (points[k] < 8 || points[k] % 2 != 0) {
      P.fail("grid.points", "node counts must be even and >= 8, got " + std::to_string(points[k]));
      grid_ok = false;
    }
    if (!(lengths[k] > 0.0)) {
      P.fail("grid.lengths", "periods must be positive");
      grid_ok = false;
    }
  }
  if (grid_ok) cfg.grid = GridSpec(d, points, {lengths[0], lengths[1]});

  // spacetime
  const json* st = P.section(doc, "spacetime", "", true);
  P.allow(st, "spacetime", {"type", "params", "test_flip_christoffel"});
  const auto type = P.get<std::string>(st, "spacetime", "type", "", true);
  const json* params = st ? P.section(*st, "params", "spacetime", false) : nullptr;
  const std::string pp = "spacetime.params";
  if (type == "minkowski_torus") {
    P.allow(params, pp, {});
    cfg.model = SpacetimeModel::minkowski(d);
  } else if (type == "flrw_torus") {
    P.allow(params, pp, {"scale", "p", "H0"});
    const auto scale = P.get<std::string>(params, pp, "scale", "gaussian");
    const double p = P.get<double>(params, pp, "p", 1.0);
    const double h0 = P.get<double>(params, pp, "H0", 1.0);
    ScaleFactor sf = ScaleFactor::Gaussian;
    if (scale == "gaussian") sf = ScaleFactor::Gaussian;
    else if (scale == "power") sf = ScaleFactor::Power;
    else if (scale == "exponential") sf = ScaleFactor::Exponential;
    else if (scale == "cosh") sf = ScaleFactor::Cosh;
    else P.fail(pp + ".scale", "unknown scale factor '" + scale + "'", Code::UnknownModel);
    if (sf == ScaleFactor::Power && !(p > 0.0)) P.fail(pp + ".p", "must be positive");
    cfg.model = SpacetimeModel::flrw(d, sf, p > 0.0 ? p : 1.0, h0);
  } else if (type == "conformal_bump") {
    P.allow(params, pp, {"A", "waves"});
    const double a = P.get<double>(params, pp, "A", 0.0, true);
    const auto waves = P.per_dim<int>(params, pp, "waves", d, 1, false);
    if (std::abs(a) > 0.5) P.fail(pp + ".A", "amplitude must satisfy |A| <= 0.5");
    cfg.model = SpacetimeModel::conformal_bump(d, std::clamp(a, -0.5, 0.5), waves,
                                               {cfg.grid.length(0), cfg.grid.length(1)});
  } else if (!type.empty()) {
    P.fail("spacetime.type", "unknown model '" + type + "'", Code::UnknownModel);
  }
  cfg.model.flip_christoffel_for_testing = P.get<bool>(st, "spacetime", "test_flip_christoffel", false);

  // prescribed curvature
  const json* fs = P.section(doc, "f", "", true);
  P.allow(fs, "f", {"type", "params"});
  const auto ftype = P.get<std::string>(fs, "f", "type", "", true);
  const json* fp = fs ? P.section(*fs, "params", "f", false) : nullptr;
  if (ftype == "constant") {
    P.allow(fp, "f.params", {"c"});
    cfg.f = PrescribedCurvature::constant(P.get<double>(fp, "f.params", "c", 0.0, true));
  } else if (ftype == "affine_time") {
    P.allow(fp, "f.params", {"alpha", "beta"});
    cfg.f = PrescribedCurvature::affine(P.get<double>(fp, "f.params", "alpha", 0.0, true),
                                        P.get<double>(fp, "f.params", "beta", 0.0, true));
  } else if (ftype == "cosine_spatial") {
    P.allow(fp, "f.params", {"c", "eps", "waves"});
    cfg.f = PrescribedCurvature::cosine(P.get<double>(fp, "f.params", "c", 0.0, true),
                                        P.get<double>(fp, "f.params", "eps", 0.0, true),
                                        P.per_dim<int>(fp, "f.params", "waves", d, 1, false),
                                        cfg.grid);
  } else if (ftype == "sampled_grid") {
    P.allow(fp, "f.params", {"path"});
    if (auto t = P.table(fp, "f.params", cfg.grid, grid_ok)) cfg.f = PrescribedCurvature::sampled(*t);
  } else if (!ftype.empty()) {
    P.fail("f.type", "unknown prescribed curvature '" + ftype + "'");
  }

  // initial graph
  const json* is = P.section(doc, "initial", "", true);
  P.allow(is, "initial", {"type", "params"});
  const auto itype = P.get<std::string>(is, "initial", "type", "", true);
  const json* ip = is ? P.section(*is, "params", "initial", false) : nullptr;
  bool initial_ok = true;
  if (itype == "constant") {
    P.allow(ip, "initial.params", {"c"});
    cfg.initial = HeightProfile::constant(P.get<double>(ip, "initial.params", "c", 0.0, true));
  } else if (itype == "cosine") {
    P.allow(ip, "initial.params", {"c", "eps", "waves"});
    cfg.initial = HeightProfile::cosine(P.get<double>(ip, "initial.params", "c", 0.0, false),
                                        P.get<double>(ip, "initial.params", "eps", 0.0, true),
                                        P.per_dim<int>(ip, "initial.params", "waves", d, 1, false));
  } else if (itype == "sampled") {
    P.allow(ip, "initial.params", {"path"});
    if (auto t = P.table(ip, "initial.params", cfg.grid, grid_ok)) {
      cfg.initial.kind = HeightProfile::Kind::Sampled;
      cfg.initial.table = *t;
    } else {
      initial_ok = false;
    }
  } else {
    if (!itype.empty()) P.fail("initial.type", "unknown initial graph '" + itype + "'");
    initial_ok = false;
  }
  if (initial_ok && cfg.initial.min_value() < cfg.model.temporal_floor()) {
    P.fail("initial", "graph leaves the temporal domain x0 >= " +
                          std::to_string(cfg.model.temporal_floor()) + " of the model");
  }

  // flow
  const json* fl = P.section(doc, "flow", "", false);
  P.allow(fl, "flow", {"cfl_safety", "tol_residual", "max_steps", "max_flow_time",
                       "spacelike_margin", "integrator", "u_floor", "u_ceiling", "record_every"});
  FlowConfig& flow = cfg.flow;
  flow.cfl_safety = P.get<double>(fl, "flow", "cfl_safety", flow.cfl_safety);
  flow.tol_residual = P.get<double>(fl, "flow", "tol_residual", flow.tol_residual);
  flow.max_steps = P.get<long>(fl, "flow", "max_steps", flow.max_steps);
  flow.max_flow_time = P.get<double>(fl, "flow", "max_flow_time", flow.max_flow_time);
  flow.spacelike_margin = P.get<double>(fl, "flow", "spacelike_margin", flow.spacelike_margin);
  flow.record_every = P.get<long>(fl, "flow", "record_every", flow.record_every);
  const auto integ = P.get<std::string>(fl, "flow", "integrator", "rk2");
  if (integ == "rk2") flow.integrator = Integrator::Rk2;
  else if (integ == "euler") flow.integrator = Integrator::Euler;
  else P.fail("flow.integrator", "must be euler or rk2");
  if (fl && fl->contains("u_floor")) flow.u_floor = P.get<double>(fl, "flow", "u_floor", 0.0);
  if (fl && fl->contains("u_ceiling")) flow.u_ceiling = P.get<double>(fl, "flow", "u_ceiling", 0.0);
  if (!(flow.cfl_safety > 0.0 && flow.cfl_safety <= 1.0)) P.fail("flow.cfl_safety", "must lie in (0, 1]");
  if (!(flow.tol_residual > 0.0)) P.fail("flow.tol_residual", "must be positive");
  if (flow.max_steps < 0) P.fail("flow.max_steps", "must be non-negative");
  if (!(flow.max_flow_time > 0.0)) P.fail("flow.max_flow_time", "must be positive");
  if (!(flow.spacelike_margin > 0.0 && flow.spacelike_margin < 1.0))
    P.fail("flow.spacelike_margin", "must lie in (0, 1)");
  if (flow.record_every < 1) P.fail("flow.record_every", "must be at least 1");
  if (flow.u_floor && flow.u_ceiling && !(*flow.u_floor < *flow.u_ceiling))
    P.fail("flow.u_floor", "must be below flow.u_ceiling");

  // output
  const json* out = P.section(doc, "output", "", false);
  P.allow(out, "output", {"directory", "record_every", "snapshot_every"});
  cfg.output.directory = P.get<std::string>(out, "output", "directory", "output");
  if (out && out->contains("record_every")) {
    flow.record_every = P.get<long>(out, "output", "record_every", flow.record_every);
    if (flow.record_every < 1) P.fail("output.record_every", "must be at least 1");
  }
  cfg.output.snapshot_every = P.get<long>(out, "output", "snapshot_every", 0);
  if (cfg.output.snapshot_every < 0) P.fail("output.snapshot_every", "must be non-negative");

  // audit
  cfg.audit = AuditConfig::from(flow);
  const json* au = P.section(doc, "audit", "", false);
  P.allow(au, "audit", {"sign_tol", "monotone_tol", "vtilde_bound", "du_bound", "kappa_bound",
                        "kappa_growth"});
  cfg.audit.sign_tol = P.get<double>(au, "audit", "sign_tol", cfg.audit.sign_tol);
  cfg.audit.monotone_tol = P.get<double>(au, "audit", "monotone_tol", cfg.audit.monotone_tol);
  cfg.audit.vtilde_bound = P.get<double>(au, "audit", "vtilde_bound", cfg.audit.vtilde_bound);
  cfg.audit.du_bound = P.get<double>(au, "audit", "du_bound", cfg.audit.du_bound);
  cfg.audit.kappa_bound = P.get<double>(au, "audit", "kappa_bound", cfg.audit.kappa_bound);
  cfg.audit.kappa_growth = P.get<double>(au, "audit", "kappa_growth", cfg.audit.kappa_growth);

  // verify
  const json* ve = P.section(doc, "verify", "", false);
  P.allow(ve, "verify", {"levels", "ratio_low", "ratio_high"});
  cfg.verify.levels = P.get<std::vector<int>>(ve, "verify", "levels", {});
  if (cfg.verify.levels.empty() && grid_ok)
    cfg.verify.levels = {cfg.grid.points(0), 2 * cfg.grid.points(0)};
  for (int n : cfg.verify.levels)
    if (n < 8 || n % 2) P.fail("verify.levels", "levels must be even and >= 8");
  cfg.verify.ratio_low = P.get<double>(ve, "verify", "ratio_low", cfg.verify.ratio_low);
  cfg.verify.ratio_high = P.get<double>(ve, "verify", "ratio_high", cfg.verify.ratio_high);

  // refine
  const json* re = P.section(doc, "refine", "", false);
  P.allow(re, "refine", {"study"});
  const auto study = P.get<std::string>(re, "refine", "study", "flow");
  if (study == "flow") cfg.refine_study = StudyKind::Flow;
  else if (study == "curvature") cfg.refine_study = StudyKind::Curvature;
  else if (study == "slice") cfg.refine_study = StudyKind::Slice;
  else P.fail("refine.study", "must be flow, curvature or slice");

  if (!P.issues().empty()) throw ConfigError(std::move(P.issues()));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({{"(file)", "cannot read " + path.string(), Code::Invalid}});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

}  // namespace pmc
