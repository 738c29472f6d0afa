#include "pmc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pmc/errors.hpp"

namespace pmc {

MonitorRecord monitor(const SpacetimeModel& model, const GraphState& state,
                      const PrescribedCurvature& f, double margin) {
  const GeometryFields fields = compute_geometry(model, state, margin);
  return make_record(state, fields, residual(state, fields, f), 0.0);
}

AuditConfig AuditConfig::from(const FlowConfig& flow) {
  AuditConfig c;
  c.tol_residual = flow.tol_residual;
  c.u_floor = flow.u_floor;
  c.u_ceiling = flow.u_ceiling;
  return c;
}

const Verdict& AuditReport::at(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return v;
  throw Error("no verdict named " + name);
}

namespace {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

AuditReport audit(const FlowTrace& trace, const AuditConfig& config) {
  const auto& recs = trace.records;
  if (recs.size() < 2) throw InsufficientTrace("audit needs at least two monitor records");

  const bool barrier_start = recs.front().min_signed_residual >= -config.sign_tol;
  AuditReport report;

  {
    Verdict v{"sign_preservation", true, barrier_start, INFINITY, 0.0};
    for (const auto& r : recs)
      if (r.min_signed_residual < v.worst_value) {
        v.worst_value = r.min_signed_residual;
        v.worst_time = r.time;
      }
    if (barrier_start) v.passed = v.worst_value >= -config.sign_tol;
    report.verdicts.push_back(v);
  }

  {
    // largest increase of u at any node between consecutive snapshots
    Verdict v{"monotone_descent", true, barrier_start, 0.0, 0.0};
    for (std::size_t k = 1; k < trace.snapshots.size(); ++k) {
      const auto& prev = trace.snapshots[k - 1];
      const auto& cur = trace.snapshots[k];
      for (std::size_t p = 0; p < cur.size(); ++p)
        if (cur[p] - prev[p] > v.worst_value) {
          v.worst_value = cur[p] - prev[p];
          v.worst_time = recs[k].time;
        }
    }
    if (barrier_start) v.passed = v.worst_value <= config.monotone_tol;
    report.verdicts.push_back(v);
  }

  {
    // positive values measure the excursion outside the window; the start
    // bounds the graph from above only when it is an upper barrier
    const double top = barrier_start ? recs.front().u_max : INFINITY;
    const bool windowed = config.u_floor || config.u_ceiling;
    Verdict v{"confinement", true, barrier_start || windowed, -INFINITY, 0.0};
    for (const auto& r : recs) {
      double excess = r.u_max - top;
      if (config.u_ceiling) excess = std::max(excess, r.u_max - *config.u_ceiling);
      if (config.u_floor) excess = std::max(excess, *config.u_floor - r.u_min);
      if (excess > v.worst_value) {
        v.worst_value = excess;
        v.worst_time = r.time;
      }
    }
    if (v.applicable) v.passed = v.worst_value <= config.monotone_tol;
    report.verdicts.push_back(v);
  }

  {
    const double bound = std::min(config.vtilde_bound, 2.0 * recs.front().max_vtilde);
    Verdict v{"vtilde_bound", true, true, 0.0, 0.0};
    for (const auto& r : recs)
      if (r.max_vtilde > v.worst_value) {
        v.worst_value = r.max_vtilde;
        v.worst_time = r.time;
      }
    v.passed = v.worst_value <= bound;
    report.verdicts.push_back(v);
  }

  {
    Verdict v{"spacelike_gradient", true, true, 0.0, 0.0};
    for (const auto& r : recs)
      if (r.max_du_norm > v.worst_value) {
        v.worst_value = r.max_du_norm;
        v.worst_time = r.time;
      }
    v.passed = v.worst_value <= config.du_bound;
    report.verdicts.push_back(v);
  }

  {
    // final max|κ| against the growth factor times the trace median; the
    // worst value reported is their ratio
    std::vector<double> k;
    k.reserve(recs.size());
    double peak = 0.0;
    for (const auto& r : recs) {
      k.push_back(r.max_abs_kappa);
      peak = std::max(peak, r.max_abs_kappa);
    }
    const double med = median(k);
    const double last = recs.back().max_abs_kappa;
    Verdict v{"curvature_no_growth", true, true, med > 0.0 ? last / med : 0.0,
              recs.back().time};
    v.passed = last <= config.kappa_growth * med + 1e-12 && peak <= config.kappa_bound;
    report.verdicts.push_back(v);
  }

  {
    Verdict v{"final_residual", true, true, recs.back().sup_abs_residual, recs.back().time};
    v.passed = v.worst_value <= config.tol_residual;
    report.verdicts.push_back(v);
  }

  for (const auto& v : report.verdicts) report.overall_pass = report.overall_pass && v.passed;
  return report;
}

DualPathResult dual_path_check(const SpacetimeModel& model, const GraphState& state,
                               double margin) {
  const GeometryFields fields = compute_geometry(model, state, margin);
  const std::vector<Mat> oracle = embedding_oracle(model, state, fields);
  DualPathResult r;
  r.per_node.resize(fields.size());
  for (std::size_t p = 0; p < fields.size(); ++p) {
    double d = 0.0;
    for (int i = 0; i < fields.dim; ++i)
      for (int j = 0; j < fields.dim; ++j)
        d = std::max(d, std::abs(fields.h[p][i][j] - oracle[p][i][j]));
    r.per_node[p] = d;
    r.max_discrepancy = std::max(r.max_discrepancy, d);
  }
  return r;
}

double stationary_slice(const SpacetimeModel& model, double c) {
  const double n = model.spatial_dim;
  if (model.kind == ModelKind::FlrwTorus) {
    switch (model.scale) {
      case ScaleFactor::Gaussian:
        return c / n;
      case ScaleFactor::Cosh:
        if (std::abs(c) < n) return std::atanh(-c / n);
        break;
      case ScaleFactor::Power:
        if (c < 0.0) return -n * model.power / c;
        break;
      case ScaleFactor::Exponential:
        break;
    }
  }
  throw NoReference("no isolated constant slice with H = f in this model");
}

namespace {

GridSpec level_grid(const RefinementScenario& s, int points) {
  return {s.dim, {points, s.dim > 1 ? points : 1}, s.lengths};
}

double curvature_error(const RefinementScenario& s, const GridSpec& grid) {
  const GraphState state = s.initial.sample(grid);
  const GeometryFields fields = compute_geometry(s.model, state);
  const double k = 2.0 * std::numbers::pi * s.initial.waves[0] / grid.length(0);
  double err = 0.0;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const double x = grid.coordinate(p)[0];
    const double u1 = -s.initial.eps * k * std::sin(k * x);
    const double u2 = -s.initial.eps * k * k * std::cos(k * x);
    const double exact = -u2 / std::pow(1.0 - u1 * u1, 1.5);
    err = std::max(err, std::abs(fields.H[p] - exact));
  }
  return err;
}

double slice_error(const RefinementScenario& s, const GridSpec& grid) {
  const GraphState state = s.initial.sample(grid);
  const GeometryFields fields = compute_geometry(s.model, state);
  const double exact = slice_mean_curvature(s.model, s.initial.c);
  double err = 0.0;
  for (double H : fields.H) err = std::max(err, std::abs(H - exact));
  return err;
}

double flow_error(const RefinementScenario& s, const GridSpec& grid, double target) {
  const FlowTrace trace = evolve(s.model, s.initial.sample(grid), s.f, s.flow);
  if (trace.status != FlowStatus::Converged)
    throw Error(std::string("refinement flow did not converge: ") + to_string(trace.status));
  double err = 0.0;
  for (double u : trace.final_state.u.values) err = std::max(err, std::abs(u - target));
  return err;
}

}  // namespace

RefinementTable refinement_study(const RefinementScenario& s, const std::vector<int>& levels) {
  if (levels.empty()) throw Error("refinement study needs at least one level");
  if (s.initial.kind == HeightProfile::Kind::Sampled)
    throw NoReference("sampled initial graphs cannot be re-sampled on finer grids");

  RefinementTable table;
  double target = 0.0;
  switch (s.kind) {
    case StudyKind::Curvature:
      if (s.model.kind != ModelKind::MinkowskiTorus || s.dim != 1 ||
          s.initial.kind != HeightProfile::Kind::Cosine)
        throw NoReference("closed-form curvature needs a minkowski n = 1 cosine graph");
      table.exact_threshold = 1e-10;
      break;
    case StudyKind::Slice:
      if (s.initial.kind != HeightProfile::Kind::Constant)
        throw NoReference("slice study needs a constant graph");
      slice_mean_curvature(s.model, s.initial.c);  // UnsupportedModel for inhomogeneous
      table.exact_threshold = 1e-10;
      break;
    case StudyKind::Flow:
      if (s.f.kind != PrescribedCurvature::Kind::Constant)
        throw NoReference("flow study needs a constant prescribed curvature");
      target = stationary_slice(s.model, s.f.c);
      table.exact_threshold = std::max(10.0 * s.flow.tol_residual, 1e-6);
      break;
  }

  for (int points : levels) {
    const GridSpec grid = level_grid(s, points);
    RefinementRow row;
    row.points = points;
    switch (s.kind) {
      case StudyKind::Curvature: row.error = curvature_error(s, grid); break;
      case StudyKind::Slice: row.error = slice_error(s, grid); break;
      case StudyKind::Flow: row.error = flow_error(s, grid, target); break;
    }
    table.rows.push_back(row);
  }

  table.exact = true;
  for (const auto& r : table.rows) table.exact = table.exact && r.error <= table.exact_threshold;
  table.orders_ok = table.rows.size() >= 2;
  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    auto& r = table.rows[i];
    r.observed_order = std::log2(r.error / table.rows[i + 1].error);
    table.orders_ok = table.orders_ok && r.observed_order >= kOrderLow && r.observed_order <= kOrderHigh;
  }
  return table;
}

std::vector<SliceSample> slice_scan(const SpacetimeModel& model, double t_min, double t_max,
                                    int steps) {
  if (!model.homogeneous()) throw UnsupportedModel("slice scan requires a homogeneous model");
  if (steps < 1) throw Error("slice scan needs at least one sample");
  std::vector<SliceSample> out;
  out.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double t = steps == 1 ? t_min : t_min + (t_max - t_min) * i / (steps - 1);
    out.push_back({t, slice_mean_curvature(model, t)});
  }
  return out;
}

}  // namespace pmc

namespace pmc {

double christoffel_fd_error(const SpacetimeModel& model, double x0, const Vec& x, double step) {
  const int m = model.spatial_dim + 1;
  const Mat3 g = ambient_metric(model, x0, x);

  // ∂_c ḡ_ab by centered differences
  std::array<Mat3, kMaxDim + 1> dg{};
  for (int c = 0; c < m; ++c) {
    double t_plus = x0, t_minus = x0;
    Vec x_plus = x, x_minus = x;
    if (c == 0) {
      t_plus += step;
      t_minus -= step;
    } else {
      x_plus[c - 1] += step;
      x_minus[c - 1] -= step;
    }
    const Mat3 gp = ambient_metric(model, t_plus, x_plus);
    const Mat3 gm = ambient_metric(model, t_minus, x_minus);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) dg[c][a][b] = (gp[a][b] - gm[a][b]) / (2.0 * step);
  }

  // metric is block diagonal: ḡ^{00} = 1/ḡ_00, spatial block inverted
  Mat3 ginv{};
  ginv[0][0] = 1.0 / g[0][0];
  Mat spatial{};
  for (int i = 0; i + 1 < m; ++i)
    for (int j = 0; j + 1 < m; ++j) spatial[i][j] = g[i + 1][j + 1];
  const Mat sinv = inverse(spatial, m - 1);
  for (int i = 0; i + 1 < m; ++i)
    for (int j = 0; j + 1 < m; ++j) ginv[i + 1][j + 1] = sinv[i][j];

  const Christoffel3 closed = christoffels_full(model, x0, x);
  double scale = 1.0, err = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        double fd = 0.0;
        for (int d = 0; d < m; ++d) fd += 0.5 * ginv[a][d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c]);
        scale = std::max(scale, std::abs(closed[a][b][c]));
        err = std::max(err, std::abs(closed[a][b][c] - fd));
      }
  return err / scale;
}

}  // namespace pmc
