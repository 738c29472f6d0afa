#include "pmc/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pmc/errors.hpp"

namespace pmc {

PrescribedCurvature PrescribedCurvature::constant(double c) {
  PrescribedCurvature f;
  f.kind = Kind::Constant;
  f.c = c;
  return f;
}

PrescribedCurvature PrescribedCurvature::affine(double alpha, double beta) {
  PrescribedCurvature f;
  f.kind = Kind::AffineTime;
  f.alpha = alpha;
  f.beta = beta;
  return f;
}

PrescribedCurvature PrescribedCurvature::cosine(double c, double eps,
                                                std::array<int, kMaxDim> waves,
                                                const GridSpec& grid) {
  PrescribedCurvature f;
  f.kind = Kind::CosineSpatial;
  f.c = c;
  f.eps = eps;
  f.waves = waves;
  f.dim = grid.dim();
  for (int k = 0; k < grid.dim(); ++k) f.lengths[k] = grid.length(k);
  return f;
}

PrescribedCurvature PrescribedCurvature::sampled(ScalarField table) {
  PrescribedCurvature f;
  f.kind = Kind::SampledGrid;
  f.dim = table.grid.dim();
  f.table = std::move(table);
  return f;
}

namespace {

double cosine_product(const std::array<int, kMaxDim>& waves, const Vec& lengths, int dim,
                      const Vec& x) {
  double prod = 1.0;
  for (int k = 0; k < dim; ++k)
    prod *= std::cos(2.0 * std::numbers::pi * waves[k] * x[k] / lengths[k]);
  return prod;
}

}  // namespace

double eval_f(const PrescribedCurvature& f, double x0, const Vec& x) {
  switch (f.kind) {
    case PrescribedCurvature::Kind::Constant:
      return f.c;
    case PrescribedCurvature::Kind::AffineTime:
      return f.alpha + f.beta * x0;
    case PrescribedCurvature::Kind::CosineSpatial:
      return f.c + f.eps * cosine_product(f.waves, f.lengths, f.dim, x);
    case PrescribedCurvature::Kind::SampledGrid:
      break;
  }
  throw Error("sampled prescribed curvature must be evaluated at a node index");
}

double eval_f(const PrescribedCurvature& f, double x0, const GridSpec& grid, std::size_t node) {
  if (f.kind == PrescribedCurvature::Kind::SampledGrid) {
    if (!(f.table.grid == grid)) throw GridMismatch("sampled f lives on a different grid");
    return f.table[node];
  }
  return eval_f(f, x0, grid.coordinate(node));
}

Residual residual(const GraphState& state, const GeometryFields& fields,
                  const PrescribedCurvature& f) {
  const GridSpec& grid = state.grid();
  Residual r;
  r.field = ScalarField(grid);
  r.min_signed = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const double d = fields.H[p] - eval_f(f, state.u[p], grid, p);
    r.field[p] = d;
    r.sup_abs = std::max(r.sup_abs, std::abs(d));
    if (d < r.min_signed) {
      r.min_signed = d;
      r.worst_node = p;
    }
  }
  return r;
}

Residual residual(const SpacetimeModel& model, const GraphState& state,
                  const PrescribedCurvature& f, double margin) {
  return residual(state, compute_geometry(model, state, margin), f);
}

BarrierReport check_upper_barrier(const SpacetimeModel& model, const GraphState& state,
                                  const PrescribedCurvature& f, double tol) {
  const Residual r = residual(model, state, f);
  return {r.min_signed >= -tol, r.min_signed, r.worst_node};
}

double diffusion_bound(const GeometryFields& fields) {
  const int n = fields.dim;
  double lambda = 0.0;
  for (std::size_t p = 0; p < fields.size(); ++p) {
    const double e2 = fields.background[p].e_psi * fields.background[p].e_psi;
    Mat a{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = e2 * fields.g_inv[p][i][j];
    lambda = std::max(lambda, eigenvalues(a, n)[0]);
  }
  return lambda;
}

double stable_dt(const GraphState& state, const GeometryFields& fields, const FlowConfig& config) {
  const GridSpec& grid = state.grid();
  double h2 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.dim(); ++k) h2 = std::min(h2, grid.spacing(k) * grid.spacing(k));
  const double lambda = diffusion_bound(fields);
  const double dt = config.cfl_safety * h2 / (2.0 * grid.dim() * lambda);
  const double remaining = std::max(0.0, config.max_flow_time - state.time);
  return std::min(dt, remaining);
}

double stable_dt(const SpacetimeModel& model, const GraphState& state, const FlowConfig& config) {
  GeometryFields f = gradient_quantities(model, state, config.spacelike_margin);
  induced_metric(f);
  return stable_dt(state, f, config);
}

namespace {

GeometryFields flow_geometry(const SpacetimeModel& model, const GraphState& state,
                             double margin) {
  GeometryFields f = gradient_quantities(model, state, margin);
  induced_metric(f);
  second_fundamental(state, f);
  return f;
}

// -e^{-ψ} v (H - f) node-wise.
std::vector<double> speed(const GraphState& state, const GeometryFields& fields,
                          const PrescribedCurvature& f) {
  const GridSpec& grid = state.grid();
  std::vector<double> s(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const double res = fields.H[p] - eval_f(f, state.u[p], grid, p);
    s[p] = -fields.v[p] * res / fields.background[p].e_psi;
  }
  return s;
}

GraphState axpy(const GraphState& state, const std::vector<double>& rate, double dt) {
  GraphState next = state;
  for (std::size_t p = 0; p < rate.size(); ++p) next.u[p] += dt * rate[p];
  next.time = state.time + dt;
  return next;
}

// Advances without re-checking the result; `fields` belongs to `state`.
GraphState advance(const SpacetimeModel& model, const GraphState& state,
                   const GeometryFields& fields, const PrescribedCurvature& f, double dt,
                   Integrator integrator, double margin) {
  const std::vector<double> k1 = speed(state, fields, f);
  if (integrator == Integrator::Euler) return axpy(state, k1, dt);
  const GraphState mid = axpy(state, k1, 0.5 * dt);
  const std::vector<double> k2 = speed(mid, flow_geometry(model, mid, margin), f);
  return axpy(state, k2, dt);
}

}  // namespace

GraphState step(const SpacetimeModel& model, const GraphState& state,
                const PrescribedCurvature& f, double dt, Integrator integrator, double margin) {
  const GeometryFields fields = flow_geometry(model, state, margin);
  GraphState next = advance(model, state, fields, f, dt, integrator, margin);
  gradient_quantities(model, next, margin);
  return next;
}

MonitorRecord make_record(const GraphState& state, const GeometryFields& fields,
                          const Residual& res, double dt) {
  MonitorRecord r;
  r.time = state.time;
  r.dt = dt;
  r.sup_abs_residual = res.sup_abs;
  r.min_signed_residual = res.min_signed;
  const auto [umin, umax] = std::minmax_element(state.u.values.begin(), state.u.values.end());
  r.u_min = *umin;
  r.u_max = *umax;
  for (std::size_t p = 0; p < fields.size(); ++p) {
    r.max_vtilde = std::max(r.max_vtilde, fields.vtilde[p]);
    r.max_abs_H = std::max(r.max_abs_H, std::abs(fields.H[p]));
    for (int i = 0; i < fields.dim; ++i)
      r.max_abs_kappa = std::max(r.max_abs_kappa, std::abs(fields.kappa[p][i]));
    r.max_du_norm = std::max(r.max_du_norm, std::sqrt(fields.du_norm2[p]));
  }
  return r;
}

const char* to_string(FlowStatus status) {
  switch (status) {
    case FlowStatus::Converged: return "Converged";
    case FlowStatus::MaxStepsReached: return "MaxStepsReached";
    case FlowStatus::Diverged: return "Diverged";
    case FlowStatus::SpacelikenessLost: return "SpacelikenessLost";
  }
  return "?";
}

FlowTrace evolve(const SpacetimeModel& model, const GraphState& initial,
                 const PrescribedCurvature& f, const FlowConfig& config,
                 const FlowObserver& observer) {
  FlowTrace trace;
  GraphState state = initial;
  const long cadence = std::max<long>(1, config.record_every);
  double last_dt = 0.0;
  long step_index = 0;

  auto push = [&](const MonitorRecord& rec) {
    if (!trace.record_steps.empty() && trace.record_steps.back() == step_index) return;
    trace.records.push_back(rec);
    trace.record_steps.push_back(step_index);
    trace.snapshots.push_back(state.u.values);
  };

  try {
    for (;;) {
      const GeometryFields fields = compute_geometry(model, state, config.spacelike_margin);
      const Residual res = residual(state, fields, f);
      const MonitorRecord rec = make_record(state, fields, res, last_dt);

      if (step_index == 0 && res.min_signed < 0.0) {
        trace.warnings.push_back("initial graph is not an upper barrier: min(H - f) = " +
                                 std::to_string(res.min_signed));
      }

      const bool cadence_hit = step_index % cadence == 0;
      if (cadence_hit) push(rec);

      const bool finite = std::isfinite(rec.sup_abs_residual) && std::isfinite(rec.u_min) &&
                          std::isfinite(rec.u_max);
      bool stop = true;
      if (!finite) {
        trace.status = FlowStatus::Diverged;
        trace.message = "non-finite values in the flow state";
      } else if (res.sup_abs <= config.tol_residual) {
        trace.status = FlowStatus::Converged;
        trace.message = "sup|H - f| below tolerance";
      } else if ((config.u_floor && rec.u_min < *config.u_floor) ||
                 (config.u_ceiling && rec.u_max > *config.u_ceiling)) {
        trace.status = FlowStatus::Diverged;
        trace.message = "graph left the configured barrier window";
      } else if (step_index >= config.max_steps) {
        trace.status = FlowStatus::MaxStepsReached;
        trace.message = "step budget exhausted";
      } else {
        stop = false;
      }

      double dt = 0.0;
      if (!stop) {
        dt = stable_dt(state, fields, config);
        if (!(dt > 0.0)) {
          trace.status = FlowStatus::MaxStepsReached;
          trace.message = "maximal flow time reached";
          stop = true;
        }
      }
      if (stop) push(rec);
      if (observer) observer(step_index, state, fields, rec, trace.record_steps.back() == step_index);
      if (stop) break;

      state = advance(model, state, fields, f, dt, config.integrator, config.spacelike_margin);
      last_dt = dt;
      ++step_index;
    }
  } catch (const SpacelikenessLost& e) {
    trace.status = FlowStatus::SpacelikenessLost;
    trace.message = e.what();
  } catch (const DomainError& e) {
    trace.status = FlowStatus::Diverged;
    trace.message = e.what();
  }

  trace.steps = step_index;
  trace.final_state = state;
  return trace;
}

GraphState HeightProfile::sample(const GridSpec& grid) const {
  GraphState s;
  switch (kind) {
    case Kind::Constant:
      s.u = ScalarField(grid, c);
      break;
    case Kind::Cosine: {
      Vec lengths{grid.length(0), grid.length(1)};
      s.u = pmc::sample(grid, [&](const Vec& x) {
        return c + eps * cosine_product(waves, lengths, grid.dim(), x);
      });
      break;
    }
    case Kind::Sampled:
      if (!(table.grid == grid)) throw GridMismatch("sampled initial graph lives on a different grid");
      s.u = table;
      break;
  }
  return s;
}

double HeightProfile::min_value() const {
  if (kind == Kind::Sampled)
    return *std::min_element(table.values.begin(), table.values.end());
  return c - std::abs(eps);
}

double HeightProfile::max_value() const {
  if (kind == Kind::Sampled)
    return *std::max_element(table.values.begin(), table.values.end());
  return c + std::abs(eps);
}

}  // namespace pmc
