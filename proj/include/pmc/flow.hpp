#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pmc/geometry.hpp"

namespace pmc {

/// Target mean curvature f(x0, x).
struct PrescribedCurvature {
  enum class Kind { Constant, AffineTime, CosineSpatial, SampledGrid };
  Kind kind = Kind::Constant;
  double c = 0.0;      // constant, cosine offset
  double alpha = 0.0;  // affine: alpha + beta x0
  double beta = 0.0;
  double eps = 0.0;    // cosine amplitude
  std::array<int, kMaxDim> waves{1, 1};
  Vec lengths{1.0, 1.0};
  int dim = 1;
  ScalarField table;   // sampled_grid: f(x0, x) = F(x)

  static PrescribedCurvature constant(double c);
  static PrescribedCurvature affine(double alpha, double beta);
  /// c + eps Π_k cos(2π m_k x_k / L_k) on the torus of `grid`.
  static PrescribedCurvature cosine(double c, double eps, std::array<int, kMaxDim> waves,
                                    const GridSpec& grid);
  static PrescribedCurvature sampled(ScalarField table);
};

/// Closed-form kinds only; sampled tables need a node index.
double eval_f(const PrescribedCurvature& f, double x0, const Vec& x);
/// Any kind; throws GridMismatch for a sampled table on a foreign grid.
double eval_f(const PrescribedCurvature& f, double x0, const GridSpec& grid, std::size_t node);

enum class Integrator { Euler, Rk2 };

struct FlowConfig {
  double cfl_safety = 0.2;
  double tol_residual = 1e-8;
  long max_steps = 5'000'000;
  double max_flow_time = 1e6;
  double spacelike_margin = kDefaultSpacelikeMargin;
  Integrator integrator = Integrator::Rk2;
  std::optional<double> u_floor;
  std::optional<double> u_ceiling;
  long record_every = 100;
};

struct Residual {
  ScalarField field;  // H - f(u, ξ)
  double sup_abs = 0.0;
  double min_signed = 0.0;
  std::size_t worst_node = 0;  // argmin of the signed residual
};

Residual residual(const SpacetimeModel& model, const GraphState& state,
                  const PrescribedCurvature& f,
                  double margin = kDefaultSpacelikeMargin);
Residual residual(const GraphState& state, const GeometryFields& fields,
                  const PrescribedCurvature& f);

struct BarrierReport {
  bool ok = false;
  double min_signed = 0.0;
  std::size_t worst_node = 0;
};

/// Upper barrier test H ≥ f up to `tol`.
BarrierReport check_upper_barrier(const SpacetimeModel& model, const GraphState& state,
                                  const PrescribedCurvature& f, double tol = 0.0);

/// Largest eigenvalue over nodes of e^{2ψ} g^{ij} = σ^{ij} + u^i u^j / v².
double diffusion_bound(const GeometryFields& fields);

/// cfl_safety · min_k h_k² / (2 n Λ), clamped to the remaining flow time.
double stable_dt(const SpacetimeModel& model, const GraphState& state, const FlowConfig& config);
double stable_dt(const GraphState& state, const GeometryFields& fields, const FlowConfig& config);

/// One explicit step of ∂u/∂t = -e^{-ψ} v (H - f) at fixed spatial
/// coordinates. Throws SpacelikenessLost if the result violates the margin.
GraphState step(const SpacetimeModel& model, const GraphState& state,
                const PrescribedCurvature& f, double dt, Integrator integrator,
                double margin = kDefaultSpacelikeMargin);

/// Scalar summary of one state; see analysis for the audit over a trace.
struct MonitorRecord {
  double time = 0.0;
  double dt = 0.0;  // size of the step that produced this state
  double sup_abs_residual = 0.0;
  double min_signed_residual = 0.0;
  double max_vtilde = 0.0;
  double max_abs_kappa = 0.0;
  double max_abs_H = 0.0;
  double u_min = 0.0;
  double u_max = 0.0;
  double max_du_norm = 0.0;
};

MonitorRecord make_record(const GraphState& state, const GeometryFields& fields,
                          const Residual& res, double dt);

enum class FlowStatus { Converged, MaxStepsReached, Diverged, SpacelikenessLost };
const char* to_string(FlowStatus status);

struct FlowTrace {
  std::vector<MonitorRecord> records;
  std::vector<long> record_steps;
  std::vector<std::vector<double>> snapshots;  // u at each record
  FlowStatus status = FlowStatus::MaxStepsReached;
  GraphState final_state;
  long steps = 0;
  std::string message;
  std::vector<std::string> warnings;
};

/// Called for every evaluated state, recorded or not.
using FlowObserver = std::function<void(long step, const GraphState&, const GeometryFields&,
                                        const MonitorRecord&, bool recorded)>;

FlowTrace evolve(const SpacetimeModel& model, const GraphState& initial,
                 const PrescribedCurvature& f, const FlowConfig& config,
                 const FlowObserver& observer = {});

/// Analytic description of a height function, re-sampleable on any grid.
struct HeightProfile {
  enum class Kind { Constant, Cosine, Sampled };
  Kind kind = Kind::Constant;
  double c = 0.0;
  double eps = 0.0;
  std::array<int, kMaxDim> waves{1, 1};
  ScalarField table;

  static HeightProfile constant(double c) { return {Kind::Constant, c, 0.0, {1, 1}, {}}; }
  static HeightProfile cosine(double c, double eps, std::array<int, kMaxDim> waves = {1, 1}) {
    return {Kind::Cosine, c, eps, waves, {}};
  }

  /// Throws GridMismatch for a sampled table on a foreign grid.
  GraphState sample(const GridSpec& grid) const;
  double min_value() const;
  double max_value() const;
};

}  // namespace pmc
