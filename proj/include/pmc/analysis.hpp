#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pmc/flow.hpp"

namespace pmc {

MonitorRecord monitor(const SpacetimeModel& model, const GraphState& state,
                      const PrescribedCurvature& f, double margin = kDefaultSpacelikeMargin);

struct AuditConfig {
  double tol_residual = 1e-8;
  double sign_tol = 1e-6;
  double monotone_tol = 1e-12;
  double vtilde_bound = 10.0;
  double du_bound = 0.999;
  double kappa_bound = INFINITY;
  double kappa_growth = 1.1;
  std::optional<double> u_floor;
  std::optional<double> u_ceiling;

  static AuditConfig from(const FlowConfig& flow);
};

struct Verdict {
  std::string name;
  bool passed = true;
  /// False when the hypothesis of the check (an upper-barrier start) is not
  /// met; such verdicts pass vacuously and say so.
  bool applicable = true;
  double worst_value = 0.0;
  double worst_time = 0.0;
};

struct AuditReport {
  std::vector<Verdict> verdicts;
  bool overall_pass = true;

  const Verdict& at(const std::string& name) const;
};

/// Throws InsufficientTrace for fewer than two records.
AuditReport audit(const FlowTrace& trace, const AuditConfig& config);

struct DualPathResult {
  double max_discrepancy = 0.0;
  std::vector<double> per_node;  // max over index pairs
};

DualPathResult dual_path_check(const SpacetimeModel& model, const GraphState& state,
                               double margin = kDefaultSpacelikeMargin);

/// What a refinement level is compared against.
enum class StudyKind {
  Curvature,  // H of a minkowski n = 1 cosine graph vs -u''/(1-u'²)^{3/2}
  Slice,      // H of a constant graph vs slice_mean_curvature
  Flow,       // final flow state vs the constant CMC slice H̄(t*) = f
};

struct RefinementScenario {
  StudyKind kind = StudyKind::Curvature;
  SpacetimeModel model;
  HeightProfile initial;
  PrescribedCurvature f;   // Flow studies; constant kind required
  FlowConfig flow;
  int dim = 1;
  Vec lengths{1.0, 1.0};
};

struct RefinementRow {
  int points = 0;
  double error = 0.0;
  double observed_order = NAN;  // log2(error(N) / error(2N)), NaN for the last row
};

struct RefinementTable {
  std::vector<RefinementRow> rows;
  bool exact = false;        // every error at or below exact_threshold
  double exact_threshold = 0.0;
  bool orders_ok = false;    // every observed order in [1.8, 2.2]

  bool passed() const { return exact || orders_ok; }
};

inline constexpr double kOrderLow = 1.8;
inline constexpr double kOrderHigh = 2.2;

/// Throws NoReference when the scenario has no closed-form reference.
RefinementTable refinement_study(const RefinementScenario& scenario, const std::vector<int>& levels);

/// t* with H̄(t*) = c for a homogeneous model; throws NoReference otherwise.
double stationary_slice(const SpacetimeModel& model, double c);

struct SliceSample {
  double x0;
  double h_slice;
};

/// `steps` uniform samples including both endpoints.
std::vector<SliceSample> slice_scan(const SpacetimeModel& model, double t_min, double t_max,
                                    int steps);

}  // namespace pmc

namespace pmc {

/// Max over components of |Γ̄_closed - Γ̄_fd| / max(1, max|Γ̄_closed|), with
/// Γ̄_fd built from centered differences of ḡ_αβ at step `step`.
double christoffel_fd_error(const SpacetimeModel& model, double x0, const Vec& x,
                            double step = 1e-5);

}  // namespace pmc
