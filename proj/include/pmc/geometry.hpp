#pragma once

#include <vector>

#include "pmc/ambient.hpp"
#include "pmc/grid.hpp"

namespace pmc {

inline constexpr double kDefaultSpacelikeMargin = 1e-3;

/// M(t) = graph u over the torus, u in units of x^0.
struct GraphState {
  ScalarField u;
  double time = 0.0;

  const GridSpec& grid() const { return u.grid; }
};

/// Per-node derived quantities of a graph. Filled in stages: gradient
/// quantities, induced metric, second fundamental form, normal.
struct GeometryFields {
  int dim = 1;
  std::vector<BackgroundData> background;  // evaluated at (u(ξ), ξ)

  std::vector<Vec> du;
  std::vector<double> du_norm2;  // σ^{ij} u_i u_j
  std::vector<double> v;
  std::vector<double> vtilde;

  std::vector<Mat> g;
  std::vector<Mat> g_inv;

  std::vector<Christoffel2> gamma;  // induced Γ^k_ij
  std::vector<Mat> d2u;             // coordinate second derivatives
  std::vector<Mat> hess;            // induced Hessian u_ij
  std::vector<Mat> h;
  std::vector<double> H;
  std::vector<Vec> kappa;
  std::vector<double> a_norm2;

  std::vector<Vec3> nu;  // past-directed normal

  std::size_t size() const { return du_norm2.size(); }
};

/// u_i, |Du|², v, ṽ. Throws SpacelikenessLost (worst node) when
/// |Du|² ≥ 1 - margin anywhere.
GeometryFields gradient_quantities(const SpacetimeModel& model, const GraphState& state,
                                   double margin = kDefaultSpacelikeMargin);

/// g_ij = e^{2ψ}(-u_i u_j + σ_ij), g^ij = e^{-2ψ}(σ^ij + u^i u^j / v²).
void induced_metric(GeometryFields& fields);

/// Γ^k_ij = ½ g^{kl}(∂_i g_lj + ∂_j g_li - ∂_l g_ij) with ∂ the central
/// difference of the node-wise metric components.
std::vector<Christoffel2> induced_christoffels(const GridSpec& grid, const GeometryFields& fields);

/// Induced Hessian, h_ij from the α = 0 component of the Gauss formula, H, κ
/// and ‖A‖². Requires gradient quantities and induced metric.
void second_fundamental(const GraphState& state, GeometryFields& fields);

/// ν^α = -v^{-1} e^{-ψ} (1, u^i).
void normal(GeometryFields& fields);

/// All stages.
GeometryFields compute_geometry(const SpacetimeModel& model, const GraphState& state,
                                double margin = kDefaultSpacelikeMargin);

/// Second fundamental form from the full Gauss formula
/// x^α_ij = x^α_{,ij} - Γ^k_ij x^α_k + Γ̄^α_βγ x^β_i x^γ_j, contracted as
/// h_ij = -ḡ_αβ x^α_ij ν^β. `fields` must come from compute_geometry.
std::vector<Mat> embedding_oracle(const SpacetimeModel& model, const GraphState& state,
                                  const GeometryFields& fields);

/// Largest violation of the per-node algebraic identities of GeometryFields.
struct IdentityReport {
  double unit_speed = 0.0;      // |v² + |Du|² - 1|
  double reciprocal = 0.0;      // |v ṽ - 1|
  double metric_inverse = 0.0;  // |g^{ik} g_kj - δ|
  double h_symmetry = 0.0;
  double trace = 0.0;           // |H - Σκ|
  double norm = 0.0;            // |‖A‖² - Σκ²|
  double normal_norm = 0.0;     // |ḡ(ν,ν) + 1|
  double tangency = 0.0;        // |ḡ(ν, x_i)|

  bool within(double tol_unit = 1e-14, double tol_inverse = 1e-12, double tol_curv = 1e-12,
              double tol_normal = 1e-12, double tol_tangent = 1e-10) const;
};

IdentityReport check_identities(const SpacetimeModel& model, const GraphState& state,
                                const GeometryFields& fields);

}  // namespace pmc
