#pragma once

#include "pmc/tensor.hpp"

namespace pmc {

enum class ModelKind { MinkowskiTorus, FlrwTorus, ConformalBump };

/// Scale factor a(x^0) of the FLRW models.
enum class ScaleFactor { Gaussian, Power, Exponential, Cosh };

/// A product Lorentzian metric e^{2ψ}(-dx0² + σ_ij dx^i dx^j) over a flat
/// torus. The registry is closed: every coefficient and derivative is an
/// analytic closed form.
struct SpacetimeModel {
  ModelKind kind = ModelKind::MinkowskiTorus;
  int spatial_dim = 1;

  // flrw_torus
  ScaleFactor scale = ScaleFactor::Gaussian;
  double power = 1.0;    // p in a = (x0)^p
  double hubble = 1.0;   // H0 in a = exp(H0 x0)

  // conformal_bump: ψ = A Π_k cos(2π m_k x_k / L_k)
  double amplitude = 0.0;
  std::array<int, kMaxDim> waves{1, 1};
  Vec lengths{1.0, 1.0};

  // Test hook: negates Γ̄^0_ij in christoffels_full only, so the embedding
  // oracle disagrees with the scalar route.
  bool flip_christoffel_for_testing = false;

  static SpacetimeModel minkowski(int n);
  static SpacetimeModel flrw(int n, ScaleFactor scale, double power = 1.0, double hubble = 1.0);
  static SpacetimeModel conformal_bump(int n, double amplitude, std::array<int, kMaxDim> waves,
                                       Vec lengths);

  bool homogeneous() const { return kind != ModelKind::ConformalBump; }
  /// Lower end of the temporal domain accepted by configuration validation.
  double temporal_floor() const;
};

const char* to_string(ModelKind kind);
const char* to_string(ScaleFactor scale);

struct BackgroundData {
  double psi = 0.0;
  double e_psi = 1.0;  // conformal factor e^ψ
  double psi_dot = 0.0;
  Vec psi_i{};
  Mat sigma{};
  Mat sigma_dot{};
  Mat sigma_inv{};
  double gamma0_00 = 0.0;
  Vec gamma0_0i{};
  Mat gamma0_ij{};
  /// Second fundamental form of the slice {x0 = const} w.r.t. the past normal.
  Mat hbar{};
};

BackgroundData eval_background(const SpacetimeModel& model, double x0, const Vec& x);

/// All Γ̄^α_βγ of the ambient metric, indexed [α][β][γ].
Christoffel3 christoffels_full(const SpacetimeModel& model, double x0, const Vec& x);

/// ḡ_αβ at (x0, x).
Mat3 ambient_metric(const SpacetimeModel& model, double x0, const Vec& x);

/// Mean curvature of the slice {x0 = const}; throws UnsupportedModel for
/// inhomogeneous models.
double slice_mean_curvature(const SpacetimeModel& model, double x0);

}  // namespace pmc
