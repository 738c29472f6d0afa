#include "pmc/ambient.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pmc/errors.hpp"

namespace pmc {

namespace {

void require_dim(int n) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("spatial_dim must be 1 or 2");
}

struct Scale {
  double a;
  double a_dot;
};

Scale scale_factor(const SpacetimeModel& m, double t) {
  switch (m.scale) {
    case ScaleFactor::Gaussian: {
      const double a = std::exp(-0.5 * t * t);
      return {a, -t * a};
    }
    case ScaleFactor::Power:
      if (!(t > 0.0))
        throw DomainError("flrw power model requires x0 > 0, got " + std::to_string(t));
      return {std::pow(t, m.power), m.power * std::pow(t, m.power - 1.0)};
    case ScaleFactor::Exponential: {
      const double a = std::exp(m.hubble * t);
      return {a, m.hubble * a};
    }
    case ScaleFactor::Cosh:
      return {std::cosh(t), std::sinh(t)};
  }
  return {1.0, 0.0};
}

// ψ and its spatial gradient for the conformal bump.
void bump(const SpacetimeModel& m, const Vec& x, double& psi, Vec& grad) {
  const int n = m.spatial_dim;
  Vec c{}, s{}, k{};
  for (int d = 0; d < n; ++d) {
    k[d] = 2.0 * std::numbers::pi * m.waves[d] / m.lengths[d];
    c[d] = std::cos(k[d] * x[d]);
    s[d] = std::sin(k[d] * x[d]);
  }
  psi = m.amplitude;
  for (int d = 0; d < n; ++d) psi *= c[d];
  grad = {};
  for (int d = 0; d < n; ++d) {
    double g = -m.amplitude * k[d] * s[d];
    for (int e = 0; e < n; ++e)
      if (e != d) g *= c[e];
    grad[d] = g;
  }
}

}  // namespace

SpacetimeModel SpacetimeModel::minkowski(int n) {
  require_dim(n);
  SpacetimeModel m;
  m.kind = ModelKind::MinkowskiTorus;
  m.spatial_dim = n;
  return m;
}

SpacetimeModel SpacetimeModel::flrw(int n, ScaleFactor scale, double power, double hubble) {
  require_dim(n);
  if (scale == ScaleFactor::Power && !(power > 0.0))
    throw std::invalid_argument("flrw power model requires p > 0");
  SpacetimeModel m;
  m.kind = ModelKind::FlrwTorus;
  m.spatial_dim = n;
  m.scale = scale;
  m.power = power;
  m.hubble = hubble;
  return m;
}

SpacetimeModel SpacetimeModel::conformal_bump(int n, double amplitude,
                                              std::array<int, kMaxDim> waves, Vec lengths) {
  require_dim(n);
  if (std::abs(amplitude) > 0.5) throw std::invalid_argument("conformal_bump requires |A| <= 0.5");
  SpacetimeModel m;
  m.kind = ModelKind::ConformalBump;
  m.spatial_dim = n;
  m.amplitude = amplitude;
  m.waves = waves;
  m.lengths = lengths;
  return m;
}

double SpacetimeModel::temporal_floor() const {
  if (kind == ModelKind::FlrwTorus && scale == ScaleFactor::Power) return 0.05 * power;
  return -INFINITY;
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::MinkowskiTorus: return "minkowski_torus";
    case ModelKind::FlrwTorus: return "flrw_torus";
    case ModelKind::ConformalBump: return "conformal_bump";
  }
  return "?";
}

const char* to_string(ScaleFactor scale) {
  switch (scale) {
    case ScaleFactor::Gaussian: return "gaussian";
    case ScaleFactor::Power: return "power";
    case ScaleFactor::Exponential: return "exponential";
    case ScaleFactor::Cosh: return "cosh";
  }
  return "?";
}

BackgroundData eval_background(const SpacetimeModel& model, double x0, const Vec& x) {
  const int n = model.spatial_dim;
  BackgroundData b;
  switch (model.kind) {
    case ModelKind::MinkowskiTorus:
      for (int i = 0; i < n; ++i) b.sigma[i][i] = b.sigma_inv[i][i] = 1.0;
      break;
    case ModelKind::FlrwTorus: {
      const auto [a, a_dot] = scale_factor(model, x0);
      for (int i = 0; i < n; ++i) {
        b.sigma[i][i] = a * a;
        b.sigma_inv[i][i] = 1.0 / (a * a);
        b.sigma_dot[i][i] = 2.0 * a * a_dot;
      }
      break;
    }
    case ModelKind::ConformalBump:
      bump(model, x, b.psi, b.psi_i);
      for (int i = 0; i < n; ++i) b.sigma[i][i] = b.sigma_inv[i][i] = 1.0;
      break;
  }

  if (b.psi != 0.0) b.e_psi = std::exp(b.psi);
  const double e_psi = b.e_psi;
  b.gamma0_00 = b.psi_dot;
  b.gamma0_0i = b.psi_i;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double slice = -0.5 * b.sigma_dot[i][j] - b.psi_dot * b.sigma[i][j];
      b.gamma0_ij[i][j] = -slice;
      b.hbar[i][j] = e_psi * slice;
    }
  }
  return b;
}

Christoffel3 christoffels_full(const SpacetimeModel& model, double x0, const Vec& x) {
  // Conformal rescaling of -dx0² + σ: Γ̄ = Γ̂ + δψ + δψ - ĝ ĝ^{-1}dψ, with
  // σ spatially constant in every registered model.
  const int n = model.spatial_dim;
  const BackgroundData b = eval_background(model, x0, x);
  Christoffel3 G{};

  G[0][0][0] = b.psi_dot;
  for (int i = 0; i < n; ++i) {
    G[0][0][i + 1] = G[0][i + 1][0] = b.psi_i[i];
    for (int j = 0; j < n; ++j) {
      const double g0ij = b.psi_dot * b.sigma[i][j] + 0.5 * b.sigma_dot[i][j];
      G[0][i + 1][j + 1] = model.flip_christoffel_for_testing ? -g0ij : g0ij;
    }
  }

  for (int i = 0; i < n; ++i) {
    double up = 0.0;  // σ^{ik} ψ_k
    for (int k = 0; k < n; ++k) up += b.sigma_inv[i][k] * b.psi_i[k];
    G[i + 1][0][0] = up;

    for (int j = 0; j < n; ++j) {
      double mixed = 0.0;
      for (int k = 0; k < n; ++k) mixed += 0.5 * b.sigma_inv[i][k] * b.sigma_dot[k][j];
      if (i == j) mixed += b.psi_dot;
      G[i + 1][0][j + 1] = G[i + 1][j + 1][0] = mixed;
    }

    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double val = -b.sigma[j][k] * up;
        if (i == j) val += b.psi_i[k];
        if (i == k) val += b.psi_i[j];
        G[i + 1][j + 1][k + 1] = val;
      }
    }
  }
  return G;
}

Mat3 ambient_metric(const SpacetimeModel& model, double x0, const Vec& x) {
  const int n = model.spatial_dim;
  const BackgroundData b = eval_background(model, x0, x);
  const double e2 = b.e_psi * b.e_psi;
  Mat3 g{};
  g[0][0] = -e2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i + 1][j + 1] = e2 * b.sigma[i][j];
  return g;
}

double slice_mean_curvature(const SpacetimeModel& model, double x0) {
  switch (model.kind) {
    case ModelKind::MinkowskiTorus:
      return 0.0;
    case ModelKind::FlrwTorus: {
      const auto [a, a_dot] = scale_factor(model, x0);
      return -model.spatial_dim * a_dot / a;
    }
    case ModelKind::ConformalBump:
      break;
  }
  throw UnsupportedModel("slice_mean_curvature requires a spatially homogeneous model");
}

}  // namespace pmc
