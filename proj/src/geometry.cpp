#include "pmc/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "pmc/errors.hpp"

namespace pmc {

GeometryFields gradient_quantities(const SpacetimeModel& model, const GraphState& state,
                                   double margin) {
  const GridSpec& grid = state.grid();
  const int n = grid.dim();
  const std::size_t size = grid.size();

  GeometryFields f;
  f.dim = n;
  f.background.resize(size);
  f.du.assign(size, Vec{});
  f.du_norm2.resize(size);
  f.v.resize(size);
  f.vtilde.resize(size);

  for (int k = 0; k < n; ++k) {
    const ScalarField d = partial_first(state.u, k);
    for (std::size_t p = 0; p < size; ++p) f.du[p][k] = d[p];
  }

  std::size_t worst = 0;
  double worst_value = -1.0;
  for (std::size_t p = 0; p < size; ++p) {
    f.background[p] = eval_background(model, state.u[p], grid.coordinate(p));
    const Mat& s_inv = f.background[p].sigma_inv;
    double q = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q += s_inv[i][j] * f.du[p][i] * f.du[p][j];
    f.du_norm2[p] = q;
    if (!(q <= worst_value)) {
      worst_value = q;
      worst = p;
    }
  }
  if (!(worst_value < 1.0 - margin)) throw SpacelikenessLost(worst, worst_value, margin);

  for (std::size_t p = 0; p < size; ++p) {
    f.v[p] = std::sqrt(1.0 - f.du_norm2[p]);
    f.vtilde[p] = 1.0 / f.v[p];
  }
  return f;
}

void induced_metric(GeometryFields& f) {
  const int n = f.dim;
  const std::size_t size = f.size();
  f.g.assign(size, Mat{});
  f.g_inv.assign(size, Mat{});
  for (std::size_t p = 0; p < size; ++p) {
    const BackgroundData& b = f.background[p];
    const Vec& du = f.du[p];
    Vec up{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) up[i] += b.sigma_inv[i][j] * du[j];
    const double e2 = b.e_psi * b.e_psi;
    const double v2 = f.v[p] * f.v[p];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        f.g[p][i][j] = e2 * (-du[i] * du[j] + b.sigma[i][j]);
        f.g_inv[p][i][j] = (b.sigma_inv[i][j] + up[i] * up[j] / v2) / e2;
      }
    }
  }
}

std::vector<Christoffel2> induced_christoffels(const GridSpec& grid, const GeometryFields& f) {
  const int n = f.dim;
  const std::size_t size = f.size();

  // dg[k][i][j] = ∂_k g_ij
  std::vector<std::array<Mat, kMaxDim>> dg(size);
  ScalarField comp(grid);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (std::size_t p = 0; p < size; ++p) comp[p] = f.g[p][i][j];
      for (int k = 0; k < n; ++k) {
        const ScalarField d = partial_first(comp, k);
        for (std::size_t p = 0; p < size; ++p) dg[p][k][i][j] = dg[p][k][j][i] = d[p];
      }
    }
  }

  std::vector<Christoffel2> gamma(size);
  for (std::size_t p = 0; p < size; ++p) {
    Christoffel2& G = gamma[p];
    G = {};
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l)
            s += f.g_inv[p][k][l] * (dg[p][i][l][j] + dg[p][j][l][i] - dg[p][l][i][j]);
          G[k][i][j] = G[k][j][i] = 0.5 * s;
        }
  }
  return gamma;
}

void second_fundamental(const GraphState& state, GeometryFields& f) {
  const GridSpec& grid = state.grid();
  const int n = f.dim;
  const std::size_t size = f.size();

  f.gamma = induced_christoffels(grid, f);
  f.d2u.assign(size, Mat{});
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const ScalarField d = partial_second(state.u, i, j);
      for (std::size_t p = 0; p < size; ++p) f.d2u[p][i][j] = f.d2u[p][j][i] = d[p];
    }

  f.hess.assign(size, Mat{});
  f.h.assign(size, Mat{});
  f.H.resize(size);
  f.kappa.assign(size, Vec{});
  f.a_norm2.resize(size);

  for (std::size_t p = 0; p < size; ++p) {
    const BackgroundData& b = f.background[p];
    const Vec& du = f.du[p];
    const double scale = b.e_psi * f.v[p];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double hs = f.d2u[p][i][j];
        for (int k = 0; k < n; ++k) hs -= f.gamma[p][k][i][j] * du[k];
        f.hess[p][i][j] = hs;
        f.h[p][i][j] = scale * (-hs - b.gamma0_00 * du[i] * du[j] - b.gamma0_0i[j] * du[i] -
                                b.gamma0_0i[i] * du[j] - b.gamma0_ij[i][j]);
      }

    double H = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) H += f.g_inv[p][i][j] * f.h[p][i][j];
    f.H[p] = H;

    const Mat w = multiply(f.g_inv[p], f.h[p], n);
    f.kappa[p] = eigenvalues(w, n);
    f.a_norm2[p] = trace(multiply(w, w, n), n);
  }
}

void normal(GeometryFields& f) {
  const int n = f.dim;
  f.nu.assign(f.size(), Vec3{});
  for (std::size_t p = 0; p < f.size(); ++p) {
    const BackgroundData& b = f.background[p];
    const double c = -f.vtilde[p] / b.e_psi;
    f.nu[p][0] = c;
    for (int i = 0; i < n; ++i) {
      double up = 0.0;
      for (int j = 0; j < n; ++j) up += b.sigma_inv[i][j] * f.du[p][j];
      f.nu[p][i + 1] = c * up;
    }
  }
}

GeometryFields compute_geometry(const SpacetimeModel& model, const GraphState& state,
                                double margin) {
  GeometryFields f = gradient_quantities(model, state, margin);
  induced_metric(f);
  second_fundamental(state, f);
  normal(f);
  return f;
}

std::vector<Mat> embedding_oracle(const SpacetimeModel& model, const GraphState& state,
                                  const GeometryFields& f) {
  const GridSpec& grid = state.grid();
  const int n = f.dim;
  const int m = n + 1;
  std::vector<Mat> out(f.size(), Mat{});

  for (std::size_t p = 0; p < f.size(); ++p) {
    const Vec x = grid.coordinate(p);
    const Christoffel3 G = christoffels_full(model, state.u[p], x);
    const Mat3 gbar = ambient_metric(model, state.u[p], x);

    // tangent vectors x^α_i = (u_i, δ^k_i)
    std::array<Vec3, kMaxDim> xi{};
    for (int i = 0; i < n; ++i) {
      xi[i][0] = f.du[p][i];
      xi[i][i + 1] = 1.0;
    }

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Vec3 xij{};
        for (int a = 0; a < m; ++a) {
          double val = (a == 0) ? f.d2u[p][i][j] : 0.0;
          for (int k = 0; k < n; ++k) val -= f.gamma[p][k][i][j] * xi[k][a];
          for (int beta = 0; beta < m; ++beta)
            for (int c = 0; c < m; ++c) val += G[a][beta][c] * xi[i][beta] * xi[j][c];
          xij[a] = val;
        }
        double hij = 0.0;
        for (int a = 0; a < m; ++a)
          for (int beta = 0; beta < m; ++beta) hij -= gbar[a][beta] * xij[a] * f.nu[p][beta];
        out[p][i][j] = hij;
      }
  }
  return out;
}

bool IdentityReport::within(double tol_unit, double tol_inverse, double tol_curv,
                            double tol_normal, double tol_tangent) const {
  return unit_speed <= tol_unit && reciprocal <= tol_unit && metric_inverse <= tol_inverse &&
         h_symmetry <= tol_curv && trace <= tol_curv && norm <= tol_curv &&
         normal_norm <= tol_normal && tangency <= tol_tangent;
}

IdentityReport check_identities(const SpacetimeModel& model, const GraphState& state,
                                const GeometryFields& f) {
  const GridSpec& grid = state.grid();
  const int n = f.dim;
  if (f.nu.size() != f.size() || f.h.size() != f.size())
    throw Error("check_identities needs fields from compute_geometry");
  IdentityReport r;
  auto bump = [](double& slot, double value) { slot = std::max(slot, value); };

  for (std::size_t p = 0; p < f.size(); ++p) {
    bump(r.unit_speed, std::abs(f.v[p] * f.v[p] + f.du_norm2[p] - 1.0));
    bump(r.reciprocal, std::abs(f.v[p] * f.vtilde[p] - 1.0));

    const Mat prod = multiply(f.g_inv[p], f.g[p], n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        bump(r.metric_inverse, std::abs(prod[i][j] - (i == j ? 1.0 : 0.0)));
        bump(r.h_symmetry, std::abs(f.h[p][i][j] - f.h[p][j][i]));
      }

    double ksum = 0.0, ksq = 0.0;
    for (int i = 0; i < n; ++i) {
      ksum += f.kappa[p][i];
      ksq += f.kappa[p][i] * f.kappa[p][i];
    }
    bump(r.trace, std::abs(f.H[p] - ksum) / std::max(1.0, std::abs(f.H[p])));
    bump(r.norm, std::abs(f.a_norm2[p] - ksq) / std::max(1.0, f.a_norm2[p]));

    const Mat3 gbar = ambient_metric(model, state.u[p], grid.coordinate(p));
    double nn = 0.0;
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) nn += gbar[a][b] * f.nu[p][a] * f.nu[p][b];
    bump(r.normal_norm, std::abs(nn + 1.0));

    for (int i = 0; i < n; ++i) {
      Vec3 xi{};
      xi[0] = f.du[p][i];
      xi[i + 1] = 1.0;
      double t = 0.0;
      for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) t += gbar[a][b] * f.nu[p][a] * xi[b];
      bump(r.tangency, std::abs(t));
    }
  }
  return r;
}

}  // namespace pmc
