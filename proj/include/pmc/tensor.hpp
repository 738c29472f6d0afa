#pragma once

#include <array>
#include <cstddef>

namespace pmc {

inline constexpr int kMaxDim = 2;

// Spatial vectors and matrices are stored at the maximal dimension; entries
// beyond the active dimension stay zero.
using Vec = std::array<double, kMaxDim>;
using Mat = std::array<Vec, kMaxDim>;

// Spacetime quantities, index 0 is x^0.
using Vec3 = std::array<double, kMaxDim + 1>;
using Mat3 = std::array<Vec3, kMaxDim + 1>;
using Christoffel3 = std::array<Mat3, kMaxDim + 1>;

/// Γ^k_ij of the induced metric, indexed [k][i][j].
using Christoffel2 = std::array<Mat, kMaxDim>;

/// Inverse of the leading n×n block.
Mat inverse(const Mat& m, int n);

/// Eigenvalues of the leading n×n block of a matrix with real spectrum,
/// sorted in descending order. The 2×2 case uses the trace/determinant
/// closed form; a slightly negative discriminant is clamped to zero.
Vec eigenvalues(const Mat& m, int n);

inline Mat multiply(const Mat& a, const Mat& b, int n) {
  Mat r{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline double trace(const Mat& m, int n) {
  double t = 0.0;
  for (int i = 0; i < n; ++i) t += m[i][i];
  return t;
}

}  // namespace pmc
