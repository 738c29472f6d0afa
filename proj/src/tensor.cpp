#include "pmc/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace pmc {

Mat inverse(const Mat& m, int n) {
  Mat r{};
  if (n == 1) {
    r[0][0] = 1.0 / m[0][0];
    return r;
  }
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  r[0][0] = m[1][1] / det;
  r[0][1] = -m[0][1] / det;
  r[1][0] = -m[1][0] / det;
  r[1][1] = m[0][0] / det;
  return r;
}

Vec eigenvalues(const Mat& m, int n) {
  if (n == 1) return {m[0][0], 0.0};
  const double half_trace = 0.5 * (m[0][0] + m[1][1]);
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double disc = std::sqrt(std::max(0.0, half_trace * half_trace - det));
  return {half_trace + disc, half_trace - disc};
}

}  // namespace pmc
