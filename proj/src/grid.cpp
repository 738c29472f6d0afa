#include "pmc/grid.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace pmc {

GridSpec::GridSpec(int dim, std::array<int, kMaxDim> points, Vec lengths)
    : dim_(dim), points_(points), lengths_(lengths) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("grid dim must be 1 or 2");
  for (int k = 0; k < dim; ++k) {
    if (points[k] < 8 || points[k] % 2 != 0)
      throw std::invalid_argument("grid points must be even and >= 8, got " +
                                  std::to_string(points[k]));
    if (!(lengths[k] > 0.0)) throw std::invalid_argument("grid lengths must be positive");
  }
  for (int k = dim; k < kMaxDim; ++k) {
    points_[k] = 1;
    lengths_[k] = 1.0;
  }
}

std::size_t GridSpec::shift(std::size_t node, int k, int offset) const {
  const int n0 = points_[0];
  int i = static_cast<int>(node % n0);
  int j = static_cast<int>(node / n0);
  if (k == 0) {
    i = ((i + offset) % n0 + n0) % n0;
  } else {
    const int n1 = points_[1];
    j = ((j + offset) % n1 + n1) % n1;
  }
  return index(i, j);
}

Vec GridSpec::coordinate(std::size_t node) const {
  Vec x{};
  x[0] = static_cast<double>(node % points_[0]) * spacing(0);
  if (dim_ > 1) x[1] = static_cast<double>(node / points_[0]) * spacing(1);
  return x;
}

ScalarField::ScalarField(const GridSpec& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw std::invalid_argument("field size does not match grid");
}

ScalarField partial_first(const ScalarField& field, int k) {
  const GridSpec& g = field.grid;
  ScalarField out(g);
  const double inv = 1.0 / (2.0 * g.spacing(k));
  for (std::size_t p = 0; p < g.size(); ++p)
    out[p] = (field[g.shift(p, k, 1)] - field[g.shift(p, k, -1)]) * inv;
  return out;
}

ScalarField partial_second(const ScalarField& field, int k, int l) {
  const GridSpec& g = field.grid;
  ScalarField out(g);
  if (k == l) {
    const double h = g.spacing(k);
    const double inv = 1.0 / (h * h);
    for (std::size_t p = 0; p < g.size(); ++p)
      out[p] = (field[g.shift(p, k, 1)] - 2.0 * field[p] + field[g.shift(p, k, -1)]) * inv;
    return out;
  }
  // fixed orientation so the mixed stencil is bitwise symmetric in (k, l)
  if (k > l) std::swap(k, l);
  const double inv = 1.0 / (4.0 * g.spacing(k) * g.spacing(l));
  for (std::size_t p = 0; p < g.size(); ++p) {
    const std::size_t kp = g.shift(p, k, 1), km = g.shift(p, k, -1);
    out[p] = (field[g.shift(kp, l, 1)] - field[g.shift(kp, l, -1)] - field[g.shift(km, l, 1)] +
              field[g.shift(km, l, -1)]) *
             inv;
  }
  return out;
}

}  // namespace pmc
