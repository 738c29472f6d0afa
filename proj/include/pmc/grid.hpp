#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "pmc/tensor.hpp"

namespace pmc {

/// Uniform periodic grid on the flat torus Π_k [0, L_k). Node k-coordinates
/// are i·h_k with h_k = L_k / N_k; index arithmetic wraps modulo N_k.
class GridSpec {
 public:
  GridSpec() = default;
  /// Throws std::invalid_argument unless dim ∈ {1,2}, N_k even and ≥ 8, L_k > 0.
  GridSpec(int dim, std::array<int, kMaxDim> points, Vec lengths);

  static GridSpec line(int points, double length = 1.0) { return {1, {points, 1}, {length, 1.0}}; }
  static GridSpec square(int points, double length = 1.0) {
    return {2, {points, points}, {length, length}};
  }

  int dim() const { return dim_; }
  int points(int k) const { return points_[k]; }
  double length(int k) const { return lengths_[k]; }
  double spacing(int k) const { return lengths_[k] / points_[k]; }
  std::size_t size() const { return static_cast<std::size_t>(points_[0]) * points_[1]; }

  std::size_t index(int i, int j = 0) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(points_[0]) * j;
  }
  /// Node reached from `node` by `offset` steps along dimension k, wrapped.
  std::size_t shift(std::size_t node, int k, int offset) const;
  Vec coordinate(std::size_t node) const;

  bool operator==(const GridSpec&) const = default;

 private:
  int dim_ = 1;
  std::array<int, kMaxDim> points_{8, 1};
  Vec lengths_{1.0, 1.0};
};

struct ScalarField {
  GridSpec grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}
  ScalarField(const GridSpec& g, std::vector<double> v);

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  std::size_t size() const { return values.size(); }
};

/// Second-order central difference (f[i+1] - f[i-1]) / (2 h_k).
ScalarField partial_first(const ScalarField& field, int k);

/// k = l: (f[i+1] - 2 f[i] + f[i-1]) / h_k²; k ≠ l: four-point cross stencil.
ScalarField partial_second(const ScalarField& field, int k, int l);

template <typename Fn>
ScalarField sample(const GridSpec& grid, Fn&& fn) {
  ScalarField f(grid);
  for (std::size_t p = 0; p < grid.size(); ++p) f[p] = fn(grid.coordinate(p));
  return f;
}

}  // namespace pmc
