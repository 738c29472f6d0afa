#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmc/ambient.hpp"
#include "pmc/geometry.hpp"

namespace pmc::testing {

struct NamedModel {
  std::string name;
  SpacetimeModel model;
  double t_lo;
  double t_hi;
};

inline std::vector<NamedModel> model_zoo() {
  std::vector<NamedModel> out;
  for (int n : {1, 2}) {
    const std::string d = " n=" + std::to_string(n);
    out.push_back({"minkowski" + d, SpacetimeModel::minkowski(n), -2.0, 2.0});
    out.push_back({"gaussian" + d, SpacetimeModel::flrw(n, ScaleFactor::Gaussian), -1.5, 1.5});
    out.push_back({"power" + d, SpacetimeModel::flrw(n, ScaleFactor::Power, 0.5), 0.1, 3.0});
    out.push_back({"exponential" + d, SpacetimeModel::flrw(n, ScaleFactor::Exponential, 1.0, 0.7),
                   -1.0, 1.0});
    out.push_back({"cosh" + d, SpacetimeModel::flrw(n, ScaleFactor::Cosh), -1.5, 1.5});
    out.push_back({"bump" + d, SpacetimeModel::conformal_bump(n, 0.3, {1, 2}, {1.0, 2.0}), -1.0,
                   1.0});
  }
  return out;
}

inline GraphState make_state(const GridSpec& grid, std::vector<double> values) {
  GraphState s;
  s.u = ScalarField(grid, std::move(values));
  return s;
}

template <typename Fn>
GraphState graph(const GridSpec& grid, Fn&& fn) {
  GraphState s;
  s.u = sample(grid, fn);
  return s;
}

inline GraphState flat(const GridSpec& grid, double c) {
  GraphState s;
  s.u = ScalarField(grid, c);
  return s;
}

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace pmc::testing
