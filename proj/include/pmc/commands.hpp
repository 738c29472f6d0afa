#pragma once

#include <ostream>
#include <vector>

#include "pmc/config.hpp"

namespace pmc {

// Each command writes its artifacts below config.output.directory and
// returns the process exit code: 0 success, 1 any failure.

/// summary.json, series.csv, snapshots/step_K.csv.
int run_evolve(const RunConfig& config, std::ostream& log);

/// verify.json: geometry identities, dual-path refinement, constant-slice
/// exactness and the Christoffel finite-difference check.
int run_verify(const RunConfig& config, std::ostream& log);

/// refine.json with the observed orders.
int run_refine(const RunConfig& config, const std::vector<int>& levels, std::ostream& log);

/// slices.csv.
int run_slice_scan(const RunConfig& config, double t_min, double t_max, int steps,
                   std::ostream& log);

}  // namespace pmc
