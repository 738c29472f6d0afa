#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "pmc/analysis.hpp"

namespace pmc {

struct OutputConfig {
  std::filesystem::path directory = "output";
  long snapshot_every = 0;  // steps; 0 writes only the initial and final snapshots
};

struct VerifyConfig {
  std::vector<int> levels;  // defaults to {N, 2N}
  double ratio_low = 3.5;
  double ratio_high = 4.5;
};

/// A fully validated run description.
struct RunConfig {
  SpacetimeModel model;
  GridSpec grid;
  PrescribedCurvature f;
  HeightProfile initial;
  FlowConfig flow;
  AuditConfig audit;
  OutputConfig output;
  VerifyConfig verify;
  StudyKind refine_study = StudyKind::Flow;

  GraphState initial_state() const { return initial.sample(grid); }
  RefinementScenario refinement_scenario() const;
};

/// Parses a JSON document. Relative table paths resolve against `base_dir`.
/// Every problem is collected into one ConfigError.
RunConfig parse_config(std::string_view document, const std::filesystem::path& base_dir = {});

/// Reads and parses a file; relative paths resolve against its directory.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace pmc
