#include "pmc/commands.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "pmc/errors.hpp"
#include "pmc/io.hpp"

namespace pmc {

namespace {

using nlohmann::json;

std::string snapshot_name(long step) { return "snapshots/step_" + std::to_string(step) + ".csv"; }

}  // namespace

int run_evolve(const RunConfig& config, std::ostream& log) {
  const auto& dir = config.output.directory;
  try {
    std::filesystem::create_directories(dir);
  } catch (const std::filesystem::filesystem_error& e) {
    log << "IoError: cannot create output directory " << dir << ": " << e.what() << "\n";
    return 1;
  }

  try {
    const GraphState initial = config.initial_state();
    const long every = config.output.snapshot_every;
    const auto started = std::chrono::steady_clock::now();
    const FlowTrace trace =
        evolve(config.model, initial, config.f, config.flow,
               [&](long step, const GraphState& s, const GeometryFields& g, const MonitorRecord&,
                   bool) {
                 if (step == 0 || (every > 0 && step % every == 0))
                   write_text(dir / snapshot_name(step), snapshot_csv(s, g));
               });
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    for (const auto& w : trace.warnings) log << "warning: " << w << "\n";

    try {
      const GeometryFields g = compute_geometry(config.model, trace.final_state,
                                                config.flow.spacelike_margin);
      write_text(dir / snapshot_name(trace.steps), snapshot_csv(trace.final_state, g));
    } catch (const Error&) {
      // the final state itself violated a guard; the series still records it
    }

    write_text(dir / "series.csv", series_csv(trace.records));

    json summary;
    summary["status"] = to_string(trace.status);
    summary["message"] = trace.message;
    summary["steps"] = trace.steps;
    summary["final_time"] = trace.final_state.time;
    summary["records"] = trace.records.size();
    summary["warnings"] = trace.warnings;
    summary["wall_time_seconds"] = wall;
    if (!trace.records.empty()) {
      summary["final_residual"] = trace.records.back().sup_abs_residual;
      summary["final_record"] = to_json(trace.records.back());
    } else {
      summary["final_residual"] = nullptr;
    }

    bool audit_ok = false;
    try {
      const AuditReport report = audit(trace, config.audit);
      summary["audit"] = to_json(report);
      audit_ok = report.overall_pass;
    } catch (const InsufficientTrace& e) {
      summary["audit"] = nullptr;
      summary["audit_error"] = e.what();
    }
    write_text(dir / "summary.json", summary.dump(2) + "\n");

    log << "status " << to_string(trace.status) << " after " << trace.steps << " steps";
    if (!trace.message.empty()) log << " (" << trace.message << ")";
    log << "\n";
    if (trace.status != FlowStatus::Converged) return 1;
    if (!audit_ok) {
      log << "audit failed\n";
      return 1;
    }
    return 0;
  } catch (const IoError& e) {
    log << "IoError: " << e.what() << "\n";
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
  }
  return 1;
}

int run_verify(const RunConfig& config, std::ostream& log) {
  json checks = json::array();
  bool all = true;
  auto add = [&](const std::string& name, bool passed, json details) {
    checks.push_back({{"name", name}, {"passed", passed}, {"details", std::move(details)}});
    all = all && passed;
    log << (passed ? "PASS " : "FAIL ") << name << "\n";
  };

  const double margin = config.flow.spacelike_margin;
  const int dim = config.grid.dim();
  auto grid_at = [&](int points) {
    return GridSpec(dim, {points, dim > 1 ? points : 1},
                    {config.grid.length(0), config.grid.length(1)});
  };

  try {
    // per-node identities and one-vs-full Gauss formula at each level
    std::vector<int> levels = config.verify.levels;
    if (config.initial.kind == HeightProfile::Kind::Sampled) levels = {config.grid.points(0)};
    json id_rows = json::array(), dp_rows = json::array();
    bool id_ok = true;
    std::vector<double> disc;
    for (int n : levels) {
      const GridSpec grid = config.initial.kind == HeightProfile::Kind::Sampled ? config.grid : grid_at(n);
      const GraphState state = config.initial.sample(grid);
      const GeometryFields g = compute_geometry(config.model, state, margin);
      const IdentityReport r = check_identities(config.model, state, g);
      id_ok = id_ok && r.within();
      id_rows.push_back({{"N", n},
                         {"unit_speed", r.unit_speed},
                         {"reciprocal", r.reciprocal},
                         {"metric_inverse", r.metric_inverse},
                         {"h_symmetry", r.h_symmetry},
                         {"trace", r.trace},
                         {"norm", r.norm},
                         {"normal_norm", r.normal_norm},
                         {"tangency", r.tangency}});
      const DualPathResult dp = dual_path_check(config.model, state, margin);
      disc.push_back(dp.max_discrepancy);
      dp_rows.push_back({{"N", n}, {"max_discrepancy", dp.max_discrepancy}});
    }
    add("geometry_identities", id_ok, id_rows);

    bool exact = true;
    for (double d : disc) exact = exact && d <= 1e-10;
    bool ratios_ok = disc.size() >= 2;
    json ratios = json::array();
    for (std::size_t i = 0; i + 1 < disc.size(); ++i) {
      const double q = disc[i] / disc[i + 1];
      ratios.push_back(std::isfinite(q) ? json(q) : json(nullptr));
      ratios_ok = ratios_ok && q >= config.verify.ratio_low && q <= config.verify.ratio_high;
    }
    add("dual_path", exact || ratios_ok,
        {{"levels", dp_rows}, {"ratios", ratios}, {"exact", exact},
         {"ratio_band", {config.verify.ratio_low, config.verify.ratio_high}}});

    // constant graph at the mean initial height
    {
      const GraphState init = config.initial_state();
      double mean = 0.0;
      for (double u : init.u.values) mean += u;
      mean /= static_cast<double>(init.u.size());
      GraphState flat;
      flat.u = ScalarField(config.grid, mean);
      const GeometryFields g = compute_geometry(config.model, flat, margin);
      double err = 0.0;
      for (std::size_t p = 0; p < g.size(); ++p) {
        const BackgroundData& b = g.background[p];
        double hbar_trace = 0.0;
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) hbar_trace += b.sigma_inv[i][j] * b.hbar[i][j];
        hbar_trace /= b.e_psi * b.e_psi;
        err = std::max(err, std::abs(g.H[p] - hbar_trace));
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) err = std::max(err, std::abs(g.h[p][i][j] - b.hbar[i][j]));
      }
      json details = {{"height", mean}, {"max_error_vs_slice_form", err}};
      if (config.model.homogeneous()) {
        const double hs = slice_mean_curvature(config.model, mean);
        double e2 = 0.0;
        for (double H : g.H) e2 = std::max(e2, std::abs(H - hs));
        details["max_error_vs_slice_mean_curvature"] = e2;
        err = std::max(err, e2);
      }
      const double dp = dual_path_check(config.model, flat, margin).max_discrepancy;
      details["dual_path"] = dp;
      add("constant_slice", err <= 1e-10 && dp <= 1e-10, details);
    }

    // closed-form Christoffels against differences of the metric
    {
      std::mt19937_64 rng(20240607);
      const double lo = std::max(config.initial.min_value() - 0.5, config.model.temporal_floor());
      const double hi = std::max(config.initial.max_value() + 0.5, lo + 1.0);
      std::uniform_real_distribution<double> t_dist(lo, hi);
      double worst = 0.0;
      for (int i = 0; i < 100; ++i) {
        Vec x{};
        for (int k = 0; k < dim; ++k)
          x[k] = std::uniform_real_distribution<double>(0.0, config.grid.length(k))(rng);
        worst = std::max(worst, christoffel_fd_error(config.model, t_dist(rng), x));
      }
      add("christoffel_fd", worst <= 1e-8, {{"points", 100}, {"max_relative_error", worst}});
    }
  } catch (const Error& e) {
    add("evaluation", false, {{"error", e.what()}});
  }

  try {
    write_text(config.output.directory / "verify.json",
               json({{"passed", all}, {"checks", checks}}).dump(2) + "\n");
  } catch (const IoError& e) {
    log << "IoError: " << e.what() << "\n";
    return 1;
  }
  return all ? 0 : 1;
}

int run_refine(const RunConfig& config, const std::vector<int>& levels, std::ostream& log) {
  json doc;
  int code = 1;
  try {
    const RefinementTable table = refinement_study(config.refinement_scenario(), levels);
    doc = to_json(table);
    code = table.passed() ? 0 : 1;
    for (const auto& r : table.rows)
      log << "N=" << r.points << " error=" << format_number(r.error)
          << " order=" << format_number(r.observed_order) << "\n";
    log << "verdict " << doc["verdict"].get<std::string>() << "\n";
  } catch (const NoReference& e) {
    doc = {{"error", "NoReference"}, {"message", e.what()}};
    log << "NoReference: " << e.what() << "\n";
  } catch (const Error& e) {
    doc = {{"error", "Error"}, {"message", e.what()}};
    log << "error: " << e.what() << "\n";
  }
  try {
    write_text(config.output.directory / "refine.json", doc.dump(2) + "\n");
  } catch (const IoError& e) {
    log << "IoError: " << e.what() << "\n";
    return 1;
  }
  return code;
}

int run_slice_scan(const RunConfig& config, double t_min, double t_max, int steps,
                   std::ostream& log) {
  try {
    write_text(config.output.directory / "slices.csv",
               slices_csv(slice_scan(config.model, t_min, t_max, steps)));
    return 0;
  } catch (const UnsupportedModel& e) {
    log << "UnsupportedModel: " << e.what() << "\n";
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace pmc
