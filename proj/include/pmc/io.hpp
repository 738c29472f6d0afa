#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pmc/analysis.hpp"

namespace pmc {

/// Decimal with 17 significant digits; round-trips through strtod.
std::string format_number(double value);

inline constexpr const char* kSeriesHeader =
    "time,dt,sup_abs_residual,min_signed_residual,max_vtilde,max_abs_kappa,max_abs_H,u_min,u_max,"
    "max_du_norm";

/// One MonitorRecord per row under kSeriesHeader.
std::string series_csv(const std::vector<MonitorRecord>& records);

/// Columns x1[,x2],u,H,vtilde,kappa1[,kappa2].
std::string snapshot_csv(const GraphState& state, const GeometryFields& fields);

/// Columns x0,H_slice.
std::string slices_csv(const std::vector<SliceSample>& samples);

nlohmann::json to_json(const MonitorRecord& record);
nlohmann::json to_json(const AuditReport& report);
nlohmann::json to_json(const RefinementTable& table);

/// Creates parent directories; throws IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace pmc
