#include "pmc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "pmc/errors.hpp"

namespace pmc {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string series_csv(const std::vector<MonitorRecord>& records) {
  std::string out = kSeriesHeader;
  out += '\n';
  for (const auto& r : records) {
    for (double v : {r.time, r.dt, r.sup_abs_residual, r.min_signed_residual, r.max_vtilde,
                     r.max_abs_kappa, r.max_abs_H, r.u_min, r.u_max}) {
      out += format_number(v);
      out += ',';
    }
    out += format_number(r.max_du_norm);
    out += '\n';
  }
  return out;
}

std::string snapshot_csv(const GraphState& state, const GeometryFields& fields) {
  const GridSpec& grid = state.grid();
  const int n = grid.dim();
  std::string out;
  for (int k = 0; k < n; ++k) out += "x" + std::to_string(k + 1) + ",";
  out += "u,H,vtilde";
  for (int k = 0; k < n; ++k) out += ",kappa" + std::to_string(k + 1);
  out += '\n';
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Vec x = grid.coordinate(p);
    for (int k = 0; k < n; ++k) out += format_number(x[k]) + ",";
    out += format_number(state.u[p]) + "," + format_number(fields.H[p]) + "," +
           format_number(fields.vtilde[p]);
    for (int k = 0; k < n; ++k) out += "," + format_number(fields.kappa[p][k]);
    out += '\n';
  }
  return out;
}

std::string slices_csv(const std::vector<SliceSample>& samples) {
  std::string out = "x0,H_slice\n";
  for (const auto& s : samples) out += format_number(s.x0) + "," + format_number(s.h_slice) + "\n";
  return out;
}

nlohmann::json to_json(const MonitorRecord& r) {
  return {{"time", number(r.time)},
          {"dt", number(r.dt)},
          {"sup_abs_residual", number(r.sup_abs_residual)},
          {"min_signed_residual", number(r.min_signed_residual)},
          {"max_vtilde", number(r.max_vtilde)},
          {"max_abs_kappa", number(r.max_abs_kappa)},
          {"max_abs_H", number(r.max_abs_H)},
          {"u_min", number(r.u_min)},
          {"u_max", number(r.u_max)},
          {"max_du_norm", number(r.max_du_norm)}};
}

nlohmann::json to_json(const AuditReport& report) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"name", v.name},
                        {"passed", v.passed},
                        {"applicable", v.applicable},
                        {"worst_value", number(v.worst_value)},
                        {"worst_time", number(v.worst_time)}});
  }
  return {{"overall_pass", report.overall_pass}, {"verdicts", verdicts}};
}

nlohmann::json to_json(const RefinementTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows)
    rows.push_back({{"N", r.points}, {"error", number(r.error)},
                    {"observed_order", number(r.observed_order)}});
  return {{"rows", rows},
          {"exact", table.exact},
          {"exact_threshold", table.exact_threshold},
          {"orders_ok", table.orders_ok},
          {"order_band", {kOrderLow, kOrderHigh}},
          {"verdict", table.exact ? "exact" : (table.orders_ok ? "order_ok" : "order_fail")}};
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace pmc
