#include "pmc/errors.hpp"

#include <algorithm>
#include <cstdio>

namespace pmc {

namespace {

std::string spacelike_message(std::size_t node, double du_norm2, double margin) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "spacelikeness lost at node %zu: |Du|^2 = %.17g >= 1 - %.3g",
                node, du_norm2, margin);
  return buf;
}

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::string out = "invalid configuration";
  for (const auto& issue : issues) {
    out += "\n  ";
    out += issue.path;
    out += ": ";
    out += issue.message;
  }
  return out;
}

}  // namespace

SpacelikenessLost::SpacelikenessLost(std::size_t node, double du_norm2, double margin)
    : Error(spacelike_message(node, du_norm2, margin)), node_(node), du_norm2_(du_norm2) {}

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

bool ConfigError::has(ConfigIssue::Code code) const {
  return std::any_of(issues_.begin(), issues_.end(),
                     [code](const ConfigIssue& i) { return i.code == code; });
}

bool ConfigError::mentions(const std::string& path) const {
  return std::any_of(issues_.begin(), issues_.end(),
                     [&](const ConfigIssue& i) { return i.path == path; });
}

}  // namespace pmc
