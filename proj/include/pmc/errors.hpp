#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation outside a model's temporal domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation requires a spatially homogeneous model.
class UnsupportedModel : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownModel : public Error {
 public:
  using Error::Error;
};

class InsufficientTrace : public Error {
 public:
  using Error::Error;
};

class NoReference : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// The graph violated |Du|^2 < 1 - margin; carries the worst node.
class SpacelikenessLost : public Error {
 public:
  SpacelikenessLost(std::size_t node, double du_norm2, double margin);

  std::size_t node() const noexcept { return node_; }
  double du_norm2() const noexcept { return du_norm2_; }

 private:
  std::size_t node_;
  double du_norm2_;
};

struct ConfigIssue {
  enum class Code { Invalid, UnknownModel, GridMismatch };
  std::string path;
  std::string message;
  Code code = Code::Invalid;
};

/// Aggregated configuration diagnostics, one entry per offending field.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);

  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }
  bool has(ConfigIssue::Code code) const;
  bool mentions(const std::string& path) const;

 private:
  std::vector<ConfigIssue> issues_;
};

}  // namespace pmc
