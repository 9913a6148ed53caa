#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lagmesh {

/// Base of every error raised by the library. `kind()` is a stable short tag
/// used in machine-readable error records.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InvalidConfiguration : public Error {
 public:
  explicit InvalidConfiguration(const std::string& what) : Error("invalid-configuration", what) {}
};

class DegenerateGeometry : public Error {
 public:
  explicit DegenerateGeometry(const std::string& what) : Error("degenerate-geometry", what) {}
};

class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what) : Error("contract-violation", what) {}
};

class SingularSystem : public Error {
 public:
  SingularSystem(std::size_t node, const std::string& what)
      : Error("singular-system", what), node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

/// A cell reached nonpositive signed area. `stage` is the RK stage (1-4)
/// whose staged coordinates tangled, or 0 for a completed step.
class TanglingError : public Error {
 public:
  TanglingError(std::size_t cell, int stage, const std::string& what)
      : Error("tangling", what), cell_(cell), stage_(stage) {}
  std::size_t cell() const noexcept { return cell_; }
  int stage() const noexcept { return stage_; }

 private:
  std::size_t cell_;
  int stage_;
};

class TimeStepCollapse : public Error {
 public:
  explicit TimeStepCollapse(const std::string& what) : Error("time-step-collapse", what) {}
};

class RunawayError : public Error {
 public:
  explicit RunawayError(const std::string& what) : Error("runaway", what) {}
};

class OrderUndefined : public Error {
 public:
  explicit OrderUndefined(const std::string& what) : Error("order-undefined", what) {}
};

/// Malformed command line or configuration value.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error("usage", what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace lagmesh
