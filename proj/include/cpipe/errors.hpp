#ifndef CPIPE_ERRORS_HPP
#define CPIPE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace cpipe {

/// Base of every error raised by the library. `module()` names the component
/// that detected the problem so the CLI can tag diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)) {}
  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& what) : Error("geometry", what) {}
};

/// The tube map is not invertible (eps * kappa * s3 * R >= 1).
class MapError : public Error {
 public:
  MapError(const std::string& what, double s1) : Error("geometry", what), s1_(s1) {}
  double s1() const noexcept { return s1_; }

 private:
  double s1_;
};

class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what) : Error("pressure", what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, std::string module = "config")
      : Error(std::move(module), what) {}
};

/// A solvability condition of a cross-section problem does not hold.
class ModelError : public Error {
 public:
  ModelError(const std::string& what, double defect) : Error("expansion", what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class CouplingError : public Error {
 public:
  CouplingError(const std::string& what, std::vector<double> history)
      : Error("coupling", what), history_(std::move(history)) {}
  const std::vector<double>& residual_history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

}  // namespace cpipe

#endif
