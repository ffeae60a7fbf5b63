#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>

namespace pobs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A continuum function x -> value, used for lift/restrict and norm diagnostics.
using Sampler = std::function<double(double)>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: unknown keys, out-of-range physical parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical stage failed (blow-up, Cholesky breakdown, non-convergence).
class NumericalError : public Error {
 public:
  NumericalError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

class BlowUpError : public NumericalError {
 public:
  BlowUpError(double t, const std::string& detail)
      : NumericalError("integrate", "blow-up at t=" + std::to_string(t) + detail), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace pobs
