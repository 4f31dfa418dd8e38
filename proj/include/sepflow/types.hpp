#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace sepflow {

using Real = double;
using Array1D = Eigen::ArrayXd;
// Grid-sampled quantity: row index = radial node, column index = angular node.
using Array2D = Eigen::ArrayXXd;
using Complex = std::complex<Real>;

// Field/grid dimension mismatch.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An operation's stated precondition does not hold for the given input.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Invalid or inconsistent run configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runtime numerical failure (NaN, CFL violation, solver breakdown).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sepflow
