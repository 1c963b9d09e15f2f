#pragma once

#include <Eigen/Core>

#include <functional>
#include <stdexcept>

namespace ccas {

/// Raised when an objective evaluates to a non-finite value.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace solver {

struct Options {
  double tol_stat = 1e-6;   // stop when ||x - P(x - g)|| <= tol_stat
  int max_iters = 300;
  double armijo_c = 1e-4;
  int max_backtracks = 40;
  double initial_move = 1.0; // cap on the first step's infinity-norm displacement
};

struct Result {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  double stationarity = 0.0;
  bool converged = false;
  bool cap_reached = false;
  double curvature_estimate = 0.0; // max ||grad change|| / ||step|| along accepted iterates
};

using Objective = std::function<double(const Eigen::VectorXd&)>;
using Gradient = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Projected gradient descent over a box, with Armijo backtracking along the
/// projection arc and a safeguarded Barzilai-Borwein spectral step.
Result minimize_box(const Objective& f, const Gradient& grad, Eigen::VectorXd x0,
                    const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, const Options& opts);

} // namespace solver
} // namespace ccas
