#include "ccas/solver.hpp"

#include <algorithm>
#include <cmath>

namespace ccas::solver {

namespace {

Eigen::VectorXd project(const Eigen::VectorXd& x, const Eigen::VectorXd& lo,
                        const Eigen::VectorXd& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

} // namespace

Result minimize_box(const Objective& f, const Gradient& grad, Eigen::VectorXd x0,
                    const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, const Options& opts) {
  if (x0.size() != lo.size() || x0.size() != hi.size())
    throw std::invalid_argument("minimize_box: bound dimensions do not match x0");

  Result res;
  Eigen::VectorXd x = project(x0, lo, hi);
  double fx = f(x);
  if (!std::isfinite(fx)) throw SolverError("minimize_box: non-finite objective at start");
  Eigen::VectorXd g = grad(x);

  double alpha = opts.initial_move / std::max(g.lpNorm<Eigen::Infinity>(), 1e-12);
  for (int it = 0; it < opts.max_iters; ++it) {
    res.stationarity = (x - project(x - g, lo, hi)).norm();
    if (res.stationarity <= opts.tol_stat) {
      res.converged = true;
      break;
    }

    double step = alpha;
    Eigen::VectorXd x_new;
    double f_new = fx;
    bool accepted = false;
    for (int bt = 0; bt < opts.max_backtracks; ++bt) {
      x_new = project(x - step * g, lo, hi);
      const Eigen::VectorXd dx = x_new - x;
      if (dx.norm() == 0.0) break; // fully pinned by the box
      f_new = f(x_new);
      if (std::isfinite(f_new) && f_new <= fx + opts.armijo_c * g.dot(dx)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break; // numerical floor; return the best iterate so far

    const Eigen::VectorXd g_new = grad(x_new);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    const double sn = s.norm();
    if (sn > 0.0) res.curvature_estimate = std::max(res.curvature_estimate, y.norm() / sn);
    const double sy = s.dot(y);
    if (sy > 1e-14) alpha = std::clamp(s.squaredNorm() / sy, 1e-12, 1e12);
    else alpha = std::clamp(2.0 * step, 1e-12, 1e12);

    x = std::move(x_new);
    fx = f_new;
    g = g_new;
    ++res.iterations;
  }

  res.cap_reached = !res.converged && res.iterations >= opts.max_iters;
  res.x = std::move(x);
  res.value = fx;
  res.stationarity = (res.x - project(res.x - g, lo, hi)).norm();
  if (res.stationarity <= opts.tol_stat) res.converged = true;
  return res;
}

} // namespace ccas::solver
