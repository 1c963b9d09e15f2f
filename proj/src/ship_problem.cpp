#include "ccas/ship_problem.hpp"

namespace ccas {

ShipNegotiationProblem::ShipNegotiationProblem(CostContext ctx, WaypointSegment segment,
                                               ControlBounds bounds, solver::Options solver_opts,
                                               int horizon)
    : ctx_(std::move(ctx)),
      segment_(segment),
      bounds_(bounds),
      solver_opts_(solver_opts),
      horizon_(horizon) {
  const int M = ctx_.num_ships();
  const int N = horizon_;
  lo_.resize(2 * M * N);
  hi_.resize(2 * M * N);
  for (int j = 0; j < M; ++j) {
    for (int k = 0; k < N; ++k) {
      const int b = j * 2 * N + 2 * k;
      if (j == ctx_.ego) {
        lo_[b] = -bounds_.y_max;
        hi_[b] = bounds_.y_max;
        lo_[b + 1] = bounds_.u_s_min;
        hi_[b + 1] = 1.0;
      } else {
        lo_[b] = 0.0; // no port-side course proposals
        hi_[b] = bounds_.chi_prop_max;
        lo_[b + 1] = bounds_.u_s_min_prop;
        hi_[b + 1] = 1.0;
      }
    }
  }
}

Eigen::VectorXd ShipNegotiationProblem::map_to_consensus(const Eigen::VectorXd& w) const {
  const ControlPlan plan = ControlPlan::unflatten(w, ctx_.ego, ctx_.num_ships(), horizon_);
  const TrajectoryStack stack =
      rollout(ctx_.initial, plan, horizon_, ctx_.own_params, ctx_.neighbor_params);
  return stack_to_global(stack, segment_);
}

double ShipNegotiationProblem::f_value(const Eigen::VectorXd& w) const {
  const ControlPlan plan = ControlPlan::unflatten(w, ctx_.ego, ctx_.num_ships(), horizon_);
  const TrajectoryStack stack =
      rollout(ctx_.initial, plan, horizon_, ctx_.own_params, ctx_.neighbor_params);
  return total_cost(stack, plan, ctx_);
}

solver::Result ShipNegotiationProblem::local_solve(const Eigen::VectorXd& z,
                                                   const Eigen::VectorXd& xi, double beta,
                                                   const Eigen::VectorXd& w0) const {
  LagrangianContext lag{z, xi, beta, segment_};
  const auto objective = [&](const Eigen::VectorXd& x) {
    const ControlPlan plan = ControlPlan::unflatten(x, ctx_.ego, ctx_.num_ships(), horizon_);
    const TrajectoryStack stack =
        rollout(ctx_.initial, plan, horizon_, ctx_.own_params, ctx_.neighbor_params);
    return augmented_lagrangian(stack, plan, ctx_, lag);
  };
  const auto gradient = [&](const Eigen::VectorXd& x) {
    const ControlPlan plan = ControlPlan::unflatten(x, ctx_.ego, ctx_.num_ships(), horizon_);
    return lagrangian_gradient(plan, ctx_, lag);
  };
  return solver::minimize_box(objective, gradient, w0, lo_, hi_, solver_opts_);
}

solver::Result ShipNegotiationProblem::prox_argmin(const Eigen::VectorXd& target, double beta,
                                                   const Eigen::VectorXd& w0) const {
  return local_solve(Eigen::VectorXd::Zero(consensus_dim()), target, beta, w0);
}

Eigen::VectorXd ShipNegotiationProblem::neutral_controls() const {
  ControlPlan plan(ctx_.ego, ctx_.num_ships(), horizon_);
  plan.own.row(0).setConstant(ctx_.u_y_prev);
  return plan.flatten();
}

} // namespace ccas
