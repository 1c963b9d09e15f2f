#pragma once

#include "ccas/cost.hpp"
#include "ccas/nadmm.hpp"

namespace ccas {

/// One ship's side of the trajectory-consensus problem. The decision vector
/// is the flattened control plan; states are eliminated by single shooting,
/// so the feasible set reduces to box bounds on the controls and the map to
/// consensus space is rollout followed by the inertial-frame transform.
class ShipNegotiationProblem : public ConsensusProblem {
 public:
  ShipNegotiationProblem(CostContext ctx, WaypointSegment segment, ControlBounds bounds,
                         solver::Options solver_opts, int horizon);

  int decision_dim() const override { return 2 * ctx_.num_ships() * horizon_; }
  int consensus_dim() const override { return 3 * ctx_.num_ships() * (horizon_ + 1); }

  Eigen::VectorXd map_to_consensus(const Eigen::VectorXd& w) const override;
  double f_value(const Eigen::VectorXd& w) const override;
  solver::Result prox_argmin(const Eigen::VectorXd& target, double beta,
                             const Eigen::VectorXd& w0) const override;

  /// Minimize the augmented Lagrangian at explicit (z, xi). prox_argmin is
  /// the z = 0 special case; both share the same argmin as Eq. (13c).
  solver::Result local_solve(const Eigen::VectorXd& z, const Eigen::VectorXd& xi, double beta,
                             const Eigen::VectorXd& w0) const;

  /// Neutral plan: hold the previous cross-track command, full speed, no
  /// proposals.
  Eigen::VectorXd neutral_controls() const;

  const Eigen::VectorXd& lower_bounds() const { return lo_; }
  const Eigen::VectorXd& upper_bounds() const { return hi_; }
  const CostContext& context() const { return ctx_; }
  const WaypointSegment& segment() const { return segment_; }
  int horizon() const { return horizon_; }

 private:
  CostContext ctx_;
  WaypointSegment segment_;
  ControlBounds bounds_;
  solver::Options solver_opts_;
  int horizon_;
  Eigen::VectorXd lo_, hi_;
};

} // namespace ccas
