#pragma once

#include "ccas/frames.hpp"
#include "ccas/kinematics.hpp"
#include "ccas/risk.hpp"

#include <Eigen/Core>

#include <vector>

namespace ccas {

/// Weights of the control-effort and behavior terms.
struct CostWeights {
  double K_y = 1e-2;       // own cross-track move penalty [1/m^2]
  double K_s = 2e-2;       // own speed-deviation penalty
  double K_b = 0.01;       // starboard-preference surrogate weight
  Eigen::VectorXd alpha;   // proposal priority weight per neighbor; alpha[ego] unused
};

/// Consensus coupling data for the augmented Lagrangian.
struct LagrangianContext {
  Eigen::VectorXd z;      // multipliers, length 3M(N+1)
  Eigen::VectorXd xi;     // global consensus vector, same length
  double beta = 3e-4;     // penalty > 0
  WaypointSegment segment; // ego's active segment
};

/// Everything needed to evaluate the MPC objective through the rollout.
struct CostContext {
  int ego = 0;
  std::vector<PathPose> initial;              // per ship, in the ego path frame
  OwnShipParams own_params;
  std::vector<NeighborParams> neighbor_params; // per ship; entry [ego] unused
  CostWeights weights;
  std::vector<RiskParams> risk;               // field shape per target ship
  double u_y_prev = 0.0;                      // last applied cross-track command

  int num_ships() const { return static_cast<int>(initial.size()); }
};

/// Cost of own maneuvers plus alpha-weighted proposal costs. The first
/// cross-track difference is taken against u_y_prev.
double effort_cost(const ControlPlan& plan, const CostWeights& w, double u_y_prev);

/// Starboard-preference surrogate: K_b * sum max(0, -u_y)^2.
double behavior_cost(const ControlPlan& plan, const CostWeights& w);

/// Risk + effort + behavior. The stack must be the rollout of the plan.
double total_cost(const TrajectoryStack& stack, const ControlPlan& plan, const CostContext& ctx);

/// total_cost + <z, r> + (beta/2)||r||^2 with r = stack_to_global(stack) - xi.
double augmented_lagrangian(const TrajectoryStack& stack, const ControlPlan& plan,
                            const CostContext& ctx, const LagrangianContext& lag);

/// Exact gradient of augmented_lagrangian with respect to the flattened plan,
/// reverse-accumulated through the rollout recursion. Re-rolls the plan
/// internally.
Eigen::VectorXd lagrangian_gradient(const ControlPlan& plan, const CostContext& ctx,
                                    const LagrangianContext& lag);

} // namespace ccas
