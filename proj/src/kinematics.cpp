#include "ccas/kinematics.hpp"

#include <cmath>

namespace ccas {

ControlPlan::ControlPlan(int ego_idx, int num_ships, int N) : ego(ego_idx) {
  own.setZero(2, N);
  own.row(1).setOnes(); // u_s = 1
  proposals.resize(num_ships);
  for (int j = 0; j < num_ships; ++j) {
    if (j == ego_idx) continue;
    proposals[j].setZero(2, N);
    proposals[j].row(1).setOnes(); // proposed u_s = 1
  }
}

Eigen::VectorXd ControlPlan::flatten() const {
  const int M = num_ships();
  const int N = horizon();
  Eigen::VectorXd x(2 * M * N);
  for (int j = 0; j < M; ++j) {
    const Eigen::Matrix2Xd& blk = (j == ego) ? own : proposals[j];
    for (int k = 0; k < N; ++k) {
      x[j * 2 * N + 2 * k] = blk(0, k);
      x[j * 2 * N + 2 * k + 1] = blk(1, k);
    }
  }
  return x;
}

ControlPlan ControlPlan::unflatten(const Eigen::VectorXd& x, int ego, int num_ships, int N) {
  if (x.size() != 2 * num_ships * N)
    throw std::invalid_argument("ControlPlan::unflatten: size mismatch");
  ControlPlan plan(ego, num_ships, N);
  for (int j = 0; j < num_ships; ++j) {
    Eigen::Matrix2Xd& blk = (j == ego) ? plan.own : plan.proposals[j];
    for (int k = 0; k < N; ++k) {
      blk(0, k) = x[j * 2 * N + 2 * k];
      blk(1, k) = x[j * 2 * N + 2 * k + 1];
    }
  }
  return plan;
}

PathPose step_own(const PathPose& p, const OwnControl& u, const OwnShipParams& params) {
  PathPose q;
  q.x = p.x + u.u_s * params.U_d * std::cos(p.chi) * params.dT;
  q.y = p.y + u.u_s * params.U_d * std::sin(p.chi) * params.dT;
  q.chi = p.chi + (params.dT / params.T_1) *
                      (params.chi_max * std::tanh(params.K_e * (u.u_y - p.y)) - p.chi);
  return q;
}

PathPose step_neighbor(const PathPose& p, const NeighborControl& u, const NeighborParams& params,
                       double dT) {
  PathPose q;
  q.x = p.x + u.u_s * params.U_j * std::cos(p.chi) * dT;
  q.y = p.y + u.u_s * params.U_j * std::sin(p.chi) * dT;
  q.chi = p.chi + (dT / params.T_j) * (u.chi_d + params.chi_nom - p.chi);
  return q;
}

TrajectoryStack rollout(const std::vector<PathPose>& initial, const ControlPlan& plan, int N,
                        const OwnShipParams& own_params,
                        const std::vector<NeighborParams>& neighbor_params) {
  const int M = static_cast<int>(initial.size());
  if (plan.num_ships() != M || static_cast<int>(neighbor_params.size()) != M)
    throw std::invalid_argument("rollout: ship-count mismatch");
  if (plan.horizon() != N)
    throw std::invalid_argument("rollout: plan horizon does not match N");

  TrajectoryStack stack(M, N);
  for (int j = 0; j < M; ++j) {
    PathPose p = initial[j];
    stack.set_pose(j, 0, p);
    for (int k = 0; k < N; ++k) {
      if (j == plan.ego) {
        p = step_own(p, OwnControl{plan.own(0, k), plan.own(1, k)}, own_params);
      } else {
        p = step_neighbor(p, NeighborControl{plan.proposals[j](1, k), plan.proposals[j](0, k)},
                          neighbor_params[j], own_params.dT);
      }
      stack.set_pose(j, k + 1, p);
    }
  }
  return stack;
}

} // namespace ccas
