#pragma once

#include "ccas/frames.hpp"

#include <Eigen/Core>

#include <vector>

namespace ccas {

/// Own-ship model parameters (discrete-time Euler model).
struct OwnShipParams {
  double U_d = 3.0;             // nominal surge speed [m/s]
  double chi_max = M_PI / 6.0;  // max course change per step [rad]
  double K_e = 0.05;            // guidance gain [1/m]
  double T_1 = 40.0;            // course time constant [s]
  double dT = 20.0;             // sampling period [s]
};

/// Neighbor-ship model parameters as known to the ego ship.
struct NeighborParams {
  double U_j = 3.0;      // nominal surge speed [m/s]
  double T_j = 40.0;     // course time constant [s]
  double chi_nom = 0.0;  // active reference course in the ego path frame [rad]
};

/// Own-ship input: cross-track offset command and speed scale.
struct OwnControl {
  double u_y = 0.0; // [m]
  double u_s = 1.0; // dimensionless
};

/// Proposed neighbor input: speed scale and course adjustment.
struct NeighborControl {
  double u_s = 1.0;   // dimensionless
  double chi_d = 0.0; // [rad], >= 0 (no port-side proposals)
};

/// Box bounds on controls. Proposal bounds keep the optimizer from
/// requesting full stops or port-side turns from neighbors.
struct ControlBounds {
  double y_max = 60.0;              // |u_y| <= y_max [m]
  double u_s_min = 0.4;             // own speed-scale floor
  double u_s_min_prop = 0.6;        // proposed speed-scale floor
  double chi_prop_max = M_PI / 6.0; // proposed course adjustment cap [rad]
};

/// Horizon-length input sequence for one ego ship: own controls plus
/// proposed controls for every neighbor. proposals[ego] stays empty.
struct ControlPlan {
  int ego = 0;
  Eigen::Matrix2Xd own;                    // row 0: u_y, row 1: u_s; N columns
  std::vector<Eigen::Matrix2Xd> proposals; // per ship; row 0: chi_d, row 1: u_s

  ControlPlan() = default;
  ControlPlan(int ego_idx, int num_ships, int N);

  int num_ships() const { return static_cast<int>(proposals.size()); }
  int horizon() const { return static_cast<int>(own.cols()); }

  /// Flat layout: ship-major, time-minor, 2 components per step.
  /// Own ship contributes (u_y, u_s); each neighbor (chi_d, u_s).
  Eigen::VectorXd flatten() const;
  static ControlPlan unflatten(const Eigen::VectorXd& x, int ego, int num_ships, int N);
};

/// One Euler step of the own-ship model.
PathPose step_own(const PathPose& p, const OwnControl& u, const OwnShipParams& params);

/// One Euler step of the neighbor model; the course relaxes toward
/// chi_d + chi_nom with rate dT/T_j.
PathPose step_neighbor(const PathPose& p, const NeighborControl& u, const NeighborParams& params,
                       double dT);

/// Iterate the step models over the horizon. Slot 0 of every ship equals its
/// initial pose; the ego index uses step_own, all others step_neighbor.
TrajectoryStack rollout(const std::vector<PathPose>& initial, const ControlPlan& plan, int N,
                        const OwnShipParams& own_params,
                        const std::vector<NeighborParams>& neighbor_params);

} // namespace ccas
