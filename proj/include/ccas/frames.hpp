#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

namespace ccas {

/// Normalize an angle to (-pi, pi].
double wrap_angle(double a);

/// Ship state in the inertial frame {n}: position and course over ground.
struct InertialPose {
  double x_n = 0.0;   // [m]
  double y_n = 0.0;   // [m]
  double chi_n = 0.0; // [rad], (-pi, pi]
};

/// Active guideline segment: previous waypoint position and guideline direction.
struct WaypointSegment {
  double x_wp = 0.0;   // [m]
  double y_wp = 0.0;   // [m]
  double chi_wp = 0.0; // [rad], (-pi, pi]
};

/// Ship state in a path frame: along-guideline x, cross-track y (positive to
/// starboard of the guideline direction), and course relative to the guideline.
struct PathPose {
  double x = 0.0;   // [m]
  double y = 0.0;   // [m]
  double chi = 0.0; // [rad]
};

/// Trajectories of all ships in one path frame over a horizon.
/// Flattened layout is ship-major, time-minor, (x, y, chi) innermost:
/// component c of ship j at step k sits at 3*(j*(N+1) + k) + c.
struct TrajectoryStack {
  int num_ships = 0;   // M
  int horizon = 0;     // N; N+1 poses per ship
  Eigen::VectorXd data; // size 3*M*(N+1)

  TrajectoryStack() = default;
  TrajectoryStack(int M, int N)
      : num_ships(M), horizon(N), data(Eigen::VectorXd::Zero(3 * M * (N + 1))) {}

  int flat_index(int ship, int step) const { return 3 * (ship * (horizon + 1) + step); }

  PathPose pose(int ship, int step) const {
    const int b = flat_index(ship, step);
    return PathPose{data[b], data[b + 1], data[b + 2]};
  }
  void set_pose(int ship, int step, const PathPose& p) {
    const int b = flat_index(ship, step);
    data[b] = p.x;
    data[b + 1] = p.y;
    data[b + 2] = p.chi;
  }
};

/// p = R(chi_wp) * (eta - eta_wp); course measured relative to the guideline.
PathPose to_path_frame(const InertialPose& eta, const WaypointSegment& seg);

/// Exact inverse of to_path_frame up to angle normalization.
InertialPose to_inertial(const PathPose& p, const WaypointSegment& seg);

/// Apply the block-diagonal inverse rotation to every pose and add the
/// replicated waypoint offset: returns the stack expressed in the inertial
/// frame as a flat vector of length 3*M*(N+1). Courses are not renormalized
/// so that the map stays linear in the stack entries.
Eigen::VectorXd stack_to_global(const TrajectoryStack& pstack, const WaypointSegment& seg);

/// Inverse of stack_to_global: rebuild a path-frame stack from a flat
/// inertial-frame vector.
TrajectoryStack stack_from_global(const Eigen::VectorXd& global, const WaypointSegment& seg,
                                  int num_ships, int horizon);

} // namespace ccas
