#include "ccas/frames.hpp"

#include <cmath>

namespace ccas {

double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * M_PI);
  if (r <= -M_PI) r += 2.0 * M_PI;
  return r;
}

PathPose to_path_frame(const InertialPose& eta, const WaypointSegment& seg) {
  const double c = std::cos(seg.chi_wp);
  const double s = std::sin(seg.chi_wp);
  const double dx = eta.x_n - seg.x_wp;
  const double dy = eta.y_n - seg.y_wp;
  PathPose p;
  p.x = c * dx + s * dy;
  p.y = -s * dx + c * dy;
  p.chi = wrap_angle(eta.chi_n - seg.chi_wp);
  return p;
}

InertialPose to_inertial(const PathPose& p, const WaypointSegment& seg) {
  const double c = std::cos(seg.chi_wp);
  const double s = std::sin(seg.chi_wp);
  InertialPose eta;
  eta.x_n = c * p.x - s * p.y + seg.x_wp;
  eta.y_n = s * p.x + c * p.y + seg.y_wp;
  eta.chi_n = wrap_angle(p.chi + seg.chi_wp);
  return eta;
}

Eigen::VectorXd stack_to_global(const TrajectoryStack& pstack, const WaypointSegment& seg) {
  const int n_poses = pstack.num_ships * (pstack.horizon + 1);
  if (pstack.data.size() != 3 * n_poses)
    throw std::invalid_argument("stack_to_global: stack size does not match M*(N+1)");
  const double c = std::cos(seg.chi_wp);
  const double s = std::sin(seg.chi_wp);
  Eigen::VectorXd out(pstack.data.size());
  for (int m = 0; m < n_poses; ++m) {
    const int b = 3 * m;
    const double px = pstack.data[b];
    const double py = pstack.data[b + 1];
    out[b] = c * px - s * py + seg.x_wp;
    out[b + 1] = s * px + c * py + seg.y_wp;
    out[b + 2] = pstack.data[b + 2] + seg.chi_wp;
  }
  return out;
}

TrajectoryStack stack_from_global(const Eigen::VectorXd& global, const WaypointSegment& seg,
                                  int num_ships, int horizon) {
  const int n_poses = num_ships * (horizon + 1);
  if (global.size() != 3 * n_poses)
    throw std::invalid_argument("stack_from_global: vector size does not match M*(N+1)");
  const double c = std::cos(seg.chi_wp);
  const double s = std::sin(seg.chi_wp);
  TrajectoryStack st(num_ships, horizon);
  for (int m = 0; m < n_poses; ++m) {
    const int b = 3 * m;
    const double dx = global[b] - seg.x_wp;
    const double dy = global[b + 1] - seg.y_wp;
    st.data[b] = c * dx + s * dy;
    st.data[b + 1] = -s * dx + c * dy;
    st.data[b + 2] = global[b + 2] - seg.chi_wp;
  }
  return st;
}

} // namespace ccas
