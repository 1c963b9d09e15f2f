#include "ccas/risk.hpp"

#include <cmath>
#include <limits>

namespace ccas {

double pair_risk(const PathPose& p_i, const PathPose& p_j, int k, const RiskParams& rp) {
  const double dx = p_i.x - p_j.x;
  const double dy = p_i.y - p_j.y;
  return rp.K_ca / std::sqrt(1.0 + rp.K_d * k) * std::exp(-dx * dx / rp.alpha_x) *
         std::exp(-dy * dy / rp.alpha_y);
}

double cumulative_risk(const TrajectoryStack& stack, int ego,
                       const std::vector<RiskParams>& rp_per_ship) {
  const int M = stack.num_ships;
  if (static_cast<int>(rp_per_ship.size()) != M)
    throw std::invalid_argument("cumulative_risk: risk-params size mismatch");
  double total = 0.0;
  for (int k = 0; k <= stack.horizon; ++k) {
    const PathPose pe = stack.pose(ego, k);
    for (int j = 0; j < M; ++j) {
      if (j == ego) continue;
      total += pair_risk(pe, stack.pose(j, k), k, rp_per_ship[j]);
    }
  }
  return total;
}

double safety_index(const std::vector<PathPose>& poses, int ego, const SafetyDomain& dom) {
  const int M = static_cast<int>(poses.size());
  double eps = std::numeric_limits<double>::infinity();
  for (int j = 0; j < M; ++j) {
    if (j == ego) continue;
    const double dx = std::abs(poses[ego].x - poses[j].x) - dom.d_x;
    const double dy = std::abs(poses[ego].y - poses[j].y) - dom.d_y;
    eps = std::min(eps, std::max(dx, dy));
  }
  return eps;
}

} // namespace ccas
