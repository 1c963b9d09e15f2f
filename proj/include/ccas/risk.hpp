#pragma once

#include "ccas/frames.hpp"

#include <vector>

namespace ccas {

/// Parameters of the Gaussian collision-risk field for one target ship.
struct RiskParams {
  double K_ca = 10.0;      // risk amplitude
  double K_d = 0.05;       // horizon discount, >= 0
  double alpha_x = 42436.0; // longitudinal shape [m^2]  (default (4*51.5)^2)
  double alpha_y = 1183.36; // lateral shape [m^2]       (default (4*8.6)^2)
};

/// Rectangular safety domain (half-length, half-width).
struct SafetyDomain {
  double d_x = 51.5; // [m]
  double d_y = 8.6;  // [m]
};

/// Risk of the pair (p_i, p_j) at k steps ahead:
/// K_ca / sqrt(1 + K_d k) * exp(-dx^2/alpha_x) * exp(-dy^2/alpha_y).
double pair_risk(const PathPose& p_i, const PathPose& p_j, int k, const RiskParams& rp);

/// Sum of pair_risk between the ego ship and every neighbor over all stack
/// slots; slot index doubles as the discount index (slot 0 at unit discount).
/// rp_per_ship[j] shapes the field around target ship j.
double cumulative_risk(const TrajectoryStack& stack, int ego,
                       const std::vector<RiskParams>& rp_per_ship);

/// Signed rectangle clearance: min over neighbors of
/// max(|dx| - d_x, |dy| - d_y), evaluated in the ego path frame.
/// Non-positive iff some neighbor lies inside the closed rectangle.
/// Returns +infinity when there is no neighbor.
double safety_index(const std::vector<PathPose>& poses, int ego, const SafetyDomain& dom);

} // namespace ccas
