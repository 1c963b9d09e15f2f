#pragma once

#include "ccas/frames.hpp"

namespace ccas {

enum class EncounterKind { HeadOn, Crossing, Overtaking, None };
enum class Role { GiveWay, StandOn, Negotiate };

/// Classified traffic situation for an ordered ship pair, seen from the ego side.
struct Encounter {
  EncounterKind kind = EncounterKind::None;
  Role ego_role = Role::Negotiate;
};

/// Classification thresholds and priority constants.
struct RuleParams {
  double K_SO = 0.1;  // stand-on weight, in (0,1)
  double K_GW = 50.0; // give-way weight, > 1
  double y_lane = 0.0; // follows the starboard side iff own cross-track y > y_lane

  double headon_course_tol = 15.0 * M_PI / 180.0;  // opposite courses within 180deg +- tol
  double headon_bearing = 22.5 * M_PI / 180.0;     // target within +- of own bow
  double overtake_sector = 112.5 * M_PI / 180.0;   // overtaker seen abaft this bearing
  double time_horizon = 400.0;                     // [s] crossing lookahead window
};

/// One ship as seen by the classifier: pose in its own path frame, the active
/// segment, and speed over ground.
struct ShipTrack {
  PathPose pose;          // in the ship's own path frame
  WaypointSegment segment;
  double speed = 0.0;     // [m/s]
};

/// Deterministic pairwise classification per the inland-waterway rules.
/// Head-on wins over crossing when both guards fire. Geometries where the
/// port/starboard crossing rule is ambiguous (both ships bear to the same
/// side of each other) classify as Negotiate.
Encounter classify(const ShipTrack& own, const ShipTrack& target, const RuleParams& rp);

/// Map the ego role to its proposal-cost weight alpha_{j,i}.
double priority_weight(const Encounter& e, double K_SO, double K_GW);

} // namespace ccas
