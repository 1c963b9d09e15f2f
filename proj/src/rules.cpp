#include "ccas/rules.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ccas {

namespace {

struct PairGeometry {
  double dist;
  double bearing_own;    // bearing of target from own, relative to own course
  double bearing_target; // bearing of own from target, relative to target course
  double dcourse;        // wrap(chi_t - chi_o)
  double closing;        // range rate negated; > 0 when converging
  bool own_starboard;    // own follows the starboard side of its fairway
  bool target_starboard;
};

PairGeometry pair_geometry(const ShipTrack& own, const ShipTrack& target, double y_lane) {
  const InertialPose po = to_inertial(own.pose, own.segment);
  const InertialPose pt = to_inertial(target.pose, target.segment);
  const double dx = pt.x_n - po.x_n;
  const double dy = pt.y_n - po.y_n;

  PairGeometry g;
  g.dist = std::hypot(dx, dy);
  g.bearing_own = wrap_angle(std::atan2(dy, dx) - po.chi_n);
  g.bearing_target = wrap_angle(std::atan2(-dy, -dx) - pt.chi_n);
  g.dcourse = wrap_angle(pt.chi_n - po.chi_n);

  const double rvx = target.speed * std::cos(pt.chi_n) - own.speed * std::cos(po.chi_n);
  const double rvy = target.speed * std::sin(pt.chi_n) - own.speed * std::sin(po.chi_n);
  g.closing = g.dist > 0.0 ? -(dx * rvx + dy * rvy) / g.dist : 0.0;

  g.own_starboard = own.pose.y > y_lane;
  g.target_starboard = target.pose.y > y_lane;
  return g;
}

/// True when the two course rays meet at a point both ships reach within the
/// lookahead window.
bool paths_cross(const ShipTrack& own, const ShipTrack& target, double horizon_s) {
  const InertialPose po = to_inertial(own.pose, own.segment);
  const InertialPose pt = to_inertial(target.pose, target.segment);
  const double eox = std::cos(po.chi_n), eoy = std::sin(po.chi_n);
  const double etx = std::cos(pt.chi_n), ety = std::sin(pt.chi_n);
  const double det = eox * ety - eoy * etx;
  if (std::abs(det) < 1e-9) return false; // parallel courses
  const double dx = pt.x_n - po.x_n;
  const double dy = pt.y_n - po.y_n;
  const double s_own = (dx * ety - dy * etx) / det;    // distance own sails to the crossing
  const double s_target = (dx * eoy - dy * eox) / det; // distance target sails to the crossing
  if (s_own <= 0.0 || s_target <= 0.0) return false;
  const double t_own = own.speed > 0.0 ? s_own / own.speed : std::numeric_limits<double>::infinity();
  const double t_target =
      target.speed > 0.0 ? s_target / target.speed : std::numeric_limits<double>::infinity();
  return t_own <= horizon_s && t_target <= horizon_s;
}

Role fairway_priority(const PairGeometry& g) {
  if (g.target_starboard && !g.own_starboard) return Role::GiveWay;
  if (g.own_starboard && !g.target_starboard) return Role::StandOn;
  return Role::Negotiate;
}

} // namespace

Encounter classify(const ShipTrack& own, const ShipTrack& target, const RuleParams& rp) {
  const PairGeometry g = pair_geometry(own, target, rp.y_lane);

  const bool opposite = std::abs(g.dcourse) >= M_PI - rp.headon_course_tol;
  if (opposite && std::abs(g.bearing_own) <= rp.headon_bearing && g.closing > 0.0) {
    return Encounter{EncounterKind::HeadOn, fairway_priority(g)};
  }

  if (std::abs(g.bearing_target) >= rp.overtake_sector && g.closing > 0.0 &&
      own.speed > target.speed) {
    return Encounter{EncounterKind::Overtaking, Role::GiveWay};
  }
  if (std::abs(g.bearing_own) >= rp.overtake_sector && g.closing > 0.0 &&
      target.speed > own.speed) {
    return Encounter{EncounterKind::Overtaking, Role::StandOn};
  }

  if (paths_cross(own, target, rp.time_horizon)) {
    Role role = fairway_priority(g);
    if (role == Role::Negotiate && !g.own_starboard && !g.target_starboard) {
      // Neither follows the starboard side: the ship with the other to its
      // starboard gives way, provided the reciprocal bearing agrees. Both on
      // the starboard side stays a negotiation.
      if (g.bearing_own > 0.0 && g.bearing_target < 0.0) role = Role::GiveWay;
      else if (g.bearing_own < 0.0 && g.bearing_target > 0.0) role = Role::StandOn;
    }
    return Encounter{EncounterKind::Crossing, role};
  }

  return Encounter{EncounterKind::None, Role::Negotiate};
}

double priority_weight(const Encounter& e, double K_SO, double K_GW) {
  if (!(K_SO > 0.0 && K_SO < 1.0))
    throw std::invalid_argument("priority_weight: K_SO must lie in (0,1)");
  if (!(K_GW > 1.0)) throw std::invalid_argument("priority_weight: K_GW must exceed 1");
  switch (e.ego_role) {
    case Role::StandOn: return K_SO;
    case Role::GiveWay: return K_GW;
    case Role::Negotiate: return 1.0;
  }
  return 1.0;
}

} // namespace ccas
