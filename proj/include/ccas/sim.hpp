#pragma once

#include "ccas/cost.hpp"
#include "ccas/nadmm.hpp"
#include "ccas/network.hpp"
#include "ccas/risk.hpp"
#include "ccas/rules.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ccas {

struct Waypoint {
  double x = 0.0;
  double y = 0.0;
};

struct ShipSpec {
  std::string name;
  InertialPose initial;
  std::vector<Waypoint> waypoints; // at least two
  OwnShipParams params;
  double T_course = 40.0; // course time constant other ships use to predict this one
  SafetyDomain domain;
  double length = 51.5; // [m]
  double beam = 8.6;    // [m]
};

/// Risk-field configuration; the per-ship shape defaults to (4 L)^2, (4 B)^2
/// unless overridden.
struct RiskConfig {
  double K_ca = 10.0;
  double K_d = 0.05;
  std::optional<double> alpha_x;
  std::optional<double> alpha_y;
};

struct Scenario {
  std::string name = "custom";
  std::string profile = "sim"; // parameter profile the scenario was built from
  std::vector<ShipSpec> ships;
  CostWeights weights; // alpha is filled per negotiation epoch
  RiskConfig risk;
  RuleParams rules;
  SplittingConfig splitting;
  NetConfig net;
  ControlBounds bounds;
  double duration = 800.0;       // [s]
  double ccas_period = 20.0;     // [s] negotiation interval
  double detection_range = 1500.0; // [m]
  int horizon = 20;              // N
  std::uint64_t seed = 1;
};

struct TickRecord {
  double t = 0.0;
  int ship = 0;
  InertialPose pose;
  double u_y = 0.0;
  double u_s = 1.0;
  double epsilon = 0.0;
};

struct NegotiationRecord {
  int epoch = 0;
  int s = 0;
  int ship = 0;
  double residual = 0.0;
  int solver_iters = 0;
  double l_beta = 0.0;
  double stationarity = 0.0;
};

struct FaultRecord {
  double t = 0.0;
  std::string kind;
  std::string detail;
};

struct RunLog {
  std::vector<TickRecord> ticks;
  std::vector<NegotiationRecord> negotiations;
  std::vector<FaultRecord> faults;
  Eigen::MatrixXd min_pair_distance; // symmetric; +inf on the diagonal
  std::vector<double> min_epsilon;   // per ship over the run
  std::vector<double> epoch_wall_seconds;
  bool aborted = false;
};

struct ClassificationResult {
  Eigen::MatrixXd alpha; // alpha(i, j): weight ego i puts on proposals for ship j
  std::vector<std::vector<Encounter>> encounters;
};

/// Classify every ordered in-range pair and freeze the priority weights for
/// the negotiation epoch; out-of-range pairs stay at the neutral weight.
ClassificationResult classify_all(const std::vector<InertialPose>& poses,
                                  const std::vector<WaypointSegment>& segments,
                                  const std::vector<double>& speeds, const RuleParams& rules,
                                  double detection_range);

/// Discrete-event scenario runner. Deterministic for a fixed scenario + seed.
RunLog run(const Scenario& scenario);

/// Names of the built-in scenario families.
std::vector<std::string> scenario_names();

/// Build a library scenario with the given parameter profile (sim or field).
Scenario make_scenario(const std::string& name, const std::string& profile = "sim");

} // namespace ccas
