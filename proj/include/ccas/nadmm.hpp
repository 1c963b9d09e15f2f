#pragma once

#include "ccas/solver.hpp"

#include <Eigen/Core>

#include <map>
#include <vector>

namespace ccas {

/// Raised when the negotiation protocol is violated (missing announcements,
/// barrier deadlock).
struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Tuning of the splitting iteration.
struct SplittingConfig {
  double beta = 3e-4;   // penalty > 0
  double lambda = 1.0;  // relaxation in (0,2)
  int s_max = 2;        // iteration budget per negotiation
  solver::Options solver;
  // Eq.-(13e) announcements carry the scaled multiplier; switching this off
  // reproduces the bare-trajectory variant of the algorithm listing.
  bool announce_with_multiplier = true;
};

/// A consensus announcement tagged with the iteration that produced it.
struct Announcement {
  int iteration = -1;
  Eigen::VectorXd value;
};

/// One agent's side of the consensus problem
///   min (1/M) sum_i f_i(w_i)  s.t.  A_i w_i - xi - c_i = 0.
class ConsensusProblem {
 public:
  virtual ~ConsensusProblem() = default;
  virtual int decision_dim() const = 0;
  virtual int consensus_dim() const = 0;

  /// A_i w - c_i.
  virtual Eigen::VectorXd map_to_consensus(const Eigen::VectorXd& w) const = 0;

  virtual double f_value(const Eigen::VectorXd& w) const = 0;

  /// argmin_w f(w) + (beta/2) || A w - c - target ||^2, warm-started at w0.
  virtual solver::Result prox_argmin(const Eigen::VectorXd& target, double beta,
                                     const Eigen::VectorXd& w0) const = 0;
};

/// Local ADMM state of one agent.
struct AgentState {
  Eigen::VectorXd w;         // decision vector
  Eigen::VectorXd z;         // multipliers (consensus dim)
  Eigen::VectorXd xi_local;  // this agent's copy of the global variable
  std::map<int, Announcement> xi_cache; // agent id -> last received announcement
};

/// Per-step diagnostics emitted by the splitting core.
struct StepDiag {
  int agent = -1;
  int iteration = -1;
  double residual = 0.0;       // ||A w - xi - c|| after the local solve
  double f_value = 0.0;
  double lagrangian = 0.0;     // f + <z, r> + (beta/2)||r||^2 at the new iterate
  int solver_iterations = 0;
  double stationarity = 0.0;
  bool cap_reached = false;
  double curvature_estimate = 0.0;
};

/// Componentwise mean of the cached announcements; requires one entry per
/// agent (stale entries allowed).
Eigen::VectorXd global_average(const std::map<int, Announcement>& cache, int num_agents);

/// Eq.-(13b) half update: z - beta (1 - lambda) r.
Eigen::VectorXd half_multiplier_update(const Eigen::VectorXd& z, const Eigen::VectorXd& residual,
                                       double beta, double lambda);

/// Eq.-(13d) full update: z_half + beta r.
Eigen::VectorXd full_multiplier_update(const Eigen::VectorXd& z_half,
                                       const Eigen::VectorXd& residual, double beta);

/// Eq.-(13e) announcement: (A w - c) + z / beta.
Eigen::VectorXd make_announcement(const Eigen::VectorXd& mapped, const Eigen::VectorXd& z,
                                  double beta, bool with_multiplier);

/// ||A w - xi - c||.
double residual_norm(const Eigen::VectorXd& mapped, const Eigen::VectorXd& xi);

/// One NADMM iteration (13b)-(13e) for a single agent against the consensus
/// vector xi. Updates the state in place and returns the new announcement.
/// The same routine serves the synchronous round, the asynchronous step, and
/// the coordinator-form harness; only the provenance of xi differs.
Announcement agent_step(const ConsensusProblem& prob, AgentState& state,
                        const Eigen::VectorXd& xi, int iteration, const SplittingConfig& cfg,
                        StepDiag* diag = nullptr);

/// Lockstep round over all agents: averages the iteration-(s) announcements
/// held in each agent's cache (they must be complete and identical across
/// agents in sync mode) and runs agent_step for everyone against the same xi.
/// Returns the new announcements; the caller distributes them.
std::vector<Announcement> sync_round(const std::vector<const ConsensusProblem*>& problems,
                                     std::vector<AgentState>& states, int iteration,
                                     const SplittingConfig& cfg,
                                     std::vector<StepDiag>* diags = nullptr);

/// One asynchronous step (Eq. 22 / Algorithm 3): reconstruct xi from the
/// agent's own (possibly stale) cache, then run agent_step. Never blocks.
Announcement async_step(const ConsensusProblem& prob, AgentState& state, int num_agents,
                        int iteration, const SplittingConfig& cfg, StepDiag* diag = nullptr);

/// Douglas-Rachford mirror of one agent (Theorem 2 change of variables).
struct DrsState {
  Eigen::VectorXd sigma; // varsigma_i
  Eigen::VectorXd u;     // A_i w_i - c_i
  Eigen::VectorXd w;     // argmin backing the latest prox evaluation
};

/// One asyncFedDR iteration for a single agent:
///   sigma += lambda (tau - u);  u = prox_{gamma phi_i}(sigma)
/// with gamma = 1/beta and phi_i the image function of f_i under A_i.
void drs_step(const ConsensusProblem& prob, DrsState& st, const Eigen::VectorXd& tau,
              const SplittingConfig& cfg);

/// tau update with g = 0: mean over agents of (2 u_i - sigma_i).
Eigen::VectorXd drs_tau(const std::vector<DrsState>& states);

/// Douglas-Rachford envelope and augmented Lagrangian evaluated from the two
/// sides of the Theorem 2 correspondence; equal at every paired iterate.
struct EnvelopePair {
  double V_gamma = 0.0;
  double L_beta = 0.0;
};
EnvelopePair dre_check(const std::vector<const ConsensusProblem*>& problems,
                       const std::vector<AgentState>& admm, const Eigen::VectorXd& xi,
                       const std::vector<DrsState>& drs, const Eigen::VectorXd& tau, double beta);

} // namespace ccas
