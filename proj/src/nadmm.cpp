#include "ccas/nadmm.hpp"

#include <cmath>

namespace ccas {

Eigen::VectorXd global_average(const std::map<int, Announcement>& cache, int num_agents) {
  if (static_cast<int>(cache.size()) != num_agents)
    throw ProtocolError("global_average: expected " + std::to_string(num_agents) +
                        " announcements, have " + std::to_string(cache.size()));
  Eigen::VectorXd sum;
  for (const auto& [id, ann] : cache) {
    if (ann.value.size() == 0) throw ProtocolError("global_average: empty announcement");
    if (sum.size() == 0) sum = Eigen::VectorXd::Zero(ann.value.size());
    if (ann.value.size() != sum.size())
      throw ProtocolError("global_average: announcement dimension mismatch");
    sum += ann.value;
  }
  return sum / static_cast<double>(num_agents);
}

Eigen::VectorXd half_multiplier_update(const Eigen::VectorXd& z, const Eigen::VectorXd& residual,
                                       double beta, double lambda) {
  return z - beta * (1.0 - lambda) * residual;
}

Eigen::VectorXd full_multiplier_update(const Eigen::VectorXd& z_half,
                                       const Eigen::VectorXd& residual, double beta) {
  return z_half + beta * residual;
}

Eigen::VectorXd make_announcement(const Eigen::VectorXd& mapped, const Eigen::VectorXd& z,
                                  double beta, bool with_multiplier) {
  if (!with_multiplier) return mapped;
  return mapped + z / beta;
}

double residual_norm(const Eigen::VectorXd& mapped, const Eigen::VectorXd& xi) {
  return (mapped - xi).norm();
}

Announcement agent_step(const ConsensusProblem& prob, AgentState& state,
                        const Eigen::VectorXd& xi, int iteration, const SplittingConfig& cfg,
                        StepDiag* diag) {
  const Eigen::VectorXd r_cur = prob.map_to_consensus(state.w) - xi;
  const Eigen::VectorXd z_half = half_multiplier_update(state.z, r_cur, cfg.beta, cfg.lambda);

  // (13c): the argmin of L_i equals the prox-style argmin against the
  // completed-square target xi - z_half / beta.
  const Eigen::VectorXd target = xi - z_half / cfg.beta;
  const solver::Result sol = prob.prox_argmin(target, cfg.beta, state.w);
  state.w = sol.x;

  const Eigen::VectorXd mapped = prob.map_to_consensus(state.w);
  const Eigen::VectorXd r_new = mapped - xi;
  state.z = full_multiplier_update(z_half, r_new, cfg.beta);
  state.xi_local = xi;

  Announcement ann;
  ann.iteration = iteration;
  ann.value = make_announcement(mapped, state.z, cfg.beta, cfg.announce_with_multiplier);

  if (diag) {
    diag->iteration = iteration;
    diag->residual = r_new.norm();
    diag->f_value = prob.f_value(state.w);
    diag->lagrangian =
        diag->f_value + state.z.dot(r_new) + 0.5 * cfg.beta * r_new.squaredNorm();
    diag->solver_iterations = sol.iterations;
    diag->stationarity = sol.stationarity;
    diag->cap_reached = sol.cap_reached;
    diag->curvature_estimate = sol.curvature_estimate;
  }
  return ann;
}

std::vector<Announcement> sync_round(const std::vector<const ConsensusProblem*>& problems,
                                     std::vector<AgentState>& states, int iteration,
                                     const SplittingConfig& cfg, std::vector<StepDiag>* diags) {
  const int M = static_cast<int>(problems.size());
  if (static_cast<int>(states.size()) != M)
    throw std::invalid_argument("sync_round: problem/state count mismatch");

  // Barrier semantics: every agent computes the identical global average.
  const Eigen::VectorXd xi = global_average(states.front().xi_cache, M);
  for (const AgentState& st : states) {
    const Eigen::VectorXd xi_check = global_average(st.xi_cache, M);
    if ((xi_check - xi).lpNorm<Eigen::Infinity>() != 0.0)
      throw ProtocolError("sync_round: caches diverge across agents");
  }

  std::vector<Announcement> out(M);
  if (diags) diags->assign(M, StepDiag{});
  for (int i = 0; i < M; ++i) {
    StepDiag* d = diags ? &(*diags)[i] : nullptr;
    out[i] = agent_step(*problems[i], states[i], xi, iteration, cfg, d);
    if (d) d->agent = i;
  }
  return out;
}

Announcement async_step(const ConsensusProblem& prob, AgentState& state, int num_agents,
                        int iteration, const SplittingConfig& cfg, StepDiag* diag) {
  const Eigen::VectorXd xi = global_average(state.xi_cache, num_agents);
  return agent_step(prob, state, xi, iteration, cfg, diag);
}

void drs_step(const ConsensusProblem& prob, DrsState& st, const Eigen::VectorXd& tau,
              const SplittingConfig& cfg) {
  st.sigma += cfg.lambda * (tau - st.u);
  const solver::Result sol = prob.prox_argmin(st.sigma, cfg.beta, st.w);
  st.w = sol.x;
  st.u = prob.map_to_consensus(st.w);
}

Eigen::VectorXd drs_tau(const std::vector<DrsState>& states) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(states.front().u.size());
  for (const DrsState& st : states) sum += 2.0 * st.u - st.sigma;
  return sum / static_cast<double>(states.size());
}

EnvelopePair dre_check(const std::vector<const ConsensusProblem*>& problems,
                       const std::vector<AgentState>& admm, const Eigen::VectorXd& xi,
                       const std::vector<DrsState>& drs, const Eigen::VectorXd& tau, double beta) {
  const int M = static_cast<int>(problems.size());
  const double gamma = 1.0 / beta;
  EnvelopePair env;
  for (int i = 0; i < M; ++i) {
    // Augmented-Lagrangian side, from (w_i, z_i, xi).
    const Eigen::VectorXd r = problems[i]->map_to_consensus(admm[i].w) - xi;
    env.L_beta += problems[i]->f_value(admm[i].w) + admm[i].z.dot(r) + 0.5 * beta * r.squaredNorm();

    // Envelope side, from (sigma_i, u_i, tau); prox optimality gives
    // grad phi_i(u_i) = (sigma_i - u_i) / gamma.
    const Eigen::VectorXd grad_phi = (drs[i].sigma - drs[i].u) / gamma;
    const Eigen::VectorXd dev = tau - drs[i].u;
    env.V_gamma += problems[i]->f_value(drs[i].w) + grad_phi.dot(dev) +
                   dev.squaredNorm() / (2.0 * gamma);
  }
  env.L_beta /= M;
  env.V_gamma /= M;
  return env;
}

} // namespace ccas
