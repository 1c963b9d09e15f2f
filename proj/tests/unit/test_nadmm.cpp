#include "ccas/nadmm.hpp"

#include "../support/async_harness.hpp"
#include "../support/quadratic_agent.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ccas;
using testing::QuadraticAgent;

namespace {

// Two scalar agents f_i(w) = (w - a_i)^2 / 2 with zero offsets.
struct ScalarPair {
  QuadraticAgent a0{Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Constant(1, 1.0),
                    Eigen::VectorXd::Zero(1)};
  QuadraticAgent a1{Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Constant(1, 3.0),
                    Eigen::VectorXd::Zero(1)};
  std::vector<const ConsensusProblem*> problems{&a0, &a1};
};

std::vector<AgentState> fresh_states(const std::vector<const ConsensusProblem*>& problems,
                                     const SplittingConfig& cfg) {
  std::vector<AgentState> states(problems.size());
  for (size_t i = 0; i < problems.size(); ++i) {
    states[i].w = Eigen::VectorXd::Zero(problems[i]->decision_dim());
    states[i].z = Eigen::VectorXd::Zero(problems[i]->consensus_dim());
  }
  // Seed every cache with the initial announcements.
  std::vector<Announcement> anns(problems.size());
  for (size_t i = 0; i < problems.size(); ++i) {
    anns[i].iteration = 0;
    anns[i].value = make_announcement(problems[i]->map_to_consensus(states[i].w), states[i].z,
                                      cfg.beta, cfg.announce_with_multiplier);
  }
  for (auto& st : states)
    for (size_t j = 0; j < anns.size(); ++j) st.xi_cache[static_cast<int>(j)] = anns[j];
  return states;
}

void distribute(std::vector<AgentState>& states, const std::vector<Announcement>& anns) {
  for (auto& st : states)
    for (size_t j = 0; j < anns.size(); ++j) st.xi_cache[static_cast<int>(j)] = anns[j];
}

} // namespace

TEST_CASE("global_average") {
  SUBCASE("consensus fixed point") {
    std::map<int, Announcement> cache;
    Eigen::VectorXd v(3);
    v << 1, 2, 3;
    for (int i = 0; i < 4; ++i) cache[i] = {0, v};
    CHECK((global_average(cache, 4) - v).norm() == doctest::Approx(0.0));
  }
  SUBCASE("two-point mean") {
    std::map<int, Announcement> cache;
    cache[0] = {0, Eigen::VectorXd::Constant(2, 1.0)};
    cache[1] = {0, Eigen::VectorXd::Constant(2, 5.0)};
    CHECK(global_average(cache, 2)[0] == doctest::Approx(3.0));
  }
  SUBCASE("random vectors match the elementwise oracle") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::map<int, Announcement> cache;
    Eigen::MatrixXd vals(5, 3);
    for (int i = 0; i < 3; ++i) {
      Eigen::VectorXd v(5);
      for (int k = 0; k < 5; ++k) v[k] = u(gen);
      vals.col(i) = v;
      cache[i] = {0, v};
    }
    const Eigen::VectorXd got = global_average(cache, 3);
    for (int k = 0; k < 5; ++k)
      CHECK(got[k] == doctest::Approx((vals(k, 0) + vals(k, 1) + vals(k, 2)) / 3.0));
  }
  SUBCASE("missing announcement is a protocol error") {
    std::map<int, Announcement> cache;
    cache[0] = {0, Eigen::VectorXd::Zero(2)};
    CHECK_THROWS_AS(global_average(cache, 2), ProtocolError);
  }
}

TEST_CASE("multiplier updates") {
  Eigen::VectorXd z(2), r(2);
  z << 1.0, -2.0;
  r << 0.5, 0.25;
  SUBCASE("lambda = 1 leaves the half update unchanged") {
    CHECK((half_multiplier_update(z, r, 0.7, 1.0) - z).norm() == doctest::Approx(0.0));
  }
  SUBCASE("zero residual leaves both unchanged") {
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
    CHECK((half_multiplier_update(z, zero, 0.7, 0.3) - z).norm() == doctest::Approx(0.0));
    CHECK((full_multiplier_update(z, zero, 0.7) - z).norm() == doctest::Approx(0.0));
  }
  SUBCASE("lambda = 0.5 hand evaluation") {
    const Eigen::VectorXd got = half_multiplier_update(z, r, 2.0, 0.5);
    CHECK(got[0] == doctest::Approx(1.0 - 2.0 * 0.5 * 0.5));
    CHECK(got[1] == doctest::Approx(-2.0 - 2.0 * 0.5 * 0.25));
  }
  SUBCASE("full update hand evaluation") {
    const Eigen::VectorXd got = full_multiplier_update(z, r, 2.0);
    CHECK(got[0] == doctest::Approx(1.0 + 2.0 * 0.5));
    CHECK(got[1] == doctest::Approx(-2.0 + 2.0 * 0.25));
  }
  SUBCASE("lambda = 1 composition is a single dual step of stepsize beta") {
    const Eigen::VectorXd z_half = half_multiplier_update(z, r, 2.0, 1.0);
    const Eigen::VectorXd z_full = full_multiplier_update(z_half, r, 2.0);
    CHECK((z_full - (z + 2.0 * r)).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("announcements") {
  Eigen::VectorXd mapped(2), z(2);
  mapped << 4.0, -1.0;
  z << 0.2, 0.4;
  SUBCASE("zero multiplier announces the bare trajectory") {
    CHECK((make_announcement(mapped, Eigen::VectorXd::Zero(2), 0.5, true) - mapped).norm() ==
          doctest::Approx(0.0));
  }
  SUBCASE("large beta approaches the bare trajectory") {
    const Eigen::VectorXd got = make_announcement(mapped, z, 1e12, true);
    CHECK((got - mapped).lpNorm<Eigen::Infinity>() < 1e-11);
  }
  SUBCASE("componentwise oracle") {
    const Eigen::VectorXd got = make_announcement(mapped, z, 0.5, true);
    CHECK(got[0] == doctest::Approx(4.0 + 0.2 / 0.5));
    CHECK(got[1] == doctest::Approx(-1.0 + 0.4 / 0.5));
  }
  SUBCASE("compatibility flag drops the multiplier term") {
    CHECK((make_announcement(mapped, z, 0.5, false) - mapped).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("residual_norm") {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(4);
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(4);
  CHECK(residual_norm(u, xi) == doctest::Approx(0.0));
  u[2] = 1.0;
  CHECK(residual_norm(u, xi) == doctest::Approx(1.0));
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 4; ++i) {
    u[i] = d(gen);
    xi[i] = d(gen);
  }
  CHECK(residual_norm(u, xi) == doctest::Approx((u - xi).norm()));
}

TEST_CASE("sync_round is a no-op at a stationary consensus") {
  ScalarPair fix;
  SplittingConfig cfg;
  cfg.beta = 2.5;
  cfg.lambda = 1.0;

  // Stationary point: w_i* = xi* = mean(a_i), z_i* = a_i - xi*.
  const double xi_star = 2.0;
  std::vector<AgentState> states(2);
  states[0].w = Eigen::VectorXd::Constant(1, xi_star);
  states[1].w = Eigen::VectorXd::Constant(1, xi_star);
  states[0].z = Eigen::VectorXd::Constant(1, 1.0 - xi_star);
  states[1].z = Eigen::VectorXd::Constant(1, 3.0 - xi_star);
  std::vector<Announcement> anns(2);
  for (int i = 0; i < 2; ++i)
    anns[i] = {0, make_announcement(fix.problems[i]->map_to_consensus(states[i].w), states[i].z,
                                    cfg.beta, true)};
  distribute(states, anns);

  const std::vector<Announcement> out = sync_round(fix.problems, states, 1, cfg);
  CHECK(std::abs(states[0].w[0] - xi_star) < 1e-12);
  CHECK(std::abs(states[1].w[0] - xi_star) < 1e-12);
  CHECK(std::abs(states[0].z[0] - (1.0 - xi_star)) < 1e-12);
  CHECK(std::abs(out[0].value[0] - out[1].value[0] - (states[0].z[0] - states[1].z[0]) / cfg.beta) <
        1e-12);
}

TEST_CASE("per-agent rounds match the stacked generic NADMM oracle") {
  // Oracle: Eq.-(7) NADMM on the stacked problem with f = (1/M) sum f_i,
  // which corresponds to per-agent states via z_stacked = z / M and
  // beta_stacked = beta / M.
  ScalarPair fix;
  SplittingConfig cfg;
  cfg.beta = 1.7;
  cfg.lambda = 0.7;

  std::vector<AgentState> states = fresh_states(fix.problems, cfg);

  const int M = 2;
  const double beta_st = cfg.beta / M;
  Eigen::Vector2d w_st(0.0, 0.0);
  Eigen::Vector2d z_st(0.0, 0.0);
  const Eigen::Vector2d a(1.0, 3.0);
  double v_st = (w_st(0) + z_st(0) / beta_st + w_st(1) + z_st(1) / beta_st) / M;

  for (int round = 1; round <= 40; ++round) {
    const std::vector<Announcement> anns = sync_round(fix.problems, states, round, cfg);
    distribute(states, anns);

    // Stacked oracle iteration: z-half, w, z-full, v.
    for (int i = 0; i < M; ++i) {
      const double r = w_st(i) - v_st;
      const double z_half = z_st(i) - beta_st * (1.0 - cfg.lambda) * r;
      // ((1/M) q + beta_st) w = (1/M) q a - z_half + beta_st v, with q = 1.
      const double w_new =
          ((1.0 / M) * a(i) - z_half + beta_st * v_st) / ((1.0 / M) + beta_st);
      const double z_full = z_half + beta_st * (w_new - v_st);
      w_st(i) = w_new;
      z_st(i) = z_full;
    }
    v_st = (w_st(0) + z_st(0) / beta_st + w_st(1) + z_st(1) / beta_st) / M;

    for (int i = 0; i < M; ++i) {
      CHECK(std::abs(states[i].w[0] - w_st(i)) < 1e-12);
      CHECK(std::abs(states[i].z[0] / M - z_st(i)) < 1e-12);
    }
  }
}

TEST_CASE("sync residuals trend to zero on a convex fixture") {
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 4, M = 3;
  std::vector<QuadraticAgent> agents;
  double L = 0.0;
  for (int i = 0; i < M; ++i) {
    Eigen::MatrixXd B(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) B(r, c) = u(gen);
    Eigen::MatrixXd Q = B.transpose() * B + 0.5 * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd a(n), c0(n);
    for (int k = 0; k < n; ++k) {
      a[k] = 3.0 * u(gen);
      c0[k] = u(gen);
    }
    agents.emplace_back(Q, a, c0);
  }
  std::vector<const ConsensusProblem*> problems;
  for (auto& ag : agents) {
    problems.push_back(&ag);
    L = std::max(L, ag.smoothness());
  }

  SplittingConfig cfg;
  cfg.beta = 2.2 * L;
  cfg.lambda = 1.0;
  std::vector<AgentState> states = fresh_states(problems, cfg);

  std::vector<double> residuals;
  for (int round = 1; round <= 300; ++round) {
    std::vector<StepDiag> diags;
    const std::vector<Announcement> anns = sync_round(problems, states, round, cfg, &diags);
    distribute(states, anns);
    double r2 = 0.0;
    for (const StepDiag& d : diags) r2 += d.residual * d.residual;
    residuals.push_back(std::sqrt(r2));
  }
  for (size_t k = 0; k + 10 < residuals.size(); ++k) {
    if (residuals[k] > 1e-12) CHECK(residuals[k + 10] <= residuals[k]);
  }
  CHECK(residuals.back() < 1e-8);
}

TEST_CASE("async_step with fresh identical caches reduces to the sync round") {
  ScalarPair fix;
  SplittingConfig cfg;
  cfg.beta = 1.3;
  cfg.lambda = 0.9;
  std::vector<AgentState> sync_states = fresh_states(fix.problems, cfg);
  std::vector<AgentState> async_states = sync_states;

  const std::vector<Announcement> sync_out = sync_round(fix.problems, sync_states, 1, cfg);
  for (int i = 0; i < 2; ++i) {
    const Announcement out =
        async_step(*fix.problems[i], async_states[i], 2, 1, cfg);
    CHECK((out.value - sync_out[i].value).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((async_states[i].w - sync_states[i].w).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((async_states[i].z - sync_states[i].z).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("async coordinator runs reach consensus under bounded staleness") {
  ScalarPair fix;
  SplittingConfig cfg;
  cfg.beta = 2.5;
  cfg.lambda = 1.0;
  std::vector<AgentState> states(2);
  for (int i = 0; i < 2; ++i) {
    states[i].w = Eigen::VectorXd::Zero(1);
    states[i].z = Eigen::VectorXd::Zero(1);
  }
  const testing::AsyncSchedule sched = testing::make_schedule(300, 2, 3, 99);
  const testing::AsyncRunResult run =
      testing::run_async_coordinator(fix.problems, states, sched, cfg);
  CHECK(run.mean_square_residual.back() < 1e-10);
  // agents agree at the average of the a_i
  CHECK(std::abs(run.v_history.back()[0] - 2.0) < 1e-5);
}

TEST_CASE("scheduler fairness guard") {
  const testing::AsyncSchedule sched = testing::make_schedule(400, 3, 2, 7);
  // Every client appears in every window of 2M steps.
  for (size_t start = 0; start + 6 <= sched.client.size(); start += 6) {
    bool seen[3] = {false, false, false};
    for (size_t k = start; k < start + 6; ++k) seen[sched.client[k]] = true;
    CHECK(seen[0]);
    CHECK(seen[1]);
    CHECK(seen[2]);
  }
}

TEST_CASE("drs_step fixed point and closed-form iterates") {
  SplittingConfig cfg;
  cfg.beta = 2.0;
  cfg.lambda = 1.0;

  SUBCASE("identical agents sit at the fixed point") {
    QuadraticAgent ag(Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Constant(1, 2.0),
                      Eigen::VectorXd::Zero(1));
    std::vector<const ConsensusProblem*> problems{&ag, &ag};
    std::vector<DrsState> drs(2);
    for (auto& d : drs) {
      d.sigma = Eigen::VectorXd::Constant(1, 2.0);
      d.u = Eigen::VectorXd::Constant(1, 2.0);
      d.w = Eigen::VectorXd::Constant(1, 2.0);
    }
    const Eigen::VectorXd tau = drs_tau(drs);
    CHECK(tau[0] == doctest::Approx(2.0));
    for (int i = 0; i < 2; ++i) drs_step(*problems[i], drs[i], tau, cfg);
    CHECK(drs[0].sigma[0] == doctest::Approx(2.0));
    CHECK(drs[0].u[0] == doctest::Approx(2.0));
  }

  SUBCASE("scalar prox recursion matches the hand formula") {
    ScalarPair fix;
    std::vector<DrsState> drs(2);
    for (int i = 0; i < 2; ++i) {
      drs[i].sigma = Eigen::VectorXd::Zero(1);
      drs[i].u = Eigen::VectorXd::Zero(1);
      drs[i].w = Eigen::VectorXd::Zero(1);
    }
    double sigma[2] = {0.0, 0.0}, u[2] = {0.0, 0.0};
    const double a[2] = {1.0, 3.0};
    for (int it = 0; it < 8; ++it) {
      const Eigen::VectorXd tau = drs_tau(drs);
      const double tau_hand = ((2 * u[0] - sigma[0]) + (2 * u[1] - sigma[1])) / 2.0;
      CHECK(tau[0] == doctest::Approx(tau_hand).epsilon(1e-14));
      for (int i = 0; i < 2; ++i) {
        drs_step(*fix.problems[i], drs[i], tau, cfg);
        sigma[i] += cfg.lambda * (tau_hand - u[i]);
        u[i] = (a[i] + cfg.beta * sigma[i]) / (1.0 + cfg.beta); // prox of (w-a)^2/2
        CHECK(drs[i].sigma[0] == doctest::Approx(sigma[i]).epsilon(1e-14));
        CHECK(drs[i].u[0] == doctest::Approx(u[i]).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("Theorem 2: NADMM and DRS iterate sequences coincide") {
  std::mt19937 gen(47);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 4, M = 3;
  std::vector<QuadraticAgent> agents;
  for (int i = 0; i < M; ++i) {
    Eigen::MatrixXd B(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) B(r, c) = u(gen);
    Eigen::MatrixXd Q = B.transpose() * B + Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd a(n), c0(n);
    for (int k = 0; k < n; ++k) {
      a[k] = 2.0 * u(gen);
      c0[k] = 0.5 * u(gen);
    }
    agents.emplace_back(Q, a, c0);
  }
  std::vector<const ConsensusProblem*> problems;
  double L = 0.0;
  for (auto& ag : agents) {
    problems.push_back(&ag);
    L = std::max(L, ag.smoothness());
  }
  SplittingConfig cfg;
  cfg.beta = 1.5 * L;
  cfg.lambda = 1.2;

  std::vector<AgentState> admm = fresh_states(problems, cfg);
  std::vector<DrsState> drs(M);
  for (int i = 0; i < M; ++i) {
    drs[i].u = problems[i]->map_to_consensus(admm[i].w);
    drs[i].sigma = drs[i].u - admm[i].z / cfg.beta;
    drs[i].w = admm[i].w;
  }

  for (int round = 1; round <= 50; ++round) {
    const Eigen::VectorXd xi = global_average(admm.front().xi_cache, M);
    const Eigen::VectorXd tau = drs_tau(drs);
    CHECK((xi - tau).lpNorm<Eigen::Infinity>() < 1e-9);

    const EnvelopePair env = dre_check(problems, admm, xi, drs, tau, cfg.beta);
    CHECK(std::abs(env.V_gamma - env.L_beta) < 1e-9);

    const std::vector<Announcement> anns = sync_round(problems, admm, round, cfg);
    distribute(admm, anns);
    for (int i = 0; i < M; ++i) drs_step(*problems[i], drs[i], tau, cfg);

    for (int i = 0; i < M; ++i) {
      const Eigen::VectorXd mapped = problems[i]->map_to_consensus(admm[i].w);
      CHECK((mapped - drs[i].u).lpNorm<Eigen::Infinity>() < 1e-9);
      CHECK((drs[i].sigma - (mapped - admm[i].z / cfg.beta)).lpNorm<Eigen::Infinity>() < 1e-9);
    }
  }
}
