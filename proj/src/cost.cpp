#include "ccas/cost.hpp"

#include <cmath>

namespace ccas {

double effort_cost(const ControlPlan& plan, const CostWeights& w, double u_y_prev) {
  const int N = plan.horizon();
  double cost = 0.0;
  double prev = u_y_prev;
  for (int k = 0; k < N; ++k) {
    const double du = plan.own(0, k) - prev;
    cost += w.K_y * du * du;
    const double ds = 1.0 - plan.own(1, k);
    cost += w.K_s * ds * ds;
    prev = plan.own(0, k);
  }
  for (int j = 0; j < plan.num_ships(); ++j) {
    if (j == plan.ego) continue;
    const double alpha = w.alpha[j];
    for (int k = 0; k < N; ++k) {
      const double chi_d = plan.proposals[j](0, k);
      const double ds = 1.0 - plan.proposals[j](1, k);
      cost += alpha * (chi_d * chi_d + ds * ds);
    }
  }
  return cost;
}

double behavior_cost(const ControlPlan& plan, const CostWeights& w) {
  double cost = 0.0;
  for (int k = 0; k < plan.horizon(); ++k) {
    const double port = std::max(0.0, -plan.own(0, k));
    cost += w.K_b * port * port;
  }
  return cost;
}

double total_cost(const TrajectoryStack& stack, const ControlPlan& plan, const CostContext& ctx) {
  return cumulative_risk(stack, ctx.ego, ctx.risk) + effort_cost(plan, ctx.weights, ctx.u_y_prev) +
         behavior_cost(plan, ctx.weights);
}

double augmented_lagrangian(const TrajectoryStack& stack, const ControlPlan& plan,
                            const CostContext& ctx, const LagrangianContext& lag) {
  const Eigen::VectorXd r = stack_to_global(stack, lag.segment) - lag.xi;
  if (r.size() != lag.z.size())
    throw std::invalid_argument("augmented_lagrangian: multiplier length mismatch");
  return total_cost(stack, plan, ctx) + lag.z.dot(r) + 0.5 * lag.beta * r.squaredNorm();
}

namespace {

/// Gradient of the risk and consensus terms with respect to every stack
/// entry; the chi components only enter through the consensus residual.
Eigen::VectorXd stack_cost_gradient(const TrajectoryStack& stack, const CostContext& ctx,
                                    const LagrangianContext& lag) {
  const int M = stack.num_ships;
  const int N = stack.horizon;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(stack.data.size());

  for (int k = 0; k <= N; ++k) {
    const PathPose pe = stack.pose(ctx.ego, k);
    const int be = stack.flat_index(ctx.ego, k);
    for (int j = 0; j < M; ++j) {
      if (j == ctx.ego) continue;
      const PathPose pj = stack.pose(j, k);
      const RiskParams& rp = ctx.risk[j];
      const double r = pair_risk(pe, pj, k, rp);
      const double gx = r * (-2.0 * (pe.x - pj.x) / rp.alpha_x);
      const double gy = r * (-2.0 * (pe.y - pj.y) / rp.alpha_y);
      const int bj = stack.flat_index(j, k);
      g[be] += gx;
      g[be + 1] += gy;
      g[bj] -= gx;
      g[bj + 1] -= gy;
    }
  }

  // d/ds [ <z, A s + b - xi> + (beta/2)||A s + b - xi||^2 ] = A^T (z + beta r),
  // where A is the block-diagonal inverse rotation of stack_to_global.
  const Eigen::VectorXd res = stack_to_global(stack, lag.segment) - lag.xi;
  const Eigen::VectorXd v = lag.z + lag.beta * res;
  const double c = std::cos(lag.segment.chi_wp);
  const double s = std::sin(lag.segment.chi_wp);
  for (int m = 0; m < M * (N + 1); ++m) {
    const int b = 3 * m;
    g[b] += c * v[b] + s * v[b + 1];
    g[b + 1] += -s * v[b] + c * v[b + 1];
    g[b + 2] += v[b + 2];
  }
  return g;
}

} // namespace

Eigen::VectorXd lagrangian_gradient(const ControlPlan& plan, const CostContext& ctx,
                                    const LagrangianContext& lag) {
  const int M = ctx.num_ships();
  const int N = plan.horizon();
  const TrajectoryStack stack = rollout(ctx.initial, plan, N, ctx.own_params, ctx.neighbor_params);
  const Eigen::VectorXd d = stack_cost_gradient(stack, ctx, lag);

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * M * N);
  const double dT = ctx.own_params.dT;

  for (int j = 0; j < M; ++j) {
    // Backward sweep: adjoint of pose (j,k) accumulates the direct cost terms
    // plus the pullback of the adjoint at k+1 through the Euler step.
    Eigen::Vector3d a = d.segment<3>(stack.flat_index(j, N));
    for (int k = N - 1; k >= 0; --k) {
      const PathPose p = stack.pose(j, k);
      Eigen::Vector3d a_prev;
      double g_c0 = 0.0, g_c1 = 0.0; // gradient w.r.t. the two controls at step k
      if (j == plan.ego) {
        const OwnShipParams& pr = ctx.own_params;
        const double u_s = plan.own(1, k);
        const double u_y = plan.own(0, k);
        const double th = std::tanh(pr.K_e * (u_y - p.y));
        const double sech2 = 1.0 - th * th;
        const double dchi_dy = (dT / pr.T_1) * pr.chi_max * sech2 * (-pr.K_e);
        a_prev[0] = a[0];
        a_prev[1] = a[1] + dchi_dy * a[2];
        a_prev[2] = (-u_s * pr.U_d * std::sin(p.chi) * dT) * a[0] +
                    (u_s * pr.U_d * std::cos(p.chi) * dT) * a[1] + (1.0 - dT / pr.T_1) * a[2];
        g_c0 = (dT / pr.T_1) * pr.chi_max * sech2 * pr.K_e * a[2];           // d/du_y
        g_c1 = pr.U_d * std::cos(p.chi) * dT * a[0] + pr.U_d * std::sin(p.chi) * dT * a[1]; // d/du_s
      } else {
        const NeighborParams& pr = ctx.neighbor_params[j];
        const double u_s = plan.proposals[j](1, k);
        a_prev[0] = a[0];
        a_prev[1] = a[1];
        a_prev[2] = (-u_s * pr.U_j * std::sin(p.chi) * dT) * a[0] +
                    (u_s * pr.U_j * std::cos(p.chi) * dT) * a[1] + (1.0 - dT / pr.T_j) * a[2];
        g_c0 = (dT / pr.T_j) * a[2];                                          // d/dchi_d
        g_c1 = pr.U_j * std::cos(p.chi) * dT * a[0] + pr.U_j * std::sin(p.chi) * dT * a[1]; // d/du_s
      }
      grad[j * 2 * N + 2 * k] += g_c0;
      grad[j * 2 * N + 2 * k + 1] += g_c1;
      a = a_prev + d.segment<3>(stack.flat_index(j, k));
    }
  }

  // Direct control terms: effort and behavior costs.
  const CostWeights& w = ctx.weights;
  for (int k = 0; k < N; ++k) {
    const double prev = (k == 0) ? ctx.u_y_prev : plan.own(0, k - 1);
    const double du = plan.own(0, k) - prev;
    double g_uy = 2.0 * w.K_y * du;
    if (k + 1 < N) g_uy -= 2.0 * w.K_y * (plan.own(0, k + 1) - plan.own(0, k));
    g_uy -= 2.0 * w.K_b * std::max(0.0, -plan.own(0, k));
    grad[plan.ego * 2 * N + 2 * k] += g_uy;
    grad[plan.ego * 2 * N + 2 * k + 1] += -2.0 * w.K_s * (1.0 - plan.own(1, k));
  }
  for (int j = 0; j < M; ++j) {
    if (j == plan.ego) continue;
    for (int k = 0; k < N; ++k) {
      grad[j * 2 * N + 2 * k] += 2.0 * w.alpha[j] * plan.proposals[j](0, k);
      grad[j * 2 * N + 2 * k + 1] += -2.0 * w.alpha[j] * (1.0 - plan.proposals[j](1, k));
    }
  }
  return grad;
}

} // namespace ccas
