#include "ccas/network.hpp"

#include "ccas/nadmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace ccas {

namespace {

bool delivery_order(const NetEvent& a, const NetEvent& b) {
  if (a.deliver_time != b.deliver_time) return a.deliver_time < b.deliver_time;
  if (a.sender != b.sender) return a.sender < b.sender;
  return a.ordinal < b.ordinal;
}

} // namespace

MessageNetwork::MessageNetwork(NetConfig cfg, int num_ships)
    : cfg_(cfg), num_ships_(num_ships), rng_(cfg.seed) {
  if (cfg_.loss_p < 0.0 || cfg_.loss_p > 1.0)
    throw std::invalid_argument("MessageNetwork: loss_p outside [0,1]");
  if (cfg_.T_delay < 0.0) throw std::invalid_argument("MessageNetwork: negative T_delay");
}

std::vector<NetEvent> MessageNetwork::send(int sender, int iteration,
                                           const Eigen::VectorXd& payload, double t_send) {
  if (payload.size() == 0) throw std::invalid_argument("MessageNetwork::send: empty payload");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<NetEvent> created;

  const auto make_event = [&](int recipient) {
    NetEvent ev;
    ev.sender = sender;
    ev.recipient = recipient;
    ev.iteration = iteration;
    ev.payload = payload;
    ev.send_time = t_send;
    ev.ordinal = next_ordinal_++;
    ev.dropped = cfg_.loss_p > 0.0 && unit(rng_) < cfg_.loss_p;
    ev.deliver_time = t_send + (cfg_.T_delay > 0.0 ? unit(rng_) * cfg_.T_delay : 0.0);
    return ev;
  };

  if (cfg_.per_recipient) {
    for (int r = 0; r < num_ships_; ++r) {
      if (r == sender) continue;
      created.push_back(make_event(r));
    }
  } else {
    created.push_back(make_event(-1));
  }

  for (const NetEvent& ev : created) {
    trace_.push_back(ev);
    if (!ev.dropped) pending_.push_back(ev);
  }
  return created;
}

std::vector<NetEvent> MessageNetwork::deliver_up_to(double t) {
  if (t < last_t_)
    throw std::logic_error("MessageNetwork::deliver_up_to: logical time regressed");
  last_t_ = t;
  std::vector<NetEvent> out;
  auto it = std::partition(pending_.begin(), pending_.end(),
                           [t](const NetEvent& e) { return e.deliver_time > t; });
  out.assign(it, pending_.end());
  pending_.erase(it, pending_.end());
  std::sort(out.begin(), out.end(), delivery_order);
  return out;
}

MessageNetwork::BarrierResult MessageNetwork::barrier(int iteration, double t_start) {
  BarrierResult res;
  std::set<int> seen;
  const double deadline = t_start + cfg_.barrier_timeout;
  double t = std::max(t_start, last_t_);

  // Collect what is already deliverable, then advance event by event.
  std::vector<NetEvent> buffer = deliver_up_to(t);
  for (;;) {
    for (const NetEvent& ev : buffer) {
      res.events.push_back(ev);
      if (ev.iteration == iteration) seen.insert(ev.sender);
    }
    buffer.clear();
    if (static_cast<int>(seen.size()) == num_ships_) {
      res.ok = true;
      res.release_time = t;
      return res;
    }
    // Jump to the next pending delivery.
    double next_t = std::numeric_limits<double>::infinity();
    for (const NetEvent& ev : pending_) next_t = std::min(next_t, ev.deliver_time);
    if (!std::isfinite(next_t) || next_t > deadline) {
      res.ok = false;
      res.release_time = std::min(deadline, std::isfinite(next_t) ? next_t : deadline);
      return res;
    }
    t = next_t;
    buffer = deliver_up_to(t);
  }
}

void MessageNetwork::clear_pending() { pending_.clear(); }

} // namespace ccas
