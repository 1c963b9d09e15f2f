#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <vector>

namespace ccas {

enum class NetMode { Sync, Async };

struct NetConfig {
  NetMode mode = NetMode::Sync;
  double T_delay = 0.0;           // delay bound [s]; per-message uniform in [0, T_delay]
  double loss_p = 0.0;            // announcement drop probability
  std::uint64_t seed = 0;
  bool per_recipient = false;     // independent loss and delay per recipient
  double barrier_timeout = 120.0; // [s] of logical time before a sync deadlock fault
};

/// A timestamped announcement in flight. recipient = -1 marks a broadcast.
struct NetEvent {
  int sender = -1;
  int recipient = -1;
  int iteration = -1;
  Eigen::VectorXd payload;
  double send_time = 0.0;
  double deliver_time = 0.0;
  bool dropped = false;
  std::uint64_t ordinal = 0;
};

/// Simulated message fabric. Logical time only; deterministic given the seed
/// and the send sequence. Single-writer: one scheduler drives it.
class MessageNetwork {
 public:
  MessageNetwork(NetConfig cfg, int num_ships);

  /// Broadcast an announcement. Samples loss then delay (one draw each, or
  /// one pair per recipient in per-recipient mode). Returns the created
  /// events; dropped ones carry the tombstone flag and never deliver.
  std::vector<NetEvent> send(int sender, int iteration, const Eigen::VectorXd& payload,
                             double t_send);

  /// All undropped events with deliver_time <= t, ordered by
  /// (deliver_time, sender, ordinal). t must not regress across calls.
  std::vector<NetEvent> deliver_up_to(double t);

  struct BarrierResult {
    bool ok = false;
    double release_time = 0.0;
    std::vector<NetEvent> events; // the iteration's announcements, one per sender
  };

  /// Sync-mode wait for the iteration's announcements from all ships.
  /// Advances deliveries in time order; a drop or a stall past the timeout is
  /// a protocol fault (ok = false). Events of other iterations delivered
  /// while waiting are returned through deliver_up_to bookkeeping as usual.
  BarrierResult barrier(int iteration, double t_start);

  /// Drop all undelivered events (a new negotiation supersedes old intents).
  void clear_pending();

  /// Every event ever sent, including dropped ones, in send order.
  const std::vector<NetEvent>& trace() const { return trace_; }

  double last_delivery_time() const { return last_t_; }

 private:
  NetConfig cfg_;
  int num_ships_;
  std::mt19937_64 rng_;
  std::uint64_t next_ordinal_ = 0;
  double last_t_ = 0.0;
  std::vector<NetEvent> pending_; // kept sorted lazily at delivery time
  std::vector<NetEvent> trace_;
};

} // namespace ccas
