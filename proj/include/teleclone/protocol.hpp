#pragma once

#include <optional>
#include <string>
#include <vector>

#include "teleclone/measurement.hpp"
#include "teleclone/states.hpp"

namespace teleclone {

struct RoundRecord {
  double lambda;
  AcceptanceMask mask;
};

using RoundSchedule = std::vector<RoundRecord>;

/// Shared resource state threaded through the rounds. Accepted receivers
/// are traced out, so the layout shrinks as the protocol advances.
struct ChannelState {
  DensityMatrix rho;  // on (P, A.., remaining C..)
  int receivers_total;
  int round_index = 0;
  RoundSchedule history;

  /// Fresh (round-0) channel for M receivers, optionally disentangled.
  static ChannelState fresh(int receivers, const DisentangleParams& etas);
  static ChannelState fresh(int receivers);

  std::vector<std::string> remaining_receivers() const;
};

/// Per-round, per-receiver fidelity: simulated Haar average vs. the
/// matching closed form.
struct FidelityReport {
  std::string receiver;
  int round = 0;
  double f_sim = 0.0;
  double f_closed = 0.0;
  double abs_diff = 0.0;
};

/// One protocol round on the input-averaged channel: attach I/2 at X,
/// apply the Kraus channel for (lambda, mask), trace out X and the
/// accepting receivers.
ChannelState recycle(const ChannelState& ch, double lambda,
                     const AcceptanceMask& mask);

/// Single-qubit state delivered to `receiver` (who applies its correction)
/// when `input` is teleported through the current channel, averaged over
/// measurement outcomes.
DensityMatrix teleported_state(const ChannelState& ch, double lambda,
                               const std::string& receiver,
                               const InputQubit& input);

/// Haar-average fidelity at `receiver`, computed exactly via the 6-state
/// projective 2-design.
double avg_fidelity(const ChannelState& ch, double lambda,
                    const std::string& receiver);

/// Drive a full schedule, reporting per-round per-receiver fidelity from
/// simulation next to the closed form.
std::vector<FidelityReport> run_schedule(int receivers,
                                         const DisentangleParams& etas,
                                         const RoundSchedule& schedule);

}  // namespace teleclone
