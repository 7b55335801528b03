#pragma once

#include <optional>
#include <string>
#include <vector>

#include "teleclone/states.hpp"

namespace teleclone {

/// A (receivers, etas, fidelity-floor) query for the MAN solver.
struct ScenarioConfig {
  int receivers = 2;
  DisentangleParams etas = DisentangleParams::optimal(2);
  double f_min = 0.0;  // per-round lower bound f_l
};

struct ManResult {
  int man = 0;
  std::vector<double> lambda_schedule;  // minimal lambda per achieved round
  std::optional<double> first_invalid_lambda;  // > 1, when the run stops
};

/// Fidelity attenuation kernel P(lambda) = (1-lambda+sqrt((1-lambda)
/// (1+3lambda)))/2. Strictly decreasing on [0,1], P(0)=1, P(1)=0.
double p_kernel(double lambda);

/// Round-n fidelity for M receivers, optimal state, all previous rounds
/// refused: 1/2 + (M+2)/(6M) P(l1)...P(l_{n-1}) l_n.
double closed_fidelity(int receivers, const std::vector<double>& lambdas);

enum class EtaCase { port, receivers_equal, receivers_unequal, port_and_receivers };

/// Round-n fidelity for the M=2 disentangled state families. For
/// receivers_unequal the value is receiver C1's; C2's is obtained by
/// swapping the eta_C entries.
double closed_fidelity_eta(EtaCase c, const DisentangleParams& params,
                           const std::vector<double>& lambdas);

/// Closed-form round-1 fidelity prefactor K for the given receiver
/// (1-based), such that f_n = 1/2 + K P(l1)..P(l_{n-1}) l_n.
double receiver_prefactor(int receivers, const DisentangleParams& etas,
                          int receiver_index);

/// Minimal lambda achieving target_f given the accumulated prefactor;
/// returned even when > 1 (the caller interprets validity).
double min_lambda(double target_f, double prefactor);

/// Greedy maximum attempting number: each round uses the minimal lambda
/// reaching f_min; stops at the first lambda > 1.
ManResult man(const ScenarioConfig& cfg);

enum class BoundaryFamily {
  fidelity_floor,   // f_l swept, M=2 optimal state
  eta_port,         // eta_P swept at f_l = 0.67
  eta_receivers,    // eta_C1 = eta_C2 swept at f_l = 0.67
};

/// Bisection (to 1e-6) for the parameter values where MAN steps down.
/// Returns the boundaries in step order (3->2 first, then 2->1).
std::vector<double> man_boundary(BoundaryFamily family);

struct OutputTable {
  std::vector<std::string> headers;
  std::vector<std::vector<double>> rows;
};

enum class FigureId { fig2, fig3, fig4a, fig4b, fig5 };

/// Deterministic sampled curves/surfaces over the plotted ranges.
OutputTable figure_data(FigureId id, int grid);

}  // namespace teleclone
