#pragma once

#include <map>
#include <vector>

#include "teleclone/linalg.hpp"

namespace teleclone {

/// Normalized pure state over a labeled tensor product of qubit slots.
struct PureState {
  SubsystemLayout layout;
  ComplexVector amplitudes;

  PureState(SubsystemLayout l, ComplexVector a);

  DensityMatrix to_density() const;
};

/// Single-qubit input |phi_in> = alpha|0> + beta|1>.
struct InputQubit {
  Complex alpha;
  Complex beta;

  InputQubit(Complex a, Complex b);

  ComplexMatrix projector() const;
};

/// Disentangling parameters for the M=2 resource state family. All entries
/// real in [0,1]; unit values reproduce the optimal state.
struct DisentangleParams {
  double eta_P = 1.0;
  double eta_A = 1.0;
  std::vector<double> eta_C;  // length M

  static DisentangleParams optimal(int receivers);
  void validate(int receivers) const;
  bool is_optimal() const;
};

/// Equal superposition of all bitstrings with `zeros` 0s and `ones` 1s.
PureState symmetric_state(int zeros, int ones);

/// The 2M-qubit telecloning resource state on layout (P, A1..A_{M-1},
/// C1..C_M). For M=1 the ancilla register is empty and the resource is a
/// Bell pair.
PureState telecloning_state(int receivers);

/// |B1,2> = (|00> +- |11>)/sqrt2, |B3,4> = (|01> +- |10>)/sqrt2.
PureState bell_state(int index);
ComplexVector bell_vector(int index);

/// Scale the amplitude of each basis ket by prod eta_i^{bit_i}, then
/// renormalize. Slots absent from the map keep eta = 1.
PureState disentangle(const PureState& state,
                      const std::map<std::string, double>& etas);

/// Six eigenstates of the Pauli operators; a projective 2-design whose
/// uniform fidelity average equals the Haar average for any qubit channel.
std::vector<InputQubit> two_design_states();

/// Concurrence of (|01> + eta|10>)/sqrt(1+eta^2): 2*eta/(1+eta^2).
double concurrence_eta(double eta);

/// Standard slot names used throughout: X, P, A1.., C1...
std::string ancilla_name(int i);
std::string receiver_name(int i);

}  // namespace teleclone
