#pragma once

#include <array>
#include <vector>

#include "teleclone/linalg.hpp"

namespace teleclone {

/// Unsharp Bell POVM on the X(x)P pair: M_i = lambda |B_i><B_i| +
/// (1-lambda)/4 I_4. At lambda=1 the elements are the Bell projectors.
struct WeakBellPOVM {
  double lambda;
  std::array<ComplexMatrix, 4> elements;
};

/// Per-receiver participation bits: true means the receiver applies its
/// correction and leaves the protocol.
struct AcceptanceMask {
  std::vector<bool> bits;

  static AcceptanceMask all_refuse(int receivers) {
    return {std::vector<bool>(static_cast<std::size_t>(receivers), false)};
  }
  int accepted_count() const;
};

/// The four Kraus operators mu_k = sqrt(M_k) (x) I_A (x) prod_j (U_k)^{c_j}
/// on the full (X, P, A.., C..) space. Trace preserving by construction.
struct KrausSet {
  double lambda;
  AcceptanceMask mask;
  std::array<ComplexMatrix, 4> ops;
};

WeakBellPOVM weak_bell_povm(double lambda);

/// Analytic square root of the i-th POVM element in the Bell eigenbasis.
ComplexMatrix sqrt_povm_element(int index, double lambda);

/// Calibrated outcome->Pauli correction: {I, sigma_z, sigma_x, sigma_y}
/// for outcomes B1..B4.
ComplexMatrix correction_unitary(int outcome);

/// Layout must start with X, P; mask bits map onto the trailing
/// mask-length slots (the receivers).
KrausSet kraus_set(double lambda, const AcceptanceMask& mask,
                   const SubsystemLayout& layout);

}  // namespace teleclone
