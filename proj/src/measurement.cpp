#include "teleclone/measurement.hpp"

#include <cmath>

#include "teleclone/states.hpp"

namespace teleclone {

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::domain_error("sharpness lambda must lie in (0,1]");
}

}  // namespace

int AcceptanceMask::accepted_count() const {
  int n = 0;
  for (bool b : bits) n += b ? 1 : 0;
  return n;
}

WeakBellPOVM weak_bell_povm(double lambda) {
  check_lambda(lambda);
  WeakBellPOVM povm{lambda, {}};
  const ComplexMatrix eye = identity(4);
  for (int i = 1; i <= 4; ++i) {
    ComplexVector b = bell_vector(i);
    povm.elements[static_cast<std::size_t>(i - 1)] =
        lambda * (b * b.adjoint()) + (1.0 - lambda) / 4.0 * eye;
  }
  return povm;
}

ComplexMatrix sqrt_povm_element(int index, double lambda) {
  check_lambda(lambda);
  ComplexVector b = bell_vector(index);
  ComplexMatrix proj = b * b.adjoint();
  const double on = std::sqrt(lambda + (1.0 - lambda) / 4.0);
  const double off = std::sqrt((1.0 - lambda) / 4.0);
  return on * proj + off * (identity(4) - proj);
}

ComplexMatrix correction_unitary(int outcome) {
  switch (outcome) {
    case 1: return identity(2);
    case 2: return pauli_z();
    case 3: return pauli_x();
    case 4: return pauli_y();
    default: throw std::invalid_argument("outcome must be in 1..4");
  }
}

KrausSet kraus_set(double lambda, const AcceptanceMask& mask,
                   const SubsystemLayout& layout) {
  check_lambda(lambda);
  const int n = layout.size();
  const int m = static_cast<int>(mask.bits.size());
  if (n < 2 || layout.slot(0).name != "X" || layout.slot(1).name != "P")
    throw std::invalid_argument("kraus_set layout must start with X, P");
  if (m > n - 2)
    throw std::invalid_argument("mask length exceeds receiver slot count");

  const int ancillas = n - 2 - m;
  const ComplexMatrix mid = identity(1L << ancillas);
  KrausSet set{lambda, mask, {}};
  for (int k = 1; k <= 4; ++k) {
    ComplexMatrix op = kron(sqrt_povm_element(k, lambda), mid);
    for (int j = 0; j < m; ++j)
      op = kron(op, mask.bits[static_cast<std::size_t>(j)]
                        ? correction_unitary(k)
                        : identity(2));
    set.ops[static_cast<std::size_t>(k - 1)] = std::move(op);
  }
  return set;
}

}  // namespace teleclone
