#include "teleclone/states.hpp"

#include <bit>
#include <cmath>
#include <numeric>

namespace teleclone {

PureState::PureState(SubsystemLayout l, ComplexVector a)
    : layout(std::move(l)), amplitudes(std::move(a)) {
  if (amplitudes.size() != layout.dim())
    throw std::invalid_argument("pure state dimension mismatch");
  if (std::abs(amplitudes.norm() - 1.0) > tol::norm_one)
    throw std::invalid_argument("pure state not normalized");
}

DensityMatrix PureState::to_density() const {
  return DensityMatrix(layout, amplitudes * amplitudes.adjoint());
}

InputQubit::InputQubit(Complex a, Complex b) : alpha(a), beta(b) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > tol::norm_one)
    throw std::invalid_argument("input qubit not normalized");
}

ComplexMatrix InputQubit::projector() const {
  ComplexVector v(2);
  v << alpha, beta;
  return v * v.adjoint();
}

DisentangleParams DisentangleParams::optimal(int receivers) {
  DisentangleParams p;
  p.eta_C.assign(static_cast<std::size_t>(receivers), 1.0);
  return p;
}

void DisentangleParams::validate(int receivers) const {
  auto in_range = [](double e) { return e >= 0.0 && e <= 1.0; };
  if (!in_range(eta_P) || !in_range(eta_A))
    throw std::invalid_argument("eta values must lie in [0,1]");
  for (double e : eta_C)
    if (!in_range(e)) throw std::invalid_argument("eta values must lie in [0,1]");
  if (static_cast<int>(eta_C.size()) != receivers)
    throw std::invalid_argument("eta_C length must equal receiver count");
}

bool DisentangleParams::is_optimal() const {
  if (eta_P != 1.0 || eta_A != 1.0) return false;
  for (double e : eta_C)
    if (e != 1.0) return false;
  return true;
}

std::string ancilla_name(int i) { return "A" + std::to_string(i); }
std::string receiver_name(int i) { return "C" + std::to_string(i); }

PureState symmetric_state(int zeros, int ones) {
  if (zeros < 0 || ones < 0 || zeros + ones < 1)
    throw std::domain_error("symmetric_state needs at least one qubit");
  const int n = zeros + ones;
  const long dim = 1L << n;
  ComplexVector v = ComplexVector::Zero(dim);
  long count = 0;
  for (long idx = 0; idx < dim; ++idx) {
    if (std::popcount(static_cast<unsigned long>(idx)) == ones) {
      v(idx) = 1.0;
      ++count;
    }
  }
  v /= std::sqrt(static_cast<double>(count));
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("q" + std::to_string(i));
  return PureState(SubsystemLayout::qubits(names), std::move(v));
}

namespace {

// Amplitude vector of |{0,a},{1,b}>, or the scalar 1 for zero qubits.
ComplexVector sym_vector(int zeros, int ones) {
  if (zeros + ones == 0) {
    ComplexVector one(1);
    one << 1.0;
    return one;
  }
  return symmetric_state(zeros, ones).amplitudes;
}

ComplexVector vkron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (long i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

PureState telecloning_state(int receivers) {
  if (receivers < 1) throw std::domain_error("receiver count must be >= 1");
  const int M = receivers;
  const long dim = 1L << (2 * M);
  ComplexVector v = ComplexVector::Zero(dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ComplexVector e0(2), e1(2);
  e0 << 1.0, 0.0;
  e1 << 0.0, 1.0;
  for (int j = 0; j < M; ++j) {
    const double alpha = std::sqrt(2.0 * (M - j) / (M * (M + 1.0)));
    ComplexVector aj = sym_vector(M - 1 - j, j);
    ComplexVector aflip = sym_vector(j, M - 1 - j);
    ComplexVector c0 = sym_vector(M - j, j);
    ComplexVector c1 = sym_vector(j, M - j);
    v += alpha * inv_sqrt2 * (vkron(e0, vkron(aj, c0)) + vkron(e1, vkron(aflip, c1)));
  }
  std::vector<std::string> names{"P"};
  for (int i = 1; i < M; ++i) names.push_back(ancilla_name(i));
  for (int i = 1; i <= M; ++i) names.push_back(receiver_name(i));
  return PureState(SubsystemLayout::qubits(names), std::move(v));
}

ComplexVector bell_vector(int index) {
  ComplexVector v = ComplexVector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (index) {
    case 1: v(0) = s; v(3) = s; break;
    case 2: v(0) = s; v(3) = -s; break;
    case 3: v(1) = s; v(2) = s; break;
    case 4: v(1) = s; v(2) = -s; break;
    default: throw std::invalid_argument("Bell index must be in 1..4");
  }
  return v;
}

PureState bell_state(int index) {
  return PureState(SubsystemLayout::qubits({"q1", "q2"}), bell_vector(index));
}

PureState disentangle(const PureState& state,
                      const std::map<std::string, double>& etas) {
  const auto& layout = state.layout;
  std::vector<double> eta(static_cast<std::size_t>(layout.size()), 1.0);
  for (const auto& [name, e] : etas) {
    if (e < 0.0 || e > 1.0)
      throw std::invalid_argument("eta values must lie in [0,1]");
    eta[static_cast<std::size_t>(layout.index_of(name))] = e;
  }
  const int n = layout.size();
  ComplexVector v = state.amplitudes;
  for (long idx = 0; idx < v.size(); ++idx) {
    double w = 1.0;
    for (int q = 0; q < n; ++q)
      if ((idx >> (n - 1 - q)) & 1) w *= eta[static_cast<std::size_t>(q)];
    v(idx) *= w;
  }
  const double nrm = v.norm();
  if (nrm <= 0.0)
    throw std::invalid_argument("disentangle produced the zero vector");
  return PureState(layout, v / nrm);
}

std::vector<InputQubit> two_design_states() {
  const double s = 1.0 / std::sqrt(2.0);
  return {
      InputQubit(1.0, 0.0),
      InputQubit(0.0, 1.0),
      InputQubit(s, s),
      InputQubit(s, -s),
      InputQubit(s, Complex(0.0, s)),
      InputQubit(s, Complex(0.0, -s)),
  };
}

double concurrence_eta(double eta) {
  if (eta < 0.0 || eta > 1.0)
    throw std::domain_error("eta must lie in [0,1]");
  return 2.0 * eta / (1.0 + eta * eta);
}

}  // namespace teleclone
