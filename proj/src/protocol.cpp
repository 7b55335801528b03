#include "teleclone/protocol.hpp"

#include <cmath>

#include "teleclone/analysis.hpp"

namespace teleclone {

namespace {

SubsystemLayout with_input(const SubsystemLayout& layout) {
  std::vector<SubsystemLayout::Slot> slots{{"X", 2}};
  for (const auto& s : layout.slots()) slots.push_back(s);
  return SubsystemLayout(std::move(slots));
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::domain_error("sharpness lambda must lie in (0,1]");
}

// Left-multiply by I_L (x) g (x) I_R without forming the dense operator.
ComplexMatrix lmul_local(const ComplexMatrix& g, long left, long right,
                         const ComplexMatrix& m) {
  const long gd = g.rows();
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (long l = 0; l < left; ++l)
    for (long a = 0; a < gd; ++a) {
      auto dst = out.middleRows(l * gd * right + a * right, right);
      for (long b = 0; b < gd; ++b) {
        const Complex c = g(a, b);
        if (c != Complex(0.0, 0.0))
          dst += c * m.middleRows(l * gd * right + b * right, right);
      }
    }
  return out;
}

// g m g^dag for g acting locally at the (left, right) block position. The
// right factor uses m g^dag = (g* m^T)^T.
ComplexMatrix conj_local(const ComplexMatrix& g, long left, long right,
                         const ComplexMatrix& m) {
  ComplexMatrix t = lmul_local(g, left, right, m);
  return lmul_local(g.conjugate(), left, right, t.transpose()).transpose();
}

// One unsharp-measurement round on an operator over `full` (X, P, A.., C..):
// sum_k mu_k rho mu_k^dag, applying each tensor factor of mu_k in place.
// Masked receivers occupy the trailing mask-length slots.
ComplexMatrix apply_round(double lambda, const AcceptanceMask& mask,
                          const SubsystemLayout& full,
                          const ComplexMatrix& rho_in) {
  const int n = full.size();
  const int m = static_cast<int>(mask.bits.size());
  const long dim = full.dim();
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int k = 1; k <= 4; ++k) {
    ComplexMatrix t =
        conj_local(sqrt_povm_element(k, lambda), 1, dim / 4, rho_in);
    for (int j = 0; j < m; ++j) {
      if (!mask.bits[static_cast<std::size_t>(j)]) continue;
      const int pos = n - m + j;
      t = conj_local(correction_unitary(k), 1L << pos, 1L << (n - 1 - pos), t);
    }
    out += t;
  }
  return out;
}

}  // namespace

ChannelState ChannelState::fresh(int receivers, const DisentangleParams& etas) {
  etas.validate(receivers);
  PureState psi = telecloning_state(receivers);
  if (!etas.is_optimal()) {
    std::map<std::string, double> eta_map;
    eta_map["P"] = etas.eta_P;
    for (int i = 1; i < receivers; ++i) eta_map[ancilla_name(i)] = etas.eta_A;
    for (int i = 1; i <= receivers; ++i)
      eta_map[receiver_name(i)] = etas.eta_C[static_cast<std::size_t>(i - 1)];
    psi = disentangle(psi, eta_map);
  }
  return ChannelState{psi.to_density(), receivers};
}

ChannelState ChannelState::fresh(int receivers) {
  return fresh(receivers, DisentangleParams::optimal(receivers));
}

std::vector<std::string> ChannelState::remaining_receivers() const {
  std::vector<std::string> out;
  for (const auto& s : rho.layout.slots())
    if (s.name.size() > 1 && s.name[0] == 'C') out.push_back(s.name);
  return out;
}

ChannelState recycle(const ChannelState& ch, double lambda,
                     const AcceptanceMask& mask) {
  check_lambda(lambda);
  const auto receivers = ch.remaining_receivers();
  if (receivers.empty())
    throw std::domain_error("protocol exhausted: no receivers remain");
  if (mask.bits.size() != receivers.size())
    throw std::invalid_argument("mask length must match remaining receivers");

  const SubsystemLayout full = with_input(ch.rho.layout);
  const ComplexMatrix avg_input = identity(2) / 2.0;
  const ComplexMatrix out =
      apply_round(lambda, mask, full, kron(avg_input, ch.rho.mat));

  std::set<std::string> discard{"X"};
  for (std::size_t j = 0; j < receivers.size(); ++j)
    if (mask.bits[j]) discard.insert(receivers[j]);

  ChannelState next{
      DensityMatrix(full.without(discard),
                    partial_trace_raw(out, full, discard)),
      ch.receivers_total, ch.round_index + 1, ch.history};
  next.history.push_back({lambda, mask});
  return next;
}

DensityMatrix teleported_state(const ChannelState& ch, double lambda,
                               const std::string& receiver,
                               const InputQubit& input) {
  check_lambda(lambda);
  const auto receivers = ch.remaining_receivers();
  AcceptanceMask mask{std::vector<bool>(receivers.size(), false)};
  bool found = false;
  for (std::size_t j = 0; j < receivers.size(); ++j)
    if (receivers[j] == receiver) {
      mask.bits[j] = true;
      found = true;
    }
  if (!found) throw std::invalid_argument("unknown receiver: " + receiver);

  const SubsystemLayout full = with_input(ch.rho.layout);
  const ComplexMatrix out = apply_round(
      lambda, mask, full, kron(input.projector(), ch.rho.mat));

  std::set<std::string> discard;
  for (const auto& n : full.names())
    if (n != receiver) discard.insert(n);
  return DensityMatrix(full.without(discard),
                       partial_trace_raw(out, full, discard));
}

double avg_fidelity(const ChannelState& ch, double lambda,
                    const std::string& receiver) {
  double total = 0.0;
  for (const InputQubit& q : two_design_states()) {
    const DensityMatrix out = teleported_state(ch, lambda, receiver, q);
    ComplexVector v(2);
    v << q.alpha, q.beta;
    total += (v.adjoint() * out.mat * v)(0, 0).real();
  }
  return total / 6.0;
}

std::vector<FidelityReport> run_schedule(int receivers,
                                         const DisentangleParams& etas,
                                         const RoundSchedule& schedule) {
  if (schedule.empty())
    throw std::domain_error("schedule must contain at least one round");
  ChannelState ch = ChannelState::fresh(receivers, etas);
  std::vector<FidelityReport> reports;
  double attenuation = 1.0;  // product of P(lambda_i) over completed rounds
  for (const auto& round : schedule) {
    const auto remaining = ch.remaining_receivers();
    if (round.mask.bits.size() != remaining.size())
      throw std::invalid_argument("round mask inconsistent with remaining receivers");
    for (const auto& name : remaining) {
      const int index = std::stoi(name.substr(1));
      const double f_closed =
          0.5 + receiver_prefactor(receivers, etas, index) * attenuation *
                    round.lambda;
      const double f_sim = avg_fidelity(ch, round.lambda, name);
      reports.push_back({name, ch.round_index + 1, f_sim, f_closed,
                         std::abs(f_sim - f_closed)});
    }
    ch = recycle(ch, round.lambda, round.mask);
    attenuation *= p_kernel(round.lambda);
  }
  return reports;
}

}  // namespace teleclone
