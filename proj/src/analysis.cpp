#include "teleclone/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "teleclone/entanglement.hpp"

namespace teleclone {

double p_kernel(double lambda) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::domain_error("p_kernel requires lambda in [0,1]");
  return 0.5 * (1.0 - lambda +
                std::sqrt((1.0 - lambda) * (1.0 + 3.0 * lambda)));
}

namespace {

void check_lambdas(const std::vector<double>& lambdas) {
  if (lambdas.empty())
    throw std::domain_error("at least one round lambda is required");
  for (double l : lambdas)
    if (!(l > 0.0 && l <= 1.0))
      throw std::domain_error("round lambdas must lie in (0,1]");
}

double attenuated(double prefactor, const std::vector<double>& lambdas) {
  double acc = prefactor;
  for (std::size_t i = 0; i + 1 < lambdas.size(); ++i)
    acc *= p_kernel(lambdas[i]);
  return 0.5 + acc * lambdas.back();
}

double optimal_prefactor(int receivers) {
  if (receivers < 1) throw std::domain_error("receiver count must be >= 1");
  return (receivers + 2.0) / (6.0 * receivers);
}

double port_prefactor(double eta) {
  return (1.0 + 4.0 * eta + eta * eta) / (9.0 * (1.0 + eta * eta));
}

// Fidelity prefactor at receiver C1 for independent receiver etas
// (port and ancilla untouched). Reduces to the equal-receiver form at
// e1 = e2 and to the port form's value pattern at e2 = 1.
double unequal_receiver_prefactor(double e1, double e2) {
  const double num = 1.0 + 2.0 * e1 + 2.0 * e1 * e2 * e2 + e1 * e1 * e2 * e2;
  const double den = 2.0 + e1 * e1 + e2 * e2 + 2.0 * e1 * e1 * e2 * e2;
  return num / (3.0 * den);
}

double port_receiver_prefactor(double eta_c, double eta_p) {
  const double c2 = eta_c * eta_c;
  const double num = 1.0 + eta_c * eta_p *
                               (2.0 + 2.0 * c2 + c2 * eta_c * eta_p);
  const double den = 6.0 + 3.0 * c2 * (2.0 * c2 * eta_p * eta_p +
                                       eta_p * eta_p + 1.0);
  return num / den;
}

}  // namespace

double closed_fidelity(int receivers, const std::vector<double>& lambdas) {
  check_lambdas(lambdas);
  return attenuated(optimal_prefactor(receivers), lambdas);
}

double closed_fidelity_eta(EtaCase c, const DisentangleParams& params,
                           const std::vector<double>& lambdas) {
  check_lambdas(lambdas);
  params.validate(static_cast<int>(params.eta_C.size()));
  if (params.eta_C.size() != 2)
    throw std::invalid_argument("eta closed forms are for two receivers");
  if (params.eta_A != 1.0)
    throw std::invalid_argument("no closed form for eta_A != 1");
  const double eP = params.eta_P;
  const double e1 = params.eta_C[0];
  const double e2 = params.eta_C[1];
  switch (c) {
    case EtaCase::port:
      if (e1 != 1.0 || e2 != 1.0)
        throw std::invalid_argument("port case requires eta_C = 1");
      return attenuated(port_prefactor(eP), lambdas);
    case EtaCase::receivers_equal:
      if (eP != 1.0 || e1 != e2)
        throw std::invalid_argument(
            "receivers_equal case requires eta_P = 1 and equal eta_C");
      return attenuated(unequal_receiver_prefactor(e1, e1), lambdas);
    case EtaCase::receivers_unequal:
      if (eP != 1.0)
        throw std::invalid_argument("receivers_unequal case requires eta_P = 1");
      return attenuated(unequal_receiver_prefactor(e1, e2), lambdas);
    case EtaCase::port_and_receivers:
      if (e1 != e2)
        throw std::invalid_argument(
            "port_and_receivers case requires equal eta_C");
      return attenuated(port_receiver_prefactor(e1, eP), lambdas);
  }
  throw std::invalid_argument("unknown eta case");
}

double receiver_prefactor(int receivers, const DisentangleParams& etas,
                          int receiver_index) {
  etas.validate(receivers);
  if (receiver_index < 1 || receiver_index > receivers)
    throw std::invalid_argument("receiver index out of range");
  if (etas.is_optimal()) return optimal_prefactor(receivers);
  if (receivers != 2)
    throw std::invalid_argument("eta closed forms exist only for M = 2");
  if (etas.eta_A != 1.0)
    throw std::invalid_argument("no closed form for eta_A != 1");
  const double eP = etas.eta_P;
  const double e_self = etas.eta_C[static_cast<std::size_t>(receiver_index - 1)];
  const double e_other = etas.eta_C[static_cast<std::size_t>(2 - receiver_index)];
  if (eP == 1.0) return unequal_receiver_prefactor(e_self, e_other);
  if (e_self == 1.0 && e_other == 1.0) return port_prefactor(eP);
  if (e_self == e_other) return port_receiver_prefactor(e_self, eP);
  throw std::invalid_argument(
      "no closed form for combined port and unequal-receiver etas");
}

double min_lambda(double target_f, double prefactor) {
  if (!(prefactor > 0.0))
    throw std::domain_error("min_lambda requires a positive prefactor");
  if (!(target_f > 0.5))
    throw std::domain_error("target fidelity must exceed 1/2");
  return (target_f - 0.5) / prefactor;
}

ManResult man(const ScenarioConfig& cfg) {
  if (!(cfg.f_min > 0.5))
    throw std::domain_error("f_min must exceed 1/2");
  double pref = receiver_prefactor(cfg.receivers, cfg.etas, 1);
  ManResult out;
  for (int round = 0; round < 10000; ++round) {
    if (pref <= 0.0) {
      out.first_invalid_lambda = std::numeric_limits<double>::infinity();
      break;
    }
    const double lam = min_lambda(cfg.f_min, pref);
    // 1 + epsilon guards the exact-boundary case where the division lands
    // an ulp above 1.
    if (lam > 1.0 + 1e-12) {
      out.first_invalid_lambda = lam;
      break;
    }
    out.lambda_schedule.push_back(std::min(lam, 1.0));
    pref *= p_kernel(std::min(lam, 1.0));
  }
  out.man = static_cast<int>(out.lambda_schedule.size());
  return out;
}

namespace {

// Largest x in [lo,hi] with pred(x) true, assuming pred is a downward step.
double bisect_step(const std::function<bool(double)>& pred, double lo,
                   double hi) {
  for (int it = 0; it < 80 && hi - lo > 1e-9; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

int man_for_prefactor(double f_min, double pref) {
  int n = 0;
  while (pref > 0.0) {
    const double lam = (f_min - 0.5) / pref;
    if (lam > 1.0 + 1e-12) break;
    ++n;
    pref *= p_kernel(std::min(lam, 1.0));
  }
  return n;
}

}  // namespace

std::vector<double> man_boundary(BoundaryFamily family) {
  const double f_l = 0.67;
  switch (family) {
    case BoundaryFamily::fidelity_floor: {
      auto man_at = [](double f) {
        return man_for_prefactor(f, optimal_prefactor(2));
      };
      return {
          bisect_step([&](double f) { return man_at(f) >= 3; }, 2.0 / 3.0, 0.72),
          bisect_step([&](double f) { return man_at(f) >= 2; }, 0.70, 0.80),
      };
    }
    case BoundaryFamily::eta_port: {
      auto man_at = [&](double e) {
        return man_for_prefactor(f_l, port_prefactor(e));
      };
      return {
          bisect_step([&](double e) { return man_at(e) < 3; }, 0.3, 1.0),
          bisect_step([&](double e) { return man_at(e) < 2; }, 0.1, 0.9),
      };
    }
    case BoundaryFamily::eta_receivers: {
      auto man_at = [&](double e) {
        return man_for_prefactor(f_l, unequal_receiver_prefactor(e, e));
      };
      return {
          bisect_step([&](double e) { return man_at(e) < 3; }, 0.3, 1.0),
          bisect_step([&](double e) { return man_at(e) < 2; }, 0.1, 0.9),
      };
    }
  }
  throw std::invalid_argument("unknown boundary family");
}

OutputTable figure_data(FigureId id, int grid) {
  if (grid < 2) throw std::domain_error("grid must be >= 2");
  OutputTable t;
  const double f_lo = 2.0 / 3.0;
  const double f_hi = 5.0 / 6.0;
  auto lerp = [](double a, double b, int i, int n) {
    return i == n - 1 ? b : a + (b - a) * i / (n - 1);
  };
  switch (id) {
    case FigureId::fig2: {
      t.headers = {"f_l", "man"};
      for (int i = 0; i < grid; ++i) {
        const double f = lerp(f_lo + 1e-6, f_hi, i, grid);
        t.rows.push_back(
            {f, static_cast<double>(man_for_prefactor(f, 1.0 / 3.0))});
      }
      return t;
    }
    case FigureId::fig3: {
      t.headers = {"f1", "f2_sharp", "ln_p_c1", "delta_ln"};
      for (int i = 0; i < grid; ++i) {
        const double f1 = lerp(f_lo, f_hi, i, grid);
        const double lam1 = 3.0 * f1 - 1.5;
        const double f2 = 0.5 + p_kernel(lam1) / 3.0;
        const double ln_pc1 =
            ln_recycled_closed(1, f1, std::nullopt, LnSide::P_C1);
        const double ln_pacc =
            ln_recycled_closed(1, f1, std::nullopt, LnSide::P_ACC);
        // LN(P:A) of the recycled channel is 0, so the pairwise sum is
        // twice the symmetric P:C term.
        t.rows.push_back({f1, f2, ln_pc1, ln_pacc - 2.0 * ln_pc1});
      }
      return t;
    }
    case FigureId::fig4a:
    case FigureId::fig4b: {
      t.headers = (id == FigureId::fig4a)
                      ? std::vector<std::string>{"f1", "f2", "f3_sharp"}
                      : std::vector<std::string>{"f1", "f2", "ln_p_c1"};
      for (int i = 0; i < grid; ++i) {
        // Stay 1e-6 below f1 = 5/6, where the kernel vanishes and the
        // round-2 forms lose precision to cancellation.
        const double f1 = lerp(f_lo, f_hi - 1e-6, i, grid);
        const double p1 = p_kernel(3.0 * f1 - 1.5);
        for (int j = 0; j < grid; ++j) {
          // f2 sweeps the reachable window (lambda2 from ~0 to 1).
          const double f2 = lerp(0.5 + 1e-6 * p1, 0.5 + p1 / 3.0, j, grid);
          if (id == FigureId::fig4a) {
            const double lam2 =
                std::clamp((f2 - 0.5) * 3.0 / p1, 0.0, 1.0);
            t.rows.push_back({f1, f2, 0.5 + p1 * p_kernel(lam2) / 3.0});
          } else {
            t.rows.push_back(
                {f1, f2, ln_recycled_closed(2, f1, f2, LnSide::P_C1)});
          }
        }
      }
      return t;
    }
    case FigureId::fig5: {
      t.headers = {"eta", "man_port", "man_receiver"};
      for (int i = 0; i < grid; ++i) {
        const double e = lerp(0.0, 1.0, i, grid);
        t.rows.push_back(
            {e,
             static_cast<double>(man_for_prefactor(0.67, port_prefactor(e))),
             static_cast<double>(
                 man_for_prefactor(0.67, unequal_receiver_prefactor(e, e)))});
      }
      return t;
    }
  }
  throw std::invalid_argument("unknown figure id");
}

}  // namespace teleclone
