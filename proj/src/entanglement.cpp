#include "teleclone/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace teleclone {

namespace {

void validate_bipartition(const DensityMatrix& rho, const Bipartition& bip) {
  if (bip.side_a.empty() || bip.side_b.empty())
    throw std::invalid_argument("bipartition sides must be nonempty");
  for (const auto& n : bip.side_a)
    if (bip.side_b.count(n))
      throw std::invalid_argument("bipartition sides overlap at " + n);
  std::set<std::string> all = bip.side_a;
  all.insert(bip.side_b.begin(), bip.side_b.end());
  auto names = rho.layout.names();
  if (all != std::set<std::string>(names.begin(), names.end()))
    throw std::invalid_argument("bipartition must cover the full layout");
}

}  // namespace

double negativity(const DensityMatrix& rho, const Bipartition& bip) {
  validate_bipartition(rho, bip);
  ComplexMatrix pt = partial_transpose(rho, bip.side_a);
  double neg = 0.0;
  for (double ev : herm_eig(pt).eigenvalues)
    if (ev < 0.0) neg -= ev;
  return neg;
}

double log_negativity(const DensityMatrix& rho, const Bipartition& bip) {
  return std::log2(2.0 * negativity(rho, bip) + 1.0);
}

double monogamy_score(const DensityMatrix& rho, const MonogamyQuery& q) {
  auto names = rho.layout.names();
  std::set<std::string> rest(names.begin(), names.end());
  if (!rest.count(q.nodal))
    throw std::invalid_argument("nodal slot not in layout");
  rest.erase(q.nodal);
  double score = log_negativity(rho, {{q.nodal}, rest});
  for (const auto& group : q.others) {
    if (group.count(q.nodal))
      throw std::invalid_argument("nodal slot listed among others");
    std::set<std::string> discard = rest;
    for (const auto& n : group) {
      if (!rest.count(n))
        throw std::invalid_argument("unknown slot in monogamy query: " + n);
      discard.erase(n);
    }
    DensityMatrix reduced = partial_trace(rho, discard);
    score -= log_negativity(reduced, {{q.nodal}, group});
  }
  return score;
}

namespace {

// X1 = sqrt(2.5-3f1)*sqrt(9f1-3.5); defined for f1 in [7/18, 5/6].
double x1_of(double f1) {
  const double a = 2.5 - 3.0 * f1;
  const double b = 9.0 * f1 - 3.5;
  if (a < -1e-12 || b < -1e-12)
    throw std::domain_error("f1 outside [2/3, 5/6]");
  return std::sqrt(std::max(a, 0.0)) * std::sqrt(std::max(b, 0.0));
}

double clamp_log(double bracket, double pref) {
  return std::log2(std::max(1.0 - pref * bracket, 1.0));
}

}  // namespace

double ln_recycled_closed(int round, double f1, std::optional<double> f2,
                          LnSide which) {
  if (f1 < 2.0 / 3.0 - 1e-12 || f1 > 5.0 / 6.0 + 1e-12)
    throw std::domain_error("f1 must lie in [2/3, 5/6]");
  const double X1 = x1_of(f1);
  if (round == 1) {
    const double shift = (which == LnSide::P_C1) ? 0.5 : -0.5;
    const double pref = (which == LnSide::P_C1) ? 1.0 / 6.0 : 1.0 / 4.0;
    const double rad = (2.5 - 3.0 * f1) * (3.0 * f1 - 0.5 + X1);
    const double bracket = shift + 3.0 * f1 - X1 -
                           2.0 * std::sqrt(2.0) * std::sqrt(std::max(rad, 0.0));
    return clamp_log(bracket, pref);
  }
  if (round != 2) throw std::domain_error("round must be 1 or 2");
  if (!f2) throw std::domain_error("round 2 requires f2");
  // P(f1) = 1/4 (5-6f1 + sqrt((5-6f1)(18f1-7))) equals the recycling
  // kernel P(lambda1) with lambda1 = 3f1 - 3/2.
  const double pf1 =
      0.25 * (5.0 - 6.0 * f1 +
              std::sqrt(std::max((5.0 - 6.0 * f1) * (18.0 * f1 - 7.0), 0.0)));
  if (pf1 <= 0.0)
    throw std::domain_error("round-2 LN undefined at f1 = 5/6 (kernel is 0)");
  const double x3 = (3.0 * *f2 - 1.5) / pf1;
  // The 1e-9 margin absorbs the cancellation error in pf1 when f1 sits
  // close to 5/6 and the kernel is tiny.
  if (x3 < -1e-9 || x3 > 1.0 + 1e-9)
    throw std::domain_error("f2 outside the reachable range for this f1");
  const double x3c = std::clamp(x3, 0.0, 1.0);
  const double x2 = std::sqrt(1.0 - x3c) * std::sqrt(1.0 + 3.0 * x3c);
  const double shift = (which == LnSide::P_C1) ? 3.5 : 1.5;
  const double pref = (which == LnSide::P_C1) ? 1.0 / 12.0 : 1.0 / 8.0;
  const double rad = (3.0 * f1 - 2.5) * (3.0 * f1 - 0.5 + X1) * (x3c - 1.0) *
                     (1.0 + x2 + x3c);
  const double bracket = shift + 3.0 * f1 - X1 +
                         (3.0 * f1 - 2.5 - X1) * (x2 - x3c) -
                         4.0 * std::sqrt(std::max(rad, 0.0));
  return clamp_log(bracket, pref);
}

}  // namespace teleclone
