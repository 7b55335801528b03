#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "teleclone/linalg.hpp"

namespace teleclone {

/// A:B split of a layout; the two sides must be disjoint and cover it.
struct Bipartition {
  std::set<std::string> side_a;
  std::set<std::string> side_b;
};

/// Nodal-observer query for the monogamy score: LN(nodal : rest) minus the
/// sum of pairwise LNs to each listed party or group.
struct MonogamyQuery {
  std::string nodal;
  std::vector<std::set<std::string>> others;
};

/// N = (||rho^{Gamma_A}|| - 1)/2, computed from the Hermitian spectrum of
/// the partial transpose (sum of absolute negative eigenvalues).
double negativity(const DensityMatrix& rho, const Bipartition& bip);

/// LN = log2 ||rho^Gamma|| = log2(2N + 1).
double log_negativity(const DensityMatrix& rho, const Bipartition& bip);

double monogamy_score(const DensityMatrix& rho, const MonogamyQuery& q);

enum class LnSide { P_C1, P_ACC };

/// Closed-form LN of the all-refuse recycled M=2 channel, as a function of
/// the round fidelities. Round 1 needs f1 in [2/3, 5/6]; round 2
/// additionally needs f2 reachable given f1. Clamped at zero where the
/// log argument would fall below 1.
double ln_recycled_closed(int round, double f1, std::optional<double> f2,
                          LnSide which);

}  // namespace teleclone
