#pragma once

#include <optional>
#include <vector>

#include "wiretap/problem.hpp"

namespace wiretap {

/// Per-antenna powers P_m = |w_m|^2 for the all-diagonal case.
struct PowerAllocation {
  std::vector<double> power;
  double total = 0.0;
};

/// Relative off-diagonal tolerance for routing an instance to the LP.
inline constexpr double kDiagonalTol = 1e-12;

bool all_diagonal(const WiretapProblem& p, double rel_tol = kDiagonalTol);

class NotDiagonal : public std::invalid_argument {
 public:
  explicit NotDiagonal(const std::string& what) : std::invalid_argument(what) {}
};

/// Minimises sum P_m subject to sum P_m <= P_T, sum P_m H_k^mm >= a,
/// sum P_m Z_j^mm <= b, P_m >= 0. Returns nullopt when the LP is infeasible.
/// Throws NotDiagonal if any covariance has off-diagonal mass.
std::optional<PowerAllocation> solve_diagonal(const WiretapProblem& p, const ConstraintThresholds& t);

/// w = [sqrt(P_1), ..., sqrt(P_N)]^T.
ComplexVector allocation_to_beamformer(const PowerAllocation& alloc);

}  // namespace wiretap
