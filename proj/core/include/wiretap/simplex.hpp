#pragma once

#include <vector>

#include <Eigen/Dense>

namespace wiretap::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };

/// min cost'x  s.t.  rows x (<=|>=|=) rhs,  x >= 0.
struct LinearProgram {
  Eigen::VectorXd cost;
  Eigen::MatrixXd rows;
  std::vector<Sense> senses;
  Eigen::VectorXd rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  /// Phase-one residual (sum of artificial variables); > 0 certifies infeasibility.
  double infeasibility = 0.0;
};

/// Dense two-phase tableau simplex with Bland's rule. Intended for the small
/// problems in this library (tens of variables and constraints).
LpResult solve(const LinearProgram& lp, double tol = 1e-10);

}  // namespace wiretap::lp
