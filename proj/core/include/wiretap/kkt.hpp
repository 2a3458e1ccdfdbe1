#pragma once

#include <string>
#include <vector>

#include "wiretap/sdp.hpp"

namespace wiretap {

/// Residuals of the KKT system of the rank-relaxed problem. Matrix and
/// complementarity residuals are scaled by max(1, ||W||_F) and max(1, Tr W).
struct KktReport {
  bool primal_feasible = false;
  double primal_violation = 0.0;          // worst relative constraint or PSD violation
  double dual_violation = 0.0;            // most negative scalar multiplier, as a positive number
  double compl_slack_W = 0.0;             // ||Lambda W||_F relative to ||W||
  double slack_power = 0.0;               // |lambda (Tr W - P_T)|
  std::vector<double> slack_users;        // |mu_k (a - Tr(H_k W))|
  std::vector<double> slack_eaves;        // |nu_j (Tr(Z_j W) - b)|
  double stationarity_min_eig = 0.0;      // min eig of (1+lambda)I - sum mu H + sum nu Z
  double scalar_identity = 0.0;           // |(1+lambda)Tr W - sum mu a + sum nu b|, relative
  std::size_t rank_W = 0;
  std::size_t rank_muH = 0;

  double max_residual() const;
  bool passes(double tol) const;
};

KktReport check_kkt(const TraceConstraintSet& cs, const ComplexMatrix& W, const DualVariables& duals, double tol,
                    double rank_tol = kRankTol);
KktReport check_kkt(const WiretapProblem& p, const ConstraintThresholds& t, const ComplexMatrix& W,
                    const DualVariables& duals, double tol, double rank_tol = kRankTol);

/// rank(W) <= rank(sum mu_k H_k), sum mu_k > 0 and the scalar identity.
struct RankBoundReport {
  bool vacuous = false;  // W numerically zero: nothing to certify
  std::size_t rank_W = 0;
  std::size_t rank_muH = 0;
  double mu_sum = 0.0;
  double scalar_identity = 0.0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

RankBoundReport rank_bound_check(const TraceConstraintSet& cs, const ComplexMatrix& W, const DualVariables& duals,
                                 double rank_tol = kRankTol, double tol = 1e-5);
RankBoundReport rank_bound_check(const WiretapProblem& p, const ConstraintThresholds& t, const ComplexMatrix& W,
                                 const DualVariables& duals, double rank_tol = kRankTol, double tol = 1e-5);

}  // namespace wiretap
