#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wiretap/problem.hpp"

namespace wiretap {

/// min Tr(W)  s.t.  W >= 0,  Tr(W) <= budget,
///                  Tr(W A_k) >= floor_k,  Tr(W B_j) <= ceiling_j.
/// Constraints with an infinite ceiling are omitted.
struct TraceConstraintSet {
  double power_budget = 0.0;
  std::vector<ComplexMatrix> user_mats;
  std::vector<double> floors;
  std::vector<ComplexMatrix> eve_mats;
  std::vector<double> ceilings;

  Eigen::Index dim() const;
};

/// Statistical mode uses H_k and Z_j directly; perfect user CSI replaces each
/// H_k by h_k h_k* (channel vectors use the convention gain = |h* w|^2).
TraceConstraintSet build_constraints(const WiretapProblem& p, const ConstraintThresholds& t,
                                     const CsiMode& mode = StatisticalCsi{});

/// Lagrange multipliers of the relaxed problem. `Lambda` is the matrix
/// multiplier (1 + lambda) I - sum mu_k H_k + sum nu_j Z_j.
struct DualVariables {
  double lambda = 0.0;
  std::vector<double> mu;
  std::vector<double> nu;
  ComplexMatrix Lambda;
};

ComplexMatrix stationarity_matrix(const TraceConstraintSet& cs, double lambda, const std::vector<double>& mu,
                                  const std::vector<double>& nu);

enum class SdpStatus { Optimal, Infeasible, MaxIterations };
std::string to_string(SdpStatus s);

struct SdpOptions {
  /// Stop once the duality gap is below gap_tol * max(Tr W, gap_floor).
  double gap_tol = 1e-7;
  double gap_floor = 1e-4;
  int max_newton_steps = 4000;
  /// Barrier parameter growth per outer iteration.
  double barrier_growth = 10.0;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::MaxIterations;
  ComplexMatrix W;
  double objective = 0.0;       // Tr(W)
  double dual_objective = 0.0;  // sum mu a - sum nu b - lambda P_T
  DualVariables duals;          // on Infeasible: the improving dual ray
  int newton_steps = 0;
};

SdpSolution solve_trace_sdp(const TraceConstraintSet& cs, const SdpOptions& opts = {});

SdpSolution solve_rank_relaxed(const WiretapProblem& p, const ConstraintThresholds& t,
                               const CsiMode& mode = StatisticalCsi{}, const SdpOptions& opts = {});

/// Unit eigenvector of the largest eigenvalue, first nonzero entry made real
/// and non-negative. Throws std::invalid_argument on a zero matrix.
ComplexVector extract_principal_direction(const ComplexMatrix& W);

/// Closed-form min P s.t. 0 <= P <= P_T, P q_k >= a, P z_j <= b with
/// q_k = w0* A_k w0, z_j = w0* B_j w0. nullopt when infeasible.
std::optional<double> power_rescale(const TraceConstraintSet& cs, const ComplexVector& w0);
std::optional<double> power_rescale(const WiretapProblem& p, const ConstraintThresholds& t,
                                    const ComplexVector& w0);

/// Relative eigenvalue threshold separating a rank-1 relaxed solution from round-off.
inline constexpr double kRankTol = 1e-6;

enum class SolveStatus { Optimal, Infeasible, InfeasibleAtRank1, NumericalFailure };
std::string to_string(SolveStatus s);

struct BeamformerSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  ComplexVector w;
  double power = 0.0;
  ComplexMatrix W;
  bool rank1_exact = false;
  std::size_t rank = 0;
  DualVariables duals;
  CsiMode mode;
  ConstraintThresholds thresholds;
  double sdp_objective = 0.0;
  int newton_steps = 0;

  bool feasible() const { return status == SolveStatus::Optimal; }
};

/// Thresholds, relaxed SDP, then either w = sqrt(lambda_max) w0 when W is
/// numerically rank one, or principal direction plus power rescale.
BeamformerSolution solve_general(const WiretapProblem& p, const RatePair& r, const CsiMode& mode = StatisticalCsi{},
                                 const RateModel& model = RateModel::gaussian(), const SdpOptions& opts = {});

/// Same pipeline from precomputed thresholds.
BeamformerSolution solve_with_thresholds(const WiretapProblem& p, const ConstraintThresholds& t,
                                         const CsiMode& mode = StatisticalCsi{}, const SdpOptions& opts = {});

}  // namespace wiretap
