#pragma once

#include <string>
#include <vector>

#include "wiretap/lp_diagonal.hpp"
#include "wiretap/sdp.hpp"

namespace wiretap {

enum class SolverBackend { Auto, Sdp, Lp };
SolverBackend parse_backend(const std::string& name);
std::string to_string(SolverBackend b);

struct PointOptions {
  CsiMode mode = StatisticalCsi{};
  RateModel model = RateModel::gaussian();
  SolverBackend backend = SolverBackend::Auto;
  SdpOptions sdp;
};

/// Minimum-power beamformer for one (R_D, R_s) pair. Auto routes all-diagonal
/// statistical instances to the LP and everything else to the SDP pipeline.
struct PointOutcome {
  SolveStatus status = SolveStatus::NumericalFailure;
  double power = 0.0;
  bool rank1 = false;
  ComplexVector w;
  SolverBackend backend = SolverBackend::Sdp;

  bool feasible() const { return status == SolveStatus::Optimal; }
};

PointOutcome solve_point(const WiretapProblem& p, const RatePair& r, const PointOptions& opts = {});

enum class RowStatus { Feasible, Infeasible, NumericalFailure };
std::string to_string(RowStatus s);

struct SweepRow {
  double code_rate = 0.0;
  double max_secrecy_rate = 0.0;
  double min_power = 0.0;  // power at max_secrecy_rate; NaN unless feasible
  bool rank1 = false;
  RowStatus status = RowStatus::Infeasible;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

struct SweepOptions {
  PointOptions point;
  double rate_tol = 1e-3;
  unsigned threads = 0;
};

/// Inclusive ascending grid min, min + step, ... <= max (+ round-off slack).
std::vector<double> rate_grid(double min, double max, double step);

/// For every R_D, bisects R_s on [0, R_D] for the largest feasible secrecy
/// rate within rate_tol. Rows are ordered by R_D whatever the worker count.
SweepResult sweep_region(const WiretapProblem& p, const std::vector<double>& code_rates,
                         const SweepOptions& opts = {});

/// rd,rs_max,min_power,rank1,status with 9 significant digits.
std::string to_csv(const SweepResult& result);

/// Largest feasible R_D (at R_s = 0) located by bisection between a feasible
/// and an infeasible code rate.
struct RegionEdge {
  double feasible_rate = 0.0;
  double infeasible_rate = 0.0;
  PointOutcome at_edge;
};

RegionEdge find_region_edge(const WiretapProblem& p, double feasible_rate, double infeasible_rate, double tol,
                            const PointOptions& opts = {});

}  // namespace wiretap
