#include "wiretap/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "wiretap/parallel.hpp"

namespace wiretap {

SolverBackend parse_backend(const std::string& name) {
  if (name == "auto") return SolverBackend::Auto;
  if (name == "sdp") return SolverBackend::Sdp;
  if (name == "lp") return SolverBackend::Lp;
  throw std::invalid_argument("unknown solver backend '" + name + "' (expected auto, sdp or lp)");
}

std::string to_string(SolverBackend b) {
  switch (b) {
    case SolverBackend::Auto: return "auto";
    case SolverBackend::Sdp: return "sdp";
    case SolverBackend::Lp: return "lp";
  }
  return "unknown";
}

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Feasible: return "feasible";
    case RowStatus::Infeasible: return "infeasible";
    case RowStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

PointOutcome solve_point(const WiretapProblem& p, const RatePair& r, const PointOptions& opts) {
  SolverBackend backend = opts.backend;
  if (backend == SolverBackend::Auto) {
    backend = (!is_perfect(opts.mode) && all_diagonal(p)) ? SolverBackend::Lp : SolverBackend::Sdp;
  }
  if (backend == SolverBackend::Lp && is_perfect(opts.mode)) {
    throw std::invalid_argument("the LP backend only handles statistical CSI");
  }

  PointOutcome out;
  out.backend = backend;
  const ConstraintThresholds t = thresholds_for_mode(p, r, opts.model, opts.mode);

  if (backend == SolverBackend::Lp) {
    const auto alloc = solve_diagonal(p, t);
    if (!alloc) {
      out.status = SolveStatus::Infeasible;
      return out;
    }
    out.status = SolveStatus::Optimal;
    out.power = alloc->total;
    out.w = allocation_to_beamformer(*alloc);
    out.rank1 = true;
    return out;
  }

  const BeamformerSolution s = solve_with_thresholds(p, t, opts.mode, opts.sdp);
  out.status = s.status;
  out.power = s.power;
  out.w = s.w;
  out.rank1 = s.rank1_exact;
  return out;
}

std::vector<double> rate_grid(double min, double max, double step) {
  if (!(std::isfinite(min) && std::isfinite(max) && std::isfinite(step))) {
    throw std::invalid_argument("rate grid bounds must be finite");
  }
  if (!(step > 0.0)) throw std::invalid_argument("rate grid step must be positive");
  if (min < 0.0 || max < min) throw std::invalid_argument("rate grid needs 0 <= min <= max");
  const auto n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = min + static_cast<double>(i) * step;
  return grid;
}

namespace {

SweepRow sweep_row(const WiretapProblem& p, double rd, const SweepOptions& opts) {
  SweepRow row;
  row.code_rate = rd;
  row.min_power = std::numeric_limits<double>::quiet_NaN();

  // A code rate beyond the alphabet's capacity has no feasible secrecy rate.
  auto probe = [&](double rs) {
    try {
      return solve_point(p, {rd, rs}, opts.point);
    } catch (const UnachievableRate&) {
      PointOutcome o;
      o.status = SolveStatus::Infeasible;
      return o;
    }
  };
  auto failed = [](const PointOutcome& o) { return o.status == SolveStatus::NumericalFailure; };

  PointOutcome best = probe(0.0);
  if (failed(best)) {
    row.status = RowStatus::NumericalFailure;
    return row;
  }
  if (!best.feasible()) {
    row.status = RowStatus::Infeasible;
    return row;
  }

  double lo = 0.0;
  double hi = rd;
  if (rd > 0.0) {
    PointOutcome top = probe(rd);
    if (failed(top)) {
      row.status = RowStatus::NumericalFailure;
      return row;
    }
    if (top.feasible()) {
      lo = rd;
      best = top;
    }
  }
  while (lo < hi && hi - lo > opts.rate_tol) {
    const double mid = 0.5 * (lo + hi);
    PointOutcome o = probe(mid);
    if (failed(o)) {
      row.status = RowStatus::NumericalFailure;
      return row;
    }
    if (o.feasible()) {
      lo = mid;
      best = std::move(o);
    } else {
      hi = mid;
    }
  }

  row.status = RowStatus::Feasible;
  row.max_secrecy_rate = lo;
  row.min_power = best.power;
  row.rank1 = best.rank1;
  return row;
}

}  // namespace

SweepResult sweep_region(const WiretapProblem& p, const std::vector<double>& code_rates, const SweepOptions& opts) {
  require_valid(p);
  if (!(opts.rate_tol > 0.0)) throw std::invalid_argument("rate_tol must be positive");
  for (std::size_t i = 0; i < code_rates.size(); ++i) {
    if (!(code_rates[i] >= 0.0) || !std::isfinite(code_rates[i])) {
      throw std::invalid_argument("code rates must be finite and non-negative");
    }
    if (i > 0 && !(code_rates[i] > code_rates[i - 1])) {
      throw std::invalid_argument("code rates must be strictly increasing");
    }
  }

  SweepResult result;
  result.rows.resize(code_rates.size());
  parallel_for(code_rates.size(), resolve_threads(opts.threads),
               [&](std::size_t i) { result.rows[i] = sweep_row(p, code_rates[i], opts); });
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::string out = "rd,rs_max,min_power,rank1,status\n";
  char buf[160];
  for (const auto& r : result.rows) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%d,", r.code_rate, r.max_secrecy_rate, r.min_power,
                  r.rank1 ? 1 : 0);
    out += buf;
    out += to_string(r.status);
    out += '\n';
  }
  return out;
}

RegionEdge find_region_edge(const WiretapProblem& p, double feasible_rate, double infeasible_rate, double tol,
                            const PointOptions& opts) {
  if (!(tol > 0.0) || !(infeasible_rate > feasible_rate)) {
    throw std::invalid_argument("find_region_edge needs feasible < infeasible and tol > 0");
  }
  RegionEdge edge;
  edge.at_edge = solve_point(p, {feasible_rate, 0.0}, opts);
  if (!edge.at_edge.feasible()) throw std::invalid_argument("lower code rate is not feasible");
  if (solve_point(p, {infeasible_rate, 0.0}, opts).feasible()) {
    throw std::invalid_argument("upper code rate is feasible");
  }
  double lo = feasible_rate;
  double hi = infeasible_rate;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    PointOutcome o = solve_point(p, {mid, 0.0}, opts);
    if (o.status == SolveStatus::NumericalFailure) throw std::runtime_error("solver failure while locating the edge");
    if (o.feasible()) {
      lo = mid;
      edge.at_edge = std::move(o);
    } else {
      hi = mid;
    }
  }
  edge.feasible_rate = lo;
  edge.infeasible_rate = hi;
  return edge;
}

}  // namespace wiretap
