#include "wiretap/kkt.hpp"

#include <algorithm>
#include <cmath>

namespace wiretap {

namespace {

void require_shapes(const TraceConstraintSet& cs, const ComplexMatrix& W, const DualVariables& duals) {
  if (W.rows() != cs.dim() || W.cols() != cs.dim()) throw std::invalid_argument("kkt: W has wrong dimension");
  if (duals.mu.size() != cs.user_mats.size() || duals.nu.size() != cs.eve_mats.size()) {
    throw std::invalid_argument("kkt: multiplier counts do not match the constraint set");
  }
}

double scalar_identity_residual(const TraceConstraintSet& cs, double trace_w, const DualVariables& d) {
  double value = (1.0 + d.lambda) * trace_w;
  double scale = std::abs(value);
  for (std::size_t k = 0; k < d.mu.size(); ++k) {
    value -= d.mu[k] * cs.floors[k];
    scale = std::max(scale, std::abs(d.mu[k] * cs.floors[k]));
  }
  for (std::size_t j = 0; j < d.nu.size(); ++j) value += d.nu[j] * cs.ceilings[j];
  return std::abs(value) / std::max(1.0, scale);
}

ComplexMatrix weighted_user_sum(const TraceConstraintSet& cs, const DualVariables& d) {
  ComplexMatrix sum = ComplexMatrix::Zero(cs.dim(), cs.dim());
  for (std::size_t k = 0; k < cs.user_mats.size(); ++k) sum += d.mu[k] * cs.user_mats[k];
  return sum;
}

}  // namespace

double KktReport::max_residual() const {
  double r = std::max({primal_violation, dual_violation, compl_slack_W, slack_power, scalar_identity,
                       std::max(0.0, -stationarity_min_eig)});
  for (double s : slack_users) r = std::max(r, s);
  for (double s : slack_eaves) r = std::max(r, s);
  return r;
}

bool KktReport::passes(double tol) const { return primal_feasible && max_residual() <= tol; }

KktReport check_kkt(const TraceConstraintSet& cs, const ComplexMatrix& W, const DualVariables& duals, double tol,
                    double rank_tol) {
  require_shapes(cs, W, duals);
  KktReport rep;
  const double trace_w = W.trace().real();
  const double w_scale = std::max(1.0, W.norm());
  const double p_scale = std::max(1.0, trace_w);

  // Primal feasibility: W PSD, power budget, user floors, eavesdropper ceilings.
  double viol = std::max(0.0, -linalg::min_eigenvalue(W)) / w_scale;
  viol = std::max(viol, (trace_w - cs.power_budget) / std::max(1.0, cs.power_budget));
  std::vector<double> user_traces, eve_traces;
  for (std::size_t k = 0; k < cs.user_mats.size(); ++k) {
    user_traces.push_back(linalg::trace_inner(W, cs.user_mats[k]));
    viol = std::max(viol, (cs.floors[k] - user_traces.back()) / std::max(1.0, cs.floors[k]));
  }
  for (std::size_t j = 0; j < cs.eve_mats.size(); ++j) {
    eve_traces.push_back(linalg::trace_inner(W, cs.eve_mats[j]));
    viol = std::max(viol, (eve_traces.back() - cs.ceilings[j]) / std::max(1.0, cs.ceilings[j]));
  }
  rep.primal_violation = std::max(0.0, viol);
  rep.primal_feasible = rep.primal_violation <= tol;

  double worst_dual = std::min(0.0, duals.lambda);
  for (double m : duals.mu) worst_dual = std::min(worst_dual, m);
  for (double n : duals.nu) worst_dual = std::min(worst_dual, n);
  rep.dual_violation = -worst_dual;

  // Lambda from stationarity must be PSD and annihilate W.
  const ComplexMatrix lam = stationarity_matrix(cs, duals.lambda, duals.mu, duals.nu);
  rep.stationarity_min_eig = linalg::min_eigenvalue(lam);
  rep.compl_slack_W = (lam * W).norm() / w_scale;

  rep.slack_power = std::abs(duals.lambda * (trace_w - cs.power_budget)) / p_scale;
  for (std::size_t k = 0; k < user_traces.size(); ++k) {
    rep.slack_users.push_back(std::abs(duals.mu[k] * (cs.floors[k] - user_traces[k])) / p_scale);
  }
  for (std::size_t j = 0; j < eve_traces.size(); ++j) {
    rep.slack_eaves.push_back(std::abs(duals.nu[j] * (eve_traces[j] - cs.ceilings[j])) / p_scale);
  }
  rep.scalar_identity = scalar_identity_residual(cs, trace_w, duals);
  rep.rank_W = linalg::numerical_rank(W, rank_tol);
  rep.rank_muH = linalg::numerical_rank(weighted_user_sum(cs, duals), rank_tol);
  return rep;
}

KktReport check_kkt(const WiretapProblem& p, const ConstraintThresholds& t, const ComplexMatrix& W,
                    const DualVariables& duals, double tol, double rank_tol) {
  return check_kkt(build_constraints(p, t), W, duals, tol, rank_tol);
}

RankBoundReport rank_bound_check(const TraceConstraintSet& cs, const ComplexMatrix& W, const DualVariables& duals,
                                 double rank_tol, double tol) {
  require_shapes(cs, W, duals);
  RankBoundReport rep;
  // The bound assumes W != 0; a numerically zero W passes vacuously.
  const double lmax = linalg::max_eigenvalue(W);
  if (!(lmax > 1e-12 * std::max(1.0, cs.power_budget))) {
    rep.vacuous = true;
    return rep;
  }
  rep.rank_W = linalg::numerical_rank(W, rank_tol);
  rep.rank_muH = linalg::numerical_rank(weighted_user_sum(cs, duals), rank_tol);
  for (double m : duals.mu) rep.mu_sum += m;
  rep.scalar_identity = scalar_identity_residual(cs, W.trace().real(), duals);

  if (rep.rank_W > rep.rank_muH) {
    rep.violations.push_back("rank(W) = " + std::to_string(rep.rank_W) + " exceeds rank(sum mu_k H_k) = " +
                             std::to_string(rep.rank_muH));
  }
  if (!(rep.mu_sum > 0.0)) rep.violations.push_back("all user multipliers are zero with W != 0");
  if (rep.scalar_identity > tol) {
    rep.violations.push_back("scalar identity residual " + std::to_string(rep.scalar_identity) + " above tolerance");
  }
  return rep;
}

RankBoundReport rank_bound_check(const WiretapProblem& p, const ConstraintThresholds& t, const ComplexMatrix& W,
                                 const DualVariables& duals, double rank_tol, double tol) {
  return rank_bound_check(build_constraints(p, t), W, duals, rank_tol, tol);
}

}  // namespace wiretap
