#include "wiretap/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wiretap {

Eigen::Index TraceConstraintSet::dim() const {
  if (!user_mats.empty()) return user_mats.front().rows();
  if (!eve_mats.empty()) return eve_mats.front().rows();
  return 0;
}

TraceConstraintSet build_constraints(const WiretapProblem& p, const ConstraintThresholds& t, const CsiMode& mode) {
  TraceConstraintSet cs;
  cs.power_budget = p.power_budget;
  if (const auto* perfect = std::get_if<PerfectUserCsi>(&mode)) {
    if (perfect->channels.size() != p.users()) {
      throw std::invalid_argument("perfect CSI needs one channel vector per user");
    }
    for (const auto& h : perfect->channels) {
      if (static_cast<std::size_t>(h.size()) != p.antennas) {
        throw std::invalid_argument("perfect CSI channel has wrong dimension");
      }
      cs.user_mats.push_back(linalg::outer(h));
      cs.floors.push_back(t.floor);
    }
  } else {
    for (const auto& h : p.user_cov) {
      cs.user_mats.push_back(linalg::hermitianize(h));
      cs.floors.push_back(t.floor);
    }
  }
  if (std::isfinite(t.ceiling)) {
    for (const auto& z : p.eve_cov) {
      cs.eve_mats.push_back(linalg::hermitianize(z));
      cs.ceilings.push_back(t.ceiling);
    }
  }
  return cs;
}

ComplexMatrix stationarity_matrix(const TraceConstraintSet& cs, double lambda, const std::vector<double>& mu,
                                  const std::vector<double>& nu) {
  const Eigen::Index n = cs.dim();
  ComplexMatrix lam = ComplexMatrix::Identity(n, n) * (1.0 + lambda);
  for (std::size_t k = 0; k < cs.user_mats.size(); ++k) lam -= mu.at(k) * cs.user_mats[k];
  for (std::size_t j = 0; j < cs.eve_mats.size(); ++j) lam += nu.at(j) * cs.eve_mats[j];
  return lam;
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::MaxIterations: return "max-iterations";
  }
  return "unknown";
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::InfeasibleAtRank1: return "infeasible-at-rank1";
    case SolveStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

namespace {

// Dual of the relaxed problem in multiplier form: y = (lambda, mu, nu) >= 0,
// Lambda(y) = I + sum y_i A_i >= 0, maximise c'y. The dual is strictly
// feasible at small y, so we follow its log-barrier central path
//   min  -t c'y - log det Lambda(y) - sum log y_i
// and read the primal off the optimality condition W = Lambda^{-1} / t.
// Any interior y with c'y > P_T certifies primal infeasibility by weak duality.
class DualBarrier {
 public:
  explicit DualBarrier(const TraceConstraintSet& cs) : cs_(cs), n_(cs.dim()) {
    const auto identity = ComplexMatrix::Identity(n_, n_);
    mats_.push_back(identity);
    cost_.push_back(-cs.power_budget);
    for (std::size_t k = 0; k < cs.user_mats.size(); ++k) {
      mats_.push_back(-cs.user_mats[k]);
      cost_.push_back(cs.floors[k]);
    }
    for (std::size_t j = 0; j < cs.eve_mats.size(); ++j) {
      mats_.push_back(cs.eve_mats[j]);
      cost_.push_back(-cs.ceilings[j]);
    }
    m_ = static_cast<Eigen::Index>(mats_.size());
  }

  Eigen::Index multipliers() const { return m_; }

  Eigen::VectorXd initial_point() const {
    Eigen::VectorXd y(m_);
    y(0) = 1.0;
    const double users = static_cast<double>(std::max<std::size_t>(1, cs_.user_mats.size()));
    for (Eigen::Index i = 1; i < m_; ++i) {
      const linalg::RealVector ev = linalg::hermitian_eig(mats_[i]).eigenvalues;
      const double spectral = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
      const double scale = spectral > 0.0 ? spectral : 1.0;
      y(i) = 1.0 / (2.0 * users * scale);
    }
    return y;
  }

  ComplexMatrix lambda_matrix(const Eigen::VectorXd& y) const {
    ComplexMatrix lam = ComplexMatrix::Identity(n_, n_);
    for (Eigen::Index i = 0; i < m_; ++i) lam += y(i) * mats_[i];
    return lam;
  }

  double dual_objective(const Eigen::VectorXd& y) const {
    double v = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i) v += cost_[i] * y(i);
    return v;
  }

  // Fills gradient and Hessian of the barrier at y. Returns false if y is
  // outside the domain.
  bool derivatives(const Eigen::VectorXd& y, double t, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    if ((y.array() <= 0.0).any()) return false;
    Eigen::LLT<ComplexMatrix> llt(lambda_matrix(y));
    if (llt.info() != Eigen::Success) return false;
    const auto lower = llt.matrixL();
    std::vector<ComplexMatrix> scaled(m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const ComplexMatrix half = lower.solve(mats_[i]);
      scaled[i] = lower.solve(ComplexMatrix(half.adjoint()));
    }
    grad.resize(m_);
    hess.resize(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      grad(i) = -t * cost_[i] - scaled[i].trace().real() - 1.0 / y(i);
      for (Eigen::Index j = 0; j <= i; ++j) {
        const double h = scaled[i].cwiseProduct(scaled[j].conjugate()).sum().real();
        hess(i, j) = h;
        hess(j, i) = h;
      }
      hess(i, i) += 1.0 / (y(i) * y(i));
    }
    return true;
  }

  bool in_domain(const Eigen::VectorXd& y) const {
    if ((y.array() <= 0.0).any()) return false;
    Eigen::LLT<ComplexMatrix> llt(lambda_matrix(y));
    return llt.info() == Eigen::Success;
  }

  ComplexMatrix primal_estimate(const Eigen::VectorXd& y, double t) const {
    Eigen::LLT<ComplexMatrix> llt(lambda_matrix(y));
    ComplexMatrix inv = llt.solve(ComplexMatrix::Identity(n_, n_));
    return linalg::hermitianize(inv) / t;
  }

  // Lambda loses relative accuracy in its smallest eigenvalues when the
  // multipliers are large, and 1/(t lambda_k) inherits that error. The
  // eigenvectors stay accurate, so the weights on the near-null directions
  // are refitted to make y_i (Tr(A_i W) + c_i) = -1/t hold in least squares.
  ComplexMatrix refined_primal(const Eigen::VectorXd& y, double t) const {
    const ComplexMatrix raw = primal_estimate(y, t);
    const ComplexMatrix lam = lambda_matrix(y);
    const linalg::EigenDecomposition eig = linalg::hermitian_eig(lam);
    const double scale = std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> weak;
    ComplexMatrix base = ComplexMatrix::Zero(n_, n_);
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
      const ComplexVector u = eig.eigenvectors.col(k);
      if (eig.eigenvalues(k) < 1e-6 * scale) {
        weak.push_back(k);
      } else {
        base += u * u.adjoint() / (t * eig.eigenvalues(k));
      }
    }
    if (weak.empty()) return raw;

    const auto r = static_cast<Eigen::Index>(weak.size());
    Eigen::MatrixXd a(m_, r);
    Eigen::VectorXd b(m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      for (Eigen::Index c = 0; c < r; ++c) {
        const ComplexVector u = eig.eigenvectors.col(weak[c]);
        a(i, c) = y(i) * (u.adjoint() * mats_[i] * u)(0, 0).real();
      }
      b(i) = -1.0 / t - y(i) * (linalg::trace_inner(base, mats_[i]) + cost_[i]);
    }
    const Eigen::VectorXd s = a.colPivHouseholderQr().solve(b);
    if (!s.allFinite() || (s.array() < 0.0).any()) return raw;

    ComplexMatrix w = base;
    for (Eigen::Index c = 0; c < r; ++c) {
      const ComplexVector u = eig.eigenvectors.col(weak[c]);
      w += s(c) * u * u.adjoint();
    }
    auto residual = [&](const ComplexMatrix& m) {
      double worst = 0.0;
      for (Eigen::Index i = 0; i < m_; ++i) {
        worst = std::max(worst, std::abs(y(i) * (linalg::trace_inner(m, mats_[i]) + cost_[i]) + 1.0 / t));
      }
      return worst;
    };
    return residual(w) < residual(raw) ? linalg::hermitianize(w) : raw;
  }

  DualVariables unpack(const Eigen::VectorXd& y) const {
    DualVariables d;
    d.lambda = y(0);
    const auto k = static_cast<Eigen::Index>(cs_.user_mats.size());
    for (Eigen::Index i = 0; i < k; ++i) d.mu.push_back(y(1 + i));
    for (Eigen::Index i = 1 + k; i < m_; ++i) d.nu.push_back(y(i));
    d.Lambda = lambda_matrix(y);
    return d;
  }

 private:
  const TraceConstraintSet& cs_;
  Eigen::Index n_;
  Eigen::Index m_ = 0;
  std::vector<ComplexMatrix> mats_;
  std::vector<double> cost_;
};

}  // namespace

SdpSolution solve_trace_sdp(const TraceConstraintSet& cs, const SdpOptions& opts) {
  if (cs.dim() == 0) throw std::invalid_argument("solve_trace_sdp: empty constraint set");
  if (!(cs.power_budget > 0.0)) throw std::invalid_argument("solve_trace_sdp: power budget must be positive");

  DualBarrier barrier(cs);
  const double n_plus_m = static_cast<double>(cs.dim() + barrier.multipliers());
  const double certificate_level = cs.power_budget * (1.0 + 1e-9);

  SdpSolution sol;
  Eigen::VectorXd y = barrier.initial_point();
  double t = n_plus_m / cs.power_budget;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;

  auto finish_infeasible = [&]() {
    sol.status = SdpStatus::Infeasible;
    sol.W = ComplexMatrix::Zero(cs.dim(), cs.dim());
    sol.objective = 0.0;
    sol.dual_objective = barrier.dual_objective(y);
    sol.duals = barrier.unpack(y);
    return sol;
  };

  auto finish_max_iterations = [&]() {
    sol.status = SdpStatus::MaxIterations;
    sol.W = barrier.primal_estimate(y, t);
    sol.objective = sol.W.trace().real();
    sol.dual_objective = barrier.dual_objective(y);
    sol.duals = barrier.unpack(y);
    return sol;
  };

  // Centering by damped Newton; full steps once inside the quadratic region.
  // Near round-off the decrement stops shrinking, which also ends centering.
  enum class Centering { Done, OutOfSteps, Certified };
  auto center = [&](double tol) {
    double previous = std::numeric_limits<double>::infinity();
    for (;;) {
      if (sol.newton_steps >= opts.max_newton_steps) return Centering::OutOfSteps;
      if (!barrier.derivatives(y, t, grad, hess)) {
        throw std::logic_error("solve_trace_sdp: iterate left the dual domain");
      }
      const Eigen::VectorXd step = -hess.ldlt().solve(grad);
      const double decrement = std::sqrt(std::max(0.0, -grad.dot(step)));
      if (!std::isfinite(decrement)) return Centering::OutOfSteps;
      if (decrement < tol || (decrement < 1e-4 && decrement > 0.5 * previous)) return Centering::Done;
      previous = decrement;
      double alpha = decrement < 0.25 ? 1.0 : 1.0 / (1.0 + decrement);
      Eigen::VectorXd trial = y + alpha * step;
      while (!barrier.in_domain(trial) && alpha > 1e-12) {
        alpha *= 0.5;
        trial = y + alpha * step;
      }
      ++sol.newton_steps;
      if (alpha <= 1e-12) return Centering::Done;
      y = trial;
      if (barrier.dual_objective(y) > certificate_level) return Centering::Certified;
    }
  };

  while (true) {
    switch (center(1e-7)) {
      case Centering::OutOfSteps: return finish_max_iterations();
      case Centering::Certified: return finish_infeasible();
      case Centering::Done: break;
    }
    const double objective = barrier.primal_estimate(y, t).trace().real();
    const double gap = n_plus_m / t;
    if (gap <= opts.gap_tol * std::max(objective, opts.gap_floor * cs.power_budget)) {
      sol.status = SdpStatus::Optimal;
      sol.W = barrier.refined_primal(y, t);
      sol.objective = sol.W.trace().real();
      sol.dual_objective = barrier.dual_objective(y);
      sol.duals = barrier.unpack(y);
      return sol;
    }
    t *= opts.barrier_growth;
  }
}

SdpSolution solve_rank_relaxed(const WiretapProblem& p, const ConstraintThresholds& t, const CsiMode& mode,
                               const SdpOptions& opts) {
  require_valid(p);
  return solve_trace_sdp(build_constraints(p, t, mode), opts);
}

ComplexVector extract_principal_direction(const ComplexMatrix& W) {
  const linalg::EigenDecomposition eig = linalg::hermitian_eig(W);
  const Eigen::Index n = W.rows();
  if (n == 0 || !(eig.eigenvalues(n - 1) > 0.0)) {
    throw std::invalid_argument("extract_principal_direction: matrix has no positive eigenvalue");
  }
  ComplexVector w0 = eig.eigenvectors.col(n - 1);
  w0.normalize();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(w0(i));
    if (mag > 1e-12) {
      w0 *= std::conj(w0(i)) / mag;
      w0(i) = mag;
      break;
    }
  }
  return w0;
}

std::optional<double> power_rescale(const TraceConstraintSet& cs, const ComplexVector& w0) {
  double power = 0.0;
  for (std::size_t k = 0; k < cs.user_mats.size(); ++k) {
    const double gain = linalg::quad_form(w0, cs.user_mats[k]);
    if (cs.floors[k] <= 0.0) continue;
    if (gain <= 0.0) return std::nullopt;
    power = std::max(power, cs.floors[k] / gain);
  }
  double upper = cs.power_budget;
  for (std::size_t j = 0; j < cs.eve_mats.size(); ++j) {
    const double leak = linalg::quad_form(w0, cs.eve_mats[j]);
    if (leak <= 0.0) continue;
    upper = std::min(upper, cs.ceilings[j] / leak);
  }
  if (power > upper * (1.0 + 1e-12)) return std::nullopt;
  return power;
}

std::optional<double> power_rescale(const WiretapProblem& p, const ConstraintThresholds& t, const ComplexVector& w0) {
  return power_rescale(build_constraints(p, t), w0);
}

BeamformerSolution solve_with_thresholds(const WiretapProblem& p, const ConstraintThresholds& t, const CsiMode& mode,
                                         const SdpOptions& opts) {
  require_valid(p);
  const TraceConstraintSet cs = build_constraints(p, t, mode);
  const SdpSolution sdp = solve_trace_sdp(cs, opts);

  BeamformerSolution out;
  out.mode = mode;
  out.thresholds = t;
  out.W = sdp.W;
  out.duals = sdp.duals;
  out.sdp_objective = sdp.objective;
  out.newton_steps = sdp.newton_steps;

  if (sdp.status == SdpStatus::Infeasible) {
    out.status = SolveStatus::Infeasible;
    return out;
  }
  if (sdp.status == SdpStatus::MaxIterations) {
    out.status = SolveStatus::NumericalFailure;
    return out;
  }

  const Eigen::Index n = cs.dim();
  const linalg::EigenDecomposition eig = linalg::hermitian_eig(sdp.W);
  const double lmax = eig.eigenvalues(n - 1);
  out.rank = linalg::numerical_rank(sdp.W, kRankTol);
  out.rank1_exact = out.rank == 1;

  if (!(lmax > 0.0)) {
    // Degenerate W = 0 optimum (all floors zero).
    out.status = SolveStatus::Optimal;
    out.w = ComplexVector::Zero(n);
    out.power = 0.0;
    return out;
  }

  const ComplexVector w0 = extract_principal_direction(sdp.W);
  if (out.rank1_exact) {
    out.w = std::sqrt(lmax) * w0;
    out.power = lmax;
    out.status = SolveStatus::Optimal;
    return out;
  }
  const std::optional<double> scale = power_rescale(cs, w0);
  if (!scale) {
    out.status = SolveStatus::InfeasibleAtRank1;
    return out;
  }
  out.w = std::sqrt(*scale) * w0;
  out.power = *scale;
  out.status = SolveStatus::Optimal;
  return out;
}

BeamformerSolution solve_general(const WiretapProblem& p, const RatePair& r, const CsiMode& mode,
                                 const RateModel& model, const SdpOptions& opts) {
  return solve_with_thresholds(p, thresholds_for_mode(p, r, model, mode), mode, opts);
}

}  // namespace wiretap
