#include "wiretap/lp_diagonal.hpp"

#include <cmath>

#include "wiretap/simplex.hpp"

namespace wiretap {

bool all_diagonal(const WiretapProblem& p, double rel_tol) {
  for (const auto& h : p.user_cov)
    if (!linalg::is_diagonal(h, rel_tol)) return false;
  for (const auto& z : p.eve_cov)
    if (!linalg::is_diagonal(z, rel_tol)) return false;
  return true;
}

std::optional<PowerAllocation> solve_diagonal(const WiretapProblem& p, const ConstraintThresholds& t) {
  if (!all_diagonal(p)) throw NotDiagonal("solve_diagonal: covariance matrices must be diagonal");
  const auto n = static_cast<Eigen::Index>(p.antennas);
  const auto k = static_cast<Eigen::Index>(p.users());
  const bool has_ceiling = std::isfinite(t.ceiling);
  const auto j = has_ceiling ? static_cast<Eigen::Index>(p.eavesdroppers()) : Eigen::Index{0};

  lp::LinearProgram prog;
  prog.cost = Eigen::VectorXd::Ones(n);
  prog.rows = Eigen::MatrixXd::Zero(1 + k + j, n);
  prog.rhs = Eigen::VectorXd::Zero(1 + k + j);
  prog.rows.row(0).setOnes();
  prog.rhs(0) = p.power_budget;
  prog.senses.push_back(lp::Sense::LessEqual);
  for (Eigen::Index i = 0; i < k; ++i) {
    prog.rows.row(1 + i) = p.user_cov[i].diagonal().real().transpose();
    prog.rhs(1 + i) = t.floor;
    prog.senses.push_back(lp::Sense::GreaterEqual);
  }
  for (Eigen::Index i = 0; i < j; ++i) {
    prog.rows.row(1 + k + i) = p.eve_cov[i].diagonal().real().transpose();
    prog.rhs(1 + k + i) = t.ceiling;
    prog.senses.push_back(lp::Sense::LessEqual);
  }

  const lp::LpResult res = lp::solve(prog);
  if (res.status != lp::LpStatus::Optimal) return std::nullopt;

  PowerAllocation alloc;
  alloc.power.assign(res.x.data(), res.x.data() + n);
  alloc.total = res.x.sum();
  return alloc;
}

ComplexVector allocation_to_beamformer(const PowerAllocation& alloc) {
  ComplexVector w(static_cast<Eigen::Index>(alloc.power.size()));
  for (std::size_t m = 0; m < alloc.power.size(); ++m) {
    w(static_cast<Eigen::Index>(m)) = std::sqrt(std::max(0.0, alloc.power[m]));
  }
  return w;
}

}  // namespace wiretap
