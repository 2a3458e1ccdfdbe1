#include "wiretap/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wiretap::lp {

namespace {

enum class ColumnKind { Structural, Slack, Artificial };

class Tableau {
 public:
  Tableau(Eigen::Index m, Eigen::Index cols) : t_(Eigen::MatrixXd::Zero(m + 1, cols + 1)), basis_(m, -1) {}

  double& at(Eigen::Index r, Eigen::Index c) { return t_(r, c); }
  double rhs(Eigen::Index r) const { return t_(r, t_.cols() - 1); }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  std::vector<Eigen::Index>& basis() { return basis_; }
  auto objective_row() { return t_.row(t_.rows() - 1); }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[r] = c;
  }

  // Loads `cost` into the objective row and prices out the current basis.
  void set_objective(const Eigen::VectorXd& cost) {
    auto obj = objective_row();
    obj.setZero();
    obj.head(cost.size()) = cost.transpose();
    for (Eigen::Index r = 0; r < rows(); ++r) {
      const double cb = obj(basis_[r]);
      if (cb != 0.0) obj -= cb * t_.row(r);
    }
  }

  // Returns false when the objective is unbounded below.
  bool optimize(const std::vector<bool>& allowed, double tol) {
    const Eigen::Index max_iter = 50 * (rows() + cols() + 10);
    for (Eigen::Index iter = 0; iter < max_iter; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index c = 0; c < cols(); ++c) {
        if (allowed[c] && t_(t_.rows() - 1, c) < -tol) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < rows(); ++r) {
        const double coef = t_(r, enter);
        if (coef > tol) {
          const double ratio = rhs(r) / coef;
          if (ratio < best - tol || (ratio <= best + tol && leave >= 0 && basis_[r] < basis_[leave])) {
            best = std::min(best, ratio);
            leave = r;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex: iteration limit reached");
  }

  double value() const { return -t_(t_.rows() - 1, t_.cols() - 1); }

 private:
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

LpResult solve(const LinearProgram& lp, double tol) {
  const Eigen::Index n = lp.cost.size();
  const Eigen::Index m = lp.rows.rows();
  if (lp.rows.cols() != n || lp.rhs.size() != m || static_cast<Eigen::Index>(lp.senses.size()) != m) {
    throw std::invalid_argument("simplex: inconsistent LP dimensions");
  }

  // Row-scale and flip so that every rhs is non-negative.
  Eigen::MatrixXd a = lp.rows;
  Eigen::VectorXd b = lp.rhs;
  std::vector<Sense> sense = lp.senses;
  for (Eigen::Index r = 0; r < m; ++r) {
    const double scale = std::max(a.row(r).cwiseAbs().maxCoeff(), std::abs(b(r)));
    if (scale > 0.0) {
      a.row(r) /= scale;
      b(r) /= scale;
    }
    if (b(r) < 0.0) {
      a.row(r) *= -1.0;
      b(r) *= -1.0;
      if (sense[r] == Sense::LessEqual) sense[r] = Sense::GreaterEqual;
      else if (sense[r] == Sense::GreaterEqual) sense[r] = Sense::LessEqual;
    }
  }

  Eigen::Index slacks = 0;
  Eigen::Index artificials = 0;
  for (Sense s : sense) {
    if (s != Sense::Equal) ++slacks;
    if (s != Sense::LessEqual) ++artificials;
  }
  const Eigen::Index cols = n + slacks + artificials;
  std::vector<ColumnKind> kind(cols, ColumnKind::Structural);
  Tableau tab(m, cols);

  Eigen::Index next_slack = n;
  Eigen::Index next_art = n + slacks;
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) tab.at(r, c) = a(r, c);
    tab.at(r, cols) = b(r);
    if (sense[r] == Sense::LessEqual) {
      tab.at(r, next_slack) = 1.0;
      kind[next_slack] = ColumnKind::Slack;
      tab.basis()[r] = next_slack++;
    } else {
      if (sense[r] == Sense::GreaterEqual) {
        tab.at(r, next_slack) = -1.0;
        kind[next_slack] = ColumnKind::Slack;
        ++next_slack;
      }
      tab.at(r, next_art) = 1.0;
      kind[next_art] = ColumnKind::Artificial;
      tab.basis()[r] = next_art++;
    }
  }

  LpResult result;
  std::vector<bool> allowed(cols, true);

  if (artificials > 0) {
    Eigen::VectorXd phase_one = Eigen::VectorXd::Zero(cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (kind[c] == ColumnKind::Artificial) phase_one(c) = 1.0;
    }
    tab.set_objective(phase_one);
    tab.optimize(allowed, tol);
    result.infeasibility = tab.value();
    if (result.infeasibility > std::sqrt(tol)) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (Eigen::Index r = 0; r < m; ++r) {
      if (kind[tab.basis()[r]] != ColumnKind::Artificial) continue;
      for (Eigen::Index c = 0; c < cols; ++c) {
        if (kind[c] != ColumnKind::Artificial && std::abs(tab.at(r, c)) > tol) {
          tab.pivot(r, c);
          break;
        }
      }
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (kind[c] == ColumnKind::Artificial) allowed[c] = false;
    }
  }

  Eigen::VectorXd phase_two = Eigen::VectorXd::Zero(cols);
  phase_two.head(n) = lp.cost;
  tab.set_objective(phase_two);
  if (!tab.optimize(allowed, tol)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index r = 0; r < m; ++r) {
    const Eigen::Index c = tab.basis()[r];
    if (c < n) result.x(c) = std::max(0.0, tab.rhs(r));
  }
  result.objective = lp.cost.dot(result.x);
  return result;
}

}  // namespace wiretap::lp
