#include "wiretap/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace wiretap::linalg {

namespace {

void require_square(const ComplexMatrix& a, const char* op) {
  if (a.rows() != a.cols()) {
    throw LinalgError(std::string(op) + ": matrix is " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + ", expected square");
  }
}

}  // namespace

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Complex z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix hermitianize(const ComplexMatrix& a) {
  require_square(a, "hermitianize");
  return (a + a.adjoint()) * 0.5;
}

double hermitian_defect(const ComplexMatrix& a) {
  require_square(a, "hermitian_defect");
  if (a.size() == 0) return 0.0;
  const double defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
  return defect / std::max(1.0, a.norm());
}

EigenDecomposition hermitian_eig(const ComplexMatrix& a) {
  require_square(a, "hermitian_eig");
  if (!all_finite(a)) throw LinalgError("hermitian_eig: non-finite entry");
  if (a.rows() == 0) return {};

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitianize(a));
  if (solver.info() != Eigen::Success) {
    throw LinalgError("hermitian_eig: QL iteration did not converge");
  }
  // Eigen returns ascending eigenvalues with orthonormal eigenvectors.
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix psd_project_factor(const ComplexMatrix& a, double tol) {
  const EigenDecomposition eig = hermitian_eig(a);
  const Eigen::Index n = a.rows();
  if (n == 0) return {};
  const double lmax = eig.eigenvalues(n - 1);
  const double floor = -tol * std::max(1.0, lmax);
  if (eig.eigenvalues(0) < floor) {
    throw LinalgError("psd_project_factor: covariance not PSD (min eigenvalue " +
                      std::to_string(eig.eigenvalues(0)) + ")");
  }
  RealVector roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors * roots.cast<Complex>().asDiagonal();
}

double quad_form(const ComplexVector& w, const ComplexMatrix& a) {
  if (a.rows() != w.size() || a.cols() != w.size()) {
    throw LinalgError("quad_form: dimension mismatch");
  }
  return w.dot(a * w).real();
}

double trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    throw LinalgError("trace_inner: dimension mismatch");
  }
  // Tr(AB) = sum_mn A_mn B_nm
  return a.cwiseProduct(b.transpose()).sum().real();
}

std::size_t numerical_rank(const ComplexMatrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  const RealVector ev = hermitian_eig(a).eigenvalues;
  const double lmax = ev(ev.size() - 1);
  if (!(lmax > 0.0)) return 0;
  const double cut = rel_tol * lmax;
  return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [cut](double x) { return x > cut; }));
}

double min_eigenvalue(const ComplexMatrix& a) {
  const RealVector ev = hermitian_eig(a).eigenvalues;
  return ev.size() ? ev(0) : 0.0;
}

double max_eigenvalue(const ComplexMatrix& a) {
  const RealVector ev = hermitian_eig(a).eigenvalues;
  return ev.size() ? ev(ev.size() - 1) : 0.0;
}

bool is_psd(const ComplexMatrix& a, double tol) {
  const RealVector ev = hermitian_eig(a).eigenvalues;
  if (ev.size() == 0) return true;
  return ev(0) >= -tol * std::max(1.0, ev(ev.size() - 1));
}

bool is_diagonal(const ComplexMatrix& a, double rel_tol) {
  require_square(a, "is_diagonal");
  const double limit = rel_tol * a.norm();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if (r != c && std::abs(a(r, c)) > limit) return false;
    }
  }
  return true;
}

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace wiretap::linalg
