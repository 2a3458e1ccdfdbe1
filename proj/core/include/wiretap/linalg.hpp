#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wiretap::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance below which a negative eigenvalue is treated as
/// round-off on a PSD matrix.
inline constexpr double kDefaultPsdTol = 1e-9;

class LinalgError : public std::runtime_error {
 public:
  explicit LinalgError(const std::string& what) : std::runtime_error(what) {}
};

/// Eigenpairs of a Hermitian matrix. Eigenvalues are ascending and the
/// eigenvector columns are orthonormal.
struct EigenDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

bool all_finite(const ComplexMatrix& a);

/// (A + A*) / 2. Throws on non-square input.
ComplexMatrix hermitianize(const ComplexMatrix& a);

/// Largest |A - A*| entry relative to max(1, ||A||_F).
double hermitian_defect(const ComplexMatrix& a);

EigenDecomposition hermitian_eig(const ComplexMatrix& a);

/// Returns B with B B* equal to A after eigenvalues in [-tol * max(1, lmax), 0)
/// are clamped to zero. Throws LinalgError when A is further from PSD than that.
ComplexMatrix psd_project_factor(const ComplexMatrix& a, double tol = kDefaultPsdTol);

/// Re(w* A w).
double quad_form(const ComplexVector& w, const ComplexMatrix& a);

/// Re Tr(A B).
double trace_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Number of eigenvalues above rel_tol * lambda_max; zero for a zero matrix.
std::size_t numerical_rank(const ComplexMatrix& a, double rel_tol);

double min_eigenvalue(const ComplexMatrix& a);
double max_eigenvalue(const ComplexMatrix& a);

/// True when the smallest eigenvalue is at least -tol * max(1, lambda_max).
bool is_psd(const ComplexMatrix& a, double tol = kDefaultPsdTol);

/// True when every off-diagonal entry is at most rel_tol * ||A||_F in magnitude.
bool is_diagonal(const ComplexMatrix& a, double rel_tol);

/// v v*.
ComplexMatrix outer(const ComplexVector& v);

}  // namespace wiretap::linalg
