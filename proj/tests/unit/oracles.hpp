#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library routines it is used to check.

#include <algorithm>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "lps/operator_core.hpp"

namespace lps::oracle {

inline Matrix product(const Matrix& a, const Matrix& b) {
  const auto n = a.rows();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) {
  return product(a, b) - product(b, a);
}

inline Complex trace_product(const Matrix& a, const Matrix& b) {
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) acc += a(i, j) * b(j, i);
  return acc;
}

inline Matrix adjoint(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

/// sum sqrt(eig(A* A)) via the Hermitian eigensolver (not the SVD).
inline double trace_norm_by_eigenvalues(const Matrix& a) {
  const Matrix g = adjoint(a) * a;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    s += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  }
  return s;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Dimension of {x : [x, rho] = 0} by full-pivot LU on the Kronecker form
/// I (x) rho^T... written out entrywise: ([x, rho])_ij = sum_k x_ik rho_kj - rho_ik x_kj.
inline int commutant_dimension(const Matrix& rho, double tol = 1e-9) {
  const auto n = rho.rows();
  Matrix k = Matrix::Zero(n * n, n * n);
  // unknown x_ab at index a*n + b; equation (i, j) at row i*n + j
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index m = 0; m < n; ++m) {
        k(i * n + j, i * n + m) += rho(m, j);
        k(i * n + j, m * n + j) -= rho(i, m);
      }
  Eigen::FullPivLU<Matrix> lu(k);
  lu.setThreshold(tol);
  return static_cast<int>(n * n - lu.rank());
}

/// Sorted real parts of the eigenvalues of a matrix similar to a real
/// symmetric one.
inline std::vector<double> sorted_real_eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lps::oracle
