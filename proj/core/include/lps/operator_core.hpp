#pragma once

// Dense complex matrices standing in for finite truncations of trace class
// operators L1(M) and bounded operators Linf(M), together with the trace
// pairing between them and the triangular splittings
//
//   L1   = L1_-    (+) L1^+      lower incl. diagonal  / strictly upper
//   Linf = Linf_+  (+) Linf^-    upper incl. diagonal  / strictly lower
//
// All functions are pure. Indices are 0-based; E(i,j) = |i><j|.

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lps {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default tolerance for identities that hold exactly in exact arithmetic.
inline constexpr double kExactTol = 1e-12;

enum class ClassTag {
  TraceClass,
  Bounded,
  LowerTriangular,
  StrictlyUpper,
  Hermitian,
  SkewHermitian,
};

std::string_view to_string(ClassTag tag);

// -- construction / shape helpers -------------------------------------------

/// Elementary matrix |row><col| of size n.
Matrix elementary(int n, int row, int col);

bool all_finite(const Matrix& m);

/// Throws DimensionError unless both operands are square and of equal size.
void require_same_dim(const Matrix& a, const Matrix& b, std::string_view op);
void require_square(const Matrix& a, std::string_view op);

// -- algebra ----------------------------------------------------------------

/// [x, y] = xy - yx
Matrix commutator(const Matrix& x, const Matrix& y);

/// <x, rho> = tr(x rho)
Complex trace_pairing(const Matrix& x, const Matrix& rho);

/// Singular values in descending order. Throws NumericalError if the SVD
/// does not report success.
RealVector singular_values(const Matrix& m);

/// Sum of singular values, tr sqrt(rho* rho).
double trace_norm(const Matrix& rho);

/// Largest singular value.
double operator_norm(const Matrix& m);

// -- splittings --------------------------------------------------------------

/// pi1_-: keep entries with row >= col.
Matrix project_lower(const Matrix& rho);
/// pi1^+: keep entries with row < col.
Matrix project_strictly_upper(const Matrix& rho);
/// piinf_+: keep entries with col >= row.
Matrix project_upper_plus(const Matrix& x);
/// piinf^-: keep entries with col < row.
Matrix project_strictly_lower(const Matrix& x);

/// R = (id + sigma)/2 with sigma(rho) = -rho*, i.e. (rho - rho*)/2.
Matrix skew_hermitian_part(const Matrix& rho);

// -- validation ---------------------------------------------------------------

bool validate(ClassTag tag, const Matrix& m, double tol = kExactTol);

/// Ordered family of self-adjoint projectors. Construction does not validate;
/// call validate_decomposition before relying on the invariants.
class DecompositionOfUnity {
 public:
  explicit DecompositionOfUnity(std::vector<Matrix> projectors);

  /// {E11, ..., Enn}
  static DecompositionOfUnity standard_basis(int n);
  /// Consecutive diagonal blocks of the given sizes.
  static DecompositionOfUnity diagonal_blocks(const std::vector<int>& sizes);

  const std::vector<Matrix>& projectors() const { return projectors_; }
  int dim() const;
  std::size_t size() const { return projectors_.size(); }

 private:
  std::vector<Matrix> projectors_;
};

/// P_n P_m = delta_nm P_n, P_n* = P_n and sum P_n = I, all within tol.
bool validate_decomposition(const DecompositionOfUnity& d,
                            double tol = kExactTol);

}  // namespace lps
