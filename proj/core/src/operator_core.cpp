#include "lps/operator_core.hpp"

#include <string>

#include "lps/error.hpp"

namespace lps {

std::string_view to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::TraceClass: return "TraceClass";
    case ClassTag::Bounded: return "Bounded";
    case ClassTag::LowerTriangular: return "LowerTriangular";
    case ClassTag::StrictlyUpper: return "StrictlyUpper";
    case ClassTag::Hermitian: return "Hermitian";
    case ClassTag::SkewHermitian: return "SkewHermitian";
  }
  return "?";
}

Matrix elementary(int n, int row, int col) {
  if (n < 1 || row < 0 || col < 0 || row >= n || col >= n) {
    throw DimensionError("elementary: index out of range");
  }
  Matrix e = Matrix::Zero(n, n);
  e(row, col) = 1.0;
  return e;
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

void require_square(const Matrix& a, std::string_view op) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw DimensionError(std::string(op) + ": operand must be square with dim >= 1");
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, std::string_view op) {
  require_square(a, op);
  require_square(b, op);
  if (a.rows() != b.rows()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" +
                         std::to_string(a.rows()) + " vs " +
                         std::to_string(b.rows()) + ")");
  }
}

Matrix commutator(const Matrix& x, const Matrix& y) {
  require_same_dim(x, y, "commutator");
  Matrix xy = x * y;
  Matrix yx = y * x;
  return xy - yx;
}

Complex trace_pairing(const Matrix& x, const Matrix& rho) {
  require_same_dim(x, rho, "trace_pairing");
  // tr(x rho) = sum_ij x_ij rho_ji
  return x.transpose().cwiseProduct(rho).sum();
}

RealVector singular_values(const Matrix& m) {
  if (!m.allFinite()) throw NumericalError("singular_values: non-finite input");
  Eigen::BDCSVD<Matrix> svd(m);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("singular_values: SVD did not converge");
  }
  // Eigen returns them sorted in decreasing order.
  return svd.singularValues();
}

double trace_norm(const Matrix& rho) {
  require_square(rho, "trace_norm");
  return singular_values(rho).sum();
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

namespace {

template <class Keep>
Matrix mask(const Matrix& m, Keep keep) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (keep(i, j)) out(i, j) = m(i, j);
    }
  }
  return out;
}

}  // namespace

Matrix project_lower(const Matrix& rho) {
  return mask(rho, [](auto i, auto j) { return i >= j; });
}

Matrix project_strictly_upper(const Matrix& rho) {
  return mask(rho, [](auto i, auto j) { return i < j; });
}

Matrix project_upper_plus(const Matrix& x) {
  return mask(x, [](auto i, auto j) { return j >= i; });
}

Matrix project_strictly_lower(const Matrix& x) {
  return mask(x, [](auto i, auto j) { return j < i; });
}

Matrix skew_hermitian_part(const Matrix& rho) {
  require_square(rho, "skew_hermitian_part");
  Matrix adj = rho.adjoint();
  return 0.5 * (rho - adj);
}

bool validate(ClassTag tag, const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1 || !m.allFinite()) return false;
  const auto n = m.rows();
  switch (tag) {
    case ClassTag::TraceClass:
    case ClassTag::Bounded:
      // Every finite matrix is both; the tag only records intent.
      return true;
    case ClassTag::LowerTriangular:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
          if (std::abs(m(i, j)) > tol) return false;
      return true;
    case ClassTag::StrictlyUpper:
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j)
          if (std::abs(m(i, j)) > tol) return false;
      return true;
    case ClassTag::Hermitian:
      return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
    case ClassTag::SkewHermitian:
      return (m + m.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }
  return false;
}

DecompositionOfUnity::DecompositionOfUnity(std::vector<Matrix> projectors)
    : projectors_(std::move(projectors)) {
  if (projectors_.empty()) {
    throw ContractError("DecompositionOfUnity: empty projector list");
  }
  for (const auto& p : projectors_) require_same_dim(projectors_.front(), p, "DecompositionOfUnity");
}

DecompositionOfUnity DecompositionOfUnity::standard_basis(int n) {
  std::vector<Matrix> ps;
  ps.reserve(n);
  for (int k = 0; k < n; ++k) ps.push_back(elementary(n, k, k));
  return DecompositionOfUnity(std::move(ps));
}

DecompositionOfUnity DecompositionOfUnity::diagonal_blocks(const std::vector<int>& sizes) {
  int n = 0;
  for (int s : sizes) {
    if (s < 1) throw ContractError("diagonal_blocks: block sizes must be positive");
    n += s;
  }
  std::vector<Matrix> ps;
  int offset = 0;
  for (int s : sizes) {
    Matrix p = Matrix::Zero(n, n);
    p.block(offset, offset, s, s).setIdentity();
    ps.push_back(std::move(p));
    offset += s;
  }
  return DecompositionOfUnity(std::move(ps));
}

int DecompositionOfUnity::dim() const {
  return static_cast<int>(projectors_.front().rows());
}

bool validate_decomposition(const DecompositionOfUnity& d, double tol) {
  const auto& ps = d.projectors();
  const int n = d.dim();
  Matrix sum = Matrix::Zero(n, n);
  for (std::size_t a = 0; a < ps.size(); ++a) {
    if (!validate(ClassTag::Hermitian, ps[a], tol)) return false;
    for (std::size_t b = 0; b < ps.size(); ++b) {
      Matrix expected = a == b ? ps[a] : Matrix::Zero(n, n);
      if ((ps[a] * ps[b] - expected).cwiseAbs().maxCoeff() > tol) return false;
    }
    sum += ps[a];
  }
  return (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace lps
