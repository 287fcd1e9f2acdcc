#include "lps/orbit.hpp"

#include <limits>

#include "lps/error.hpp"

namespace lps {

double condition_number(const Matrix& g) {
  require_square(g, "condition_number");
  const RealVector s = singular_values(g);
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

namespace {

Matrix checked_inverse(const Matrix& g) {
  if (!(condition_number(g) < kMaxCondition)) {
    throw ContractError("coadjoint action: group element is singular or ill conditioned");
  }
  return g.partialPivLu().inverse();
}

}  // namespace

OrbitPoint::OrbitPoint(Matrix base, Matrix group_element)
    : base_(std::move(base)), g_(std::move(group_element)) {
  require_same_dim(base_, g_, "OrbitPoint");
  g_inv_ = checked_inverse(g_);
  current_ = g_ * base_ * g_inv_;
}

bool OrbitPoint::check_invariants(double tol) const {
  const auto n = g_.rows();
  const double inv_err = (g_ * g_inv_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  const double cur_err = (coadjoint_act(g_, base_) - current_).cwiseAbs().maxCoeff();
  return inv_err <= tol && cur_err <= tol;
}

Matrix coadjoint_act(const Matrix& g, const Matrix& rho) {
  require_same_dim(g, rho, "coadjoint_act");
  const Matrix g_inv = checked_inverse(g);
  return g * rho * g_inv;
}

Matrix tangent_vector(const Matrix& x, const Matrix& rho) { return commutator(x, rho); }

Complex kks_eval(const Matrix& rho, const Matrix& x, const Matrix& y) {
  require_same_dim(rho, x, "kks_eval");
  return trace_pairing(rho, commutator(x, y));
}

double kks_welldefined_defect(const Matrix& rho, const Matrix& x, const Matrix& x_prime,
                              const Matrix& y) {
  require_same_dim(x, x_prime, "kks_welldefined_defect");
  const Matrix diff = x - x_prime;
  if (commutator(diff, rho).cwiseAbs().maxCoeff() > 1e-10) {
    throw ContractError("kks_welldefined_defect: x - x' does not commute with rho");
  }
  return std::abs(kks_eval(rho, x, y) - kks_eval(rho, x_prime, y));
}

Matrix adjoint_operator(const Matrix& rho) {
  require_square(rho, "adjoint_operator");
  const auto n = rho.rows();
  Matrix op(n * n, n * n);
  Matrix e = Matrix::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      e(r, c) = 1.0;
      const Matrix image = commutator(e, rho);
      op.col(c * n + r) = image.reshaped();
      e(r, c) = 0.0;
    }
  }
  return op;
}

int characteristic_rank(const Matrix& rho) {
  const RealVector s = singular_values(adjoint_operator(rho));
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cutoff = kRankTol * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  return rank;
}

Matrix rank_one_state(const Vector& psi) {
  const double norm2 = psi.squaredNorm();
  if (psi.size() == 0 || norm2 == 0.0) throw ContractError("rank_one_state: zero vector");
  if (!psi.allFinite()) throw NumericalError("rank_one_state: non-finite vector");
  Matrix rho = psi * psi.adjoint();
  return rho / norm2;
}

}  // namespace lps
