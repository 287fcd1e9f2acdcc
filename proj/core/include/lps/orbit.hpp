#pragma once

// Coadjoint orbits {g rho g^-1} in matrix models and the KKS two-form
//
//   omega(rho)([x, rho], [y, rho]) = tr(rho [x, y]).
//
// Orbits are never enumerated; a point is the pair (g, rho).

#include "lps/operator_core.hpp"

namespace lps {

/// Condition numbers at or above this are rejected by coadjoint_act.
inline constexpr double kMaxCondition = 1e12;
/// Relative singular value cut-off for ranks.
inline constexpr double kRankTol = 1e-10;

class OrbitPoint {
 public:
  /// Throws ContractError if g is singular or ill conditioned.
  OrbitPoint(Matrix base, Matrix group_element);

  const Matrix& base() const { return base_; }
  const Matrix& group_element() const { return g_; }
  const Matrix& group_inverse() const { return g_inv_; }
  /// g rho g^-1
  const Matrix& current() const { return current_; }

  /// ||g g^-1 - I|| <= 1e-10 and current() recomputes to 1e-10.
  bool check_invariants(double tol = 1e-10) const;

 private:
  Matrix base_;
  Matrix g_;
  Matrix g_inv_;
  Matrix current_;
};

/// sigma_max / sigma_min; +inf for singular input.
double condition_number(const Matrix& g);

/// Ad*_{g^-1} rho = g rho g^-1.
Matrix coadjoint_act(const Matrix& g, const Matrix& rho);

/// [x, rho], a tangent vector to the orbit through rho.
Matrix tangent_vector(const Matrix& x, const Matrix& rho);

/// tr(rho [x, y])
Complex kks_eval(const Matrix& rho, const Matrix& x, const Matrix& y);

/// |kks(rho, x, y) - kks(rho, x', y)| for x' - x in the commutant of rho.
/// Throws ContractError if ||[x - x', rho]|| > 1e-10.
double kks_welldefined_defect(const Matrix& rho, const Matrix& x, const Matrix& x_prime,
                              const Matrix& y);

/// Matrix of x -> [x, rho] on the elementary basis, columns indexed by
/// vec(E_rc) in column-major order.
Matrix adjoint_operator(const Matrix& rho);

/// Rank of x -> [x, rho] = N^2 - dim(commutant of rho).
int characteristic_rank(const Matrix& rho);

/// |psi><psi| / <psi|psi>. Throws ContractError for psi = 0.
Matrix rank_one_state(const Vector& psi);

}  // namespace lps
