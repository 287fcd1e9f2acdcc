#pragma once

// Lie-Poisson brackets on matrix truncations of L1(M) and its subspaces.
//
// A bracket variant is described by a BracketSpec. Every variant has the form
//
//   {f, g}(rho) = pair( [P Df(rho), P Dg(rho)], rho )
//
// where P projects a gradient representative onto the dual Lie algebra of
// the state space and `pair` is the trace pairing (or its real part for the
// realified skew-Hermitian space):
//
//   Full            P = id            pair = tr
//   LowerCoinduced  P = piinf_+       pair = tr     (states lower triangular)
//   HermitianReal   P = skew part     pair = Re tr  (states skew-Hermitian)
//   Product(l, r)   block diagonal, each block by its own spec
//
// Hamiltonian vector fields follow the sign conventions
//
//   Full / HermitianReal:  X_h(rho) = [P Dh(rho), rho]
//   LowerCoinduced:        X_h(rho) = pi1_-([rho, piinf_+ Dh(rho)])
//
// so pair(Dg, X_h) = ham_field_sign(spec) * {g, h}. The lower convention is
// the one under which the Flaschka map carries the canonical Toda flow of
// H = 1/2 sum p^2 + sum alpha lambda e^x onto the flow of h = tr(L^2)/2.

#include <functional>
#include <memory>
#include <optional>

#include "lps/operator_core.hpp"

namespace lps {

/// Central-difference step for first derivatives.
inline constexpr double kFdStep = 1e-5;
/// Central-difference step for gradients of brackets (nested derivatives).
inline constexpr double kNestedFdStep = 1e-4;

enum class GradMode { Analytic, FiniteDifference };

/// How a gradient represents a derivative: tr(G d) for holomorphic
/// observables, Re tr(G d) for real valued observables on a realified space.
enum class Pairing { Complex, Real };

/// Scalar function on N x N matrices together with a gradient representative
/// under the trace pairing. eval and grad must be free of side effects.
struct Observable {
  int dim = 0;
  std::function<Complex(const Matrix&)> eval;
  std::function<Matrix(const Matrix&)> grad;
  GradMode grad_mode = GradMode::Analytic;
  double fd_step = 0.0;
  /// Present iff the observable is affine, tr(A rho) + c; holds A.
  std::optional<Matrix> linear_gradient;

  Complex operator()(const Matrix& rho) const { return eval(rho); }
  Matrix gradient(const Matrix& rho) const { return grad(rho); }
  bool is_linear() const { return linear_gradient.has_value(); }
};

Observable linear_observable(Matrix a);
Observable constant_observable(int dim, Complex value);
/// tr(A rho B rho), gradient B rho A + A rho B.
Observable quadratic_observable(Matrix a, Matrix b);
/// T_k = tr(rho^k)/k, gradient rho^(k-1).
Observable casimir(int k, int dim);
/// Pointwise product, gradient f Dg + g Df.
Observable product(const Observable& f, const Observable& g);

/// Central differences over the real and imaginary part of every entry.
Matrix finite_difference_gradient(const std::function<Complex(const Matrix&)>& fn,
                                  const Matrix& rho, double step, Pairing pairing);

/// Same observable with its gradient replaced by central differences.
Observable with_finite_difference(Observable f, double step = kFdStep,
                                  Pairing pairing = Pairing::Complex);

class BracketSpec {
 public:
  enum class Kind { Full, LowerCoinduced, HermitianReal, Product };

  static BracketSpec full() { return BracketSpec(Kind::Full); }
  static BracketSpec lower_coinduced() { return BracketSpec(Kind::LowerCoinduced); }
  static BracketSpec hermitian_real() { return BracketSpec(Kind::HermitianReal); }
  /// Product structure on block-diagonal states diag(rho1, rho2) with rho1 of
  /// size left_dim.
  static BracketSpec product(BracketSpec left, BracketSpec right, int left_dim);

  Kind kind() const { return kind_; }
  const BracketSpec& left() const;
  const BracketSpec& right() const;
  int left_dim() const { return left_dim_; }

 private:
  explicit BracketSpec(Kind k) : kind_(k) {}

  Kind kind_;
  std::shared_ptr<const BracketSpec> left_;
  std::shared_ptr<const BracketSpec> right_;
  int left_dim_ = 0;
};

/// True iff rho carries the class tag required by the bracket kind.
bool is_admissible_state(const BracketSpec& spec, const Matrix& rho,
                         double tol = kExactTol);
/// Throws ContractError if rho is not admissible.
void require_state(const BracketSpec& spec, const Matrix& rho,
                   double tol = kExactTol);

/// P X: the part of a gradient that the bracket sees.
Matrix admissible_gradient(const BracketSpec& spec, const Matrix& x);
/// [P X, P Y], blockwise for products.
Matrix gradient_bracket(const BracketSpec& spec, const Matrix& x, const Matrix& y);
/// tr(X rho), Re tr(X rho), or the blockwise sum.
Complex pair(const BracketSpec& spec, const Matrix& x, const Matrix& rho);

Pairing pairing_at(const BracketSpec& spec, int row, int col);
Matrix finite_difference_gradient(const BracketSpec& spec,
                                  const std::function<Complex(const Matrix&)>& fn,
                                  const Matrix& rho, double step);

Complex lp_bracket(const BracketSpec& spec, const Observable& f,
                   const Observable& g, const Matrix& rho);

Matrix ham_field(const BracketSpec& spec, const Observable& h, const Matrix& rho);

/// +1 or -1 with pair(spec, Dg, X_h) = sign * {g, h}. Throws ContractError
/// for products whose factors disagree.
int ham_field_sign(const BracketSpec& spec);

/// {f, g} as an observable. Exact constant gradient if f and g are both
/// linear, otherwise central differences with the given step.
Observable bracket_observable(const BracketSpec& spec, const Observable& f,
                              const Observable& g, double fd_step = kNestedFdStep);

double jacobi_defect(const BracketSpec& spec, const Observable& f,
                     const Observable& g, const Observable& h, const Matrix& rho,
                     double fd_step = kNestedFdStep);

double leibniz_defect(const BracketSpec& spec, const Observable& f,
                      const Observable& g, const Observable& h, const Matrix& rho);

/// Linear map between matrix spaces with the adjoint of its derivative under
/// the trace pairing: pair(pullback(X), d) = pair(X, apply(d)).
struct MatrixMap {
  int src_dim = 0;
  int dst_dim = 0;
  std::function<Matrix(const Matrix&)> apply;
  std::function<Matrix(const Matrix&)> pullback;
};

MatrixMap identity_map(int n);
/// pi1_- : L1 -> L1_-
MatrixMap lower_projection_map(int n);
/// L1_- into L1. Not a Poisson map for the full bracket.
MatrixMap lower_inclusion_map(int n);
/// i1(b) = (b, 0) and i2(b) = (0, b) into block-diagonal product states.
MatrixMap product_inclusion_left(int left_dim, int right_dim);
MatrixMap product_inclusion_right(int left_dim, int right_dim);

/// f o phi with gradient phi^*(Df(phi(rho))).
Observable pullback(const Observable& f, const MatrixMap& phi);

double poisson_map_defect(const MatrixMap& phi, const BracketSpec& src,
                          const BracketSpec& dst, const Observable& f,
                          const Observable& g, const Matrix& rho);

/// | {f o R, g o R}(rho) - {f, g}_{im R}(R rho) | where the source bracket is
/// the full bracket (realified when the target is HermitianReal) and the
/// target bracket sees gradients projected by R^*. Throws ContractError if R
/// is not idempotent.
double reduction_condition_defect(const MatrixMap& projector,
                                  const BracketSpec& target, const Observable& f,
                                  const Observable& g, const Matrix& rho);

}  // namespace lps
