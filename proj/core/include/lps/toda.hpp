#pragma once

// Toda lattice truncated to N particles.
//
// Canonical side: relative displacements x_k = q_k - q_{k+1} (k < N) and
// momenta p_k with sum p_k = 0,
//
//   H = 1/2 sum p_k^2 + sum alpha_k lambda_k exp(x_k),
//   x_k' = p_k - p_{k+1},
//   p_k' = alpha_{k-1} lambda_{k-1} e^{x_{k-1}} - alpha_k lambda_k e^{x_k}
//
// (terms with an index outside 1..N-1 vanish; free ends).
//
// Lax side: the Flaschka map sends (x, p) to the lower triangular
//
//   rho_- = diag(p) + sum lambda_k e^{x_k} E_{k+1,k},
//
// a = sum alpha_k E_{k,k+1} is fixed and L = rho_- + a. With
// h = tr(L^2)/2 the coinduced Hamiltonian field pi1_-([rho_-, piinf_+(L)])
// is exactly the image of the canonical field under the tangent of the
// Flaschka map, and h o flaschka = H.

#include <vector>

#include "lps/operator_core.hpp"
#include "lps/poisson.hpp"

namespace lps::toda {

struct TodaState {
  RealVector x;       // N-1
  RealVector p;       // N
  RealVector alpha;   // N-1
  RealVector lambda;  // N-1, nonzero

  int size() const { return static_cast<int>(p.size()); }
};

/// Validates sizes, |sum p| <= 1e-12, lambda_k != 0 and finiteness.
/// Throws ContractError.
TodaState make_state(RealVector x, RealVector p, RealVector alpha, RealVector lambda);
void require_valid(const TodaState& s);

/// alpha_k = lambda_k = 2^-k, k = 1..N-1.
RealVector default_weights(int n);

struct LaxPair {
  Matrix rho_minus;
  Matrix a;
  Matrix lax;  // rho_minus + a
};

/// a = sum alpha_k E_{k,k+1}
Matrix upper_weight_matrix(const RealVector& alpha);
LaxPair make_lax_pair(Matrix rho_minus, const RealVector& alpha);

double toda_hamiltonian(const TodaState& s);

struct CanonicalVelocity {
  RealVector dx;
  RealVector dp;
};

CanonicalVelocity canonical_field(const TodaState& s);

LaxPair flaschka(const TodaState& s);

/// Inverse of the Flaschka map on its image: x_k = log(entry / lambda_k).
TodaState unflaschka(const Matrix& rho_minus, const RealVector& alpha, const RealVector& lambda);

/// T J (dx, dp) = diag(dp) + sum lambda_k e^{x_k} dx_k E_{k+1,k}
Matrix flaschka_tangent(const TodaState& s, const CanonicalVelocity& v);

/// h_k(rho_-) = tr((rho_- + a)^k)/k with upper-plus gradient piinf_+(L^(k-1)).
Observable toda_hk(const LaxPair& lp, int k);

/// pi1_-([rho_-, piinf_+(L)])
Matrix lax_field(const Matrix& rho_minus, const Matrix& a);
Matrix lax_field(const LaxPair& lp);

/// || T J(canonical_field(s)) - lax_field(flaschka(s)) ||_op
double intertwining_defect(const TodaState& s);

/// | {h_j, h_k}_{L1_-}(rho_-) |
double involution_defect(const LaxPair& lp, int j, int k);

// Phase-space packing [x; p] used by the integrators; weights stay fixed.
RealVector phase_vector(const TodaState& s);
TodaState with_phase(const TodaState& weights, const RealVector& z);
/// z' for z = [x; p] with the weights of `weights`.
RealVector canonical_phase_field(const TodaState& weights, const RealVector& z);

}  // namespace lps::toda
