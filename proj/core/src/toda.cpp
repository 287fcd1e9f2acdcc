#include "lps/toda.hpp"

#include <cmath>

#include "lps/error.hpp"

namespace lps::toda {

namespace {

constexpr double kMaxExponent = 700.0;

double checked_exp(double x) {
  if (!(x <= kMaxExponent)) throw NumericalError("toda: exponent overflow (x_k > 700)");
  return std::exp(x);
}

}  // namespace

void require_valid(const TodaState& s) {
  const auto n = s.p.size();
  if (n < 2) throw ContractError("TodaState: need at least two particles");
  if (s.x.size() != n - 1 || s.alpha.size() != n - 1 || s.lambda.size() != n - 1) {
    throw ContractError("TodaState: x, alpha, lambda must have N-1 entries");
  }
  if (!s.x.allFinite() || !s.p.allFinite() || !s.alpha.allFinite() || !s.lambda.allFinite()) {
    throw ContractError("TodaState: non-finite entry");
  }
  if (std::abs(s.p.sum()) > kExactTol) throw ContractError("TodaState: sum of momenta is not zero");
  for (Eigen::Index k = 0; k < s.lambda.size(); ++k) {
    if (s.lambda(k) == 0.0) throw ContractError("TodaState: lambda_k must be nonzero");
  }
}

TodaState make_state(RealVector x, RealVector p, RealVector alpha, RealVector lambda) {
  TodaState s{std::move(x), std::move(p), std::move(alpha), std::move(lambda)};
  require_valid(s);
  return s;
}

RealVector default_weights(int n) {
  if (n < 2) throw ContractError("default_weights: need N >= 2");
  RealVector w(n - 1);
  for (int k = 1; k < n; ++k) w(k - 1) = std::ldexp(1.0, -k);
  return w;
}

Matrix upper_weight_matrix(const RealVector& alpha) {
  const auto n = alpha.size() + 1;
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) a(k, k + 1) = alpha(k);
  return a;
}

LaxPair make_lax_pair(Matrix rho_minus, const RealVector& alpha) {
  if (rho_minus.rows() != alpha.size() + 1) {
    throw DimensionError("make_lax_pair: alpha must have N-1 entries");
  }
  if (!validate(ClassTag::LowerTriangular, rho_minus)) {
    throw ContractError("make_lax_pair: rho_minus must be lower triangular");
  }
  Matrix a = upper_weight_matrix(alpha);
  Matrix lax = rho_minus + a;
  return {std::move(rho_minus), std::move(a), std::move(lax)};
}

double toda_hamiltonian(const TodaState& s) {
  require_valid(s);
  double kinetic = 0.0;
  for (Eigen::Index k = 0; k < s.p.size(); ++k) kinetic += s.p(k) * s.p(k);
  double potential = 0.0;
  for (Eigen::Index k = 0; k < s.x.size(); ++k) {
    potential += s.alpha(k) * s.lambda(k) * checked_exp(s.x(k));
  }
  return 0.5 * kinetic + potential;
}

CanonicalVelocity canonical_field(const TodaState& s) {
  require_valid(s);
  const auto n = s.p.size();
  CanonicalVelocity v{RealVector(n - 1), RealVector::Zero(n)};
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    v.dx(k) = s.p(k) - s.p(k + 1);
    const double force = s.alpha(k) * s.lambda(k) * checked_exp(s.x(k));
    v.dp(k) -= force;
    v.dp(k + 1) += force;
  }
  return v;
}

LaxPair flaschka(const TodaState& s) {
  require_valid(s);
  const auto n = s.p.size();
  Matrix rho = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) rho(k, k) = s.p(k);
  for (Eigen::Index k = 0; k + 1 < n; ++k) rho(k + 1, k) = s.lambda(k) * checked_exp(s.x(k));
  return make_lax_pair(std::move(rho), s.alpha);
}

TodaState unflaschka(const Matrix& rho_minus, const RealVector& alpha, const RealVector& lambda) {
  require_square(rho_minus, "unflaschka");
  const auto n = rho_minus.rows();
  RealVector x(n - 1);
  RealVector p(n);
  for (Eigen::Index k = 0; k < n; ++k) p(k) = rho_minus(k, k).real();
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double ratio = rho_minus(k + 1, k).real() / lambda(k);
    if (!(ratio > 0.0)) throw ContractError("unflaschka: matrix is not in the Flaschka image");
    x(k) = std::log(ratio);
  }
  return make_state(std::move(x), std::move(p), alpha, lambda);
}

Matrix flaschka_tangent(const TodaState& s, const CanonicalVelocity& v) {
  const auto n = s.p.size();
  Matrix t = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) t(k, k) = v.dp(k);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    t(k + 1, k) = s.lambda(k) * checked_exp(s.x(k)) * v.dx(k);
  }
  return t;
}

Observable toda_hk(const LaxPair& lp, int k) {
  if (k < 1) throw ContractError("toda_hk: k must be >= 1");
  const Matrix a = lp.a;
  Observable h;
  h.dim = static_cast<int>(a.rows());
  h.eval = [a, k](const Matrix& rho) {
    const Matrix lax = rho + a;
    Matrix power = lax;
    for (int i = 1; i < k; ++i) power = power * lax;
    return power.trace() / static_cast<double>(k);
  };
  h.grad = [a, k](const Matrix& rho) {
    const Matrix lax = rho + a;
    Matrix power = Matrix::Identity(a.rows(), a.cols());
    for (int i = 1; i < k; ++i) power = power * lax;
    return project_upper_plus(power);
  };
  if (k == 1) h.linear_gradient = Matrix::Identity(a.rows(), a.cols());
  return h;
}

Matrix lax_field(const Matrix& rho_minus, const Matrix& a) {
  require_same_dim(rho_minus, a, "lax_field");
  const Matrix lax = rho_minus + a;
  return project_lower(commutator(rho_minus, project_upper_plus(lax)));
}

Matrix lax_field(const LaxPair& lp) { return lax_field(lp.rho_minus, lp.a); }

double intertwining_defect(const TodaState& s) {
  const Matrix pushed = flaschka_tangent(s, canonical_field(s));
  return operator_norm(pushed - lax_field(flaschka(s)));
}

double involution_defect(const LaxPair& lp, int j, int k) {
  const BracketSpec spec = BracketSpec::lower_coinduced();
  return std::abs(lp_bracket(spec, toda_hk(lp, j), toda_hk(lp, k), lp.rho_minus));
}

RealVector phase_vector(const TodaState& s) {
  RealVector z(s.x.size() + s.p.size());
  z << s.x, s.p;
  return z;
}

TodaState with_phase(const TodaState& weights, const RealVector& z) {
  const auto n = weights.p.size();
  if (z.size() != 2 * n - 1) throw DimensionError("with_phase: phase vector has wrong size");
  TodaState s = weights;
  s.x = z.head(n - 1);
  s.p = z.tail(n);
  return s;
}

RealVector canonical_phase_field(const TodaState& weights, const RealVector& z) {
  const auto n = weights.p.size();
  if (z.size() != 2 * n - 1) throw DimensionError("canonical_phase_field: wrong size");
  // Integrator stages need not satisfy sum p = 0 exactly; evaluate the
  // formulas without the state validation.
  RealVector dz = RealVector::Zero(z.size());
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    dz(k) = z(n - 1 + k) - z(n + k);
    const double force = weights.alpha(k) * weights.lambda(k) * checked_exp(z(k));
    dz(n - 1 + k) -= force;
    dz(n + k) += force;
  }
  return dz;
}

}  // namespace lps::toda
