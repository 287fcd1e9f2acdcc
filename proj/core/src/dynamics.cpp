#include "lps/dynamics.hpp"

#include <charconv>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace lps {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::RK4: return "RK4";
    case Scheme::IsospectralExp: return "IsospectralExp";
  }
  return "?";
}

void IntegratorConfig::validate() const {
  if (!std::isfinite(dt) || !std::isfinite(t_end)) {
    throw ContractError("IntegratorConfig: dt and t_end must be finite");
  }
  if (!(dt > 0.0) || !(dt <= t_end)) {
    throw ContractError("IntegratorConfig: need 0 < dt <= t_end");
  }
  if (record_stride < 1) throw ContractError("IntegratorConfig: record_stride must be >= 1");
}

std::size_t IntegratorConfig::steps() const {
  const double ratio = t_end / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * nearest) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(ratio));
}

Matrix matrix_exponential(const Matrix& m) {
  require_square(m, "matrix_exponential");
  if (!m.allFinite()) throw NumericalError("matrix_exponential: non-finite input");
  Matrix out = m.exp();
  if (!out.allFinite()) throw NumericalError("matrix_exponential: overflow");
  return out;
}

Matrix isospectral_step(const std::function<Matrix(const Matrix&)>& hgrad, const Matrix& rho,
                        double dt) {
  require_square(rho, "isospectral_step");
  const Matrix g0 = hgrad(rho);
  const Matrix mid = rho + (0.5 * dt) * commutator(g0, rho);
  const Matrix g_mid = hgrad(mid);
  const Matrix q = matrix_exponential(dt * g_mid);
  const Matrix q_inv = matrix_exponential(-dt * g_mid);
  Matrix next = q * rho * q_inv;
  if (!next.allFinite()) throw NumericalError("isospectral_step: non-finite state produced");
  return next;
}

Trajectory<Matrix> evolve_lvn(const std::function<Matrix(const Matrix&)>& hgrad, Matrix rho0,
                              const IntegratorConfig& cfg,
                              const std::vector<Monitor<Matrix>>& monitors) {
  if (cfg.scheme == Scheme::IsospectralExp) {
    auto step = [&hgrad](const Matrix& rho, double h) { return isospectral_step(hgrad, rho, h); };
    return integrate(step, std::move(rho0), cfg, monitors);
  }
  std::function<Matrix(const Matrix&)> field = [&hgrad](const Matrix& rho) {
    return commutator(hgrad(rho), rho);
  };
  return evolve<Matrix>(field, std::move(rho0), cfg, monitors);
}

Monitor<Matrix> observable_monitor(std::string name, Observable f) {
  return {std::move(name), [f = std::move(f)](const Matrix& rho) { return f(rho).real(); }};
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::vector<std::string> matrix_state_columns(int n) {
  std::vector<std::string> cols;
  cols.reserve(static_cast<std::size_t>(2 * n * n));
  const std::string sep = n >= 10 ? "_" : "";
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const std::string idx = std::to_string(i) + sep + std::to_string(j);
      cols.push_back("re_" + idx);
      cols.push_back("im_" + idx);
    }
  }
  return cols;
}

std::vector<double> flatten_matrix(const Matrix& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.push_back(m(i, j).real());
      out.push_back(m(i, j).imag());
    }
  }
  return out;
}

void write_csv(std::ostream& os, const Trajectory<Matrix>& traj) {
  const int n = traj.states.empty() ? 0 : static_cast<int>(traj.states.front().rows());
  write_csv<Matrix>(os, traj, matrix_state_columns(n), flatten_matrix);
}

}  // namespace lps
