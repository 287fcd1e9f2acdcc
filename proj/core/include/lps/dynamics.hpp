#pragma once

// Fixed step integration of Hamiltonian flows.
//
// Two steppers are provided: classical RK4 on any vector space state, and an
// isospectral Lie group step for Liouville-von Neumann type flows
// rho' = [G(rho), rho]:
//
//   rho_mid = rho + dt/2 [G(rho), rho]
//   Q       = exp(dt G(rho_mid))
//   rho_new = Q rho Q^-1
//
// which is second order and keeps the spectrum of rho up to roundoff.

#include <cmath>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "lps/error.hpp"
#include "lps/operator_core.hpp"
#include "lps/poisson.hpp"

namespace lps {

enum class Scheme { RK4, IsospectralExp };

std::string_view to_string(Scheme s);

struct IntegratorConfig {
  Scheme scheme = Scheme::RK4;
  double dt = 1e-3;
  double t_end = 1.0;
  int record_stride = 1;

  /// Throws ContractError unless 0 < dt <= t_end, both finite, stride >= 1.
  void validate() const;
  /// Number of steps; the last one is shortened if t_end is not a multiple
  /// of dt.
  std::size_t steps() const;
};

template <class State>
struct Monitor {
  std::string name;
  std::function<double(const State&)> fn;
};

template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<std::string> monitor_names;
  /// monitors[k][i] is monitor k at times[i].
  std::vector<std::vector<double>> monitors;

  std::size_t size() const { return times.size(); }
};

namespace detail {

inline bool finite(double x) { return std::isfinite(x); }

template <class Derived>
bool finite(const Eigen::DenseBase<Derived>& x) {
  return x.allFinite();
}

}  // namespace detail

/// One classical Runge-Kutta step. Throws NumericalError on NaN/Inf.
template <class State, class Field>
State rk4_step(const Field& field, const State& s, double dt) {
  const State k1 = field(s);
  const State k2 = field(State(s + (0.5 * dt) * k1));
  const State k3 = field(State(s + (0.5 * dt) * k2));
  const State k4 = field(State(s + dt * k3));
  State next = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!detail::finite(next)) throw NumericalError("rk4_step: non-finite state produced");
  return next;
}

/// Scaling and squaring with a Pade approximant.
Matrix matrix_exponential(const Matrix& m);

Matrix isospectral_step(const std::function<Matrix(const Matrix&)>& hgrad, const Matrix& rho,
                        double dt);

/// Drives a stepper `State step(const State&, double dt)` over cfg, recording
/// the state and monitors at step 0, every record_stride steps, and the end.
template <class State, class Stepper>
Trajectory<State> integrate(const Stepper& step, State s0, const IntegratorConfig& cfg,
                            const std::vector<Monitor<State>>& monitors = {}) {
  cfg.validate();
  const std::size_t n = cfg.steps();
  Trajectory<State> traj;
  for (const auto& m : monitors) traj.monitor_names.push_back(m.name);
  traj.monitors.resize(monitors.size());

  auto record = [&](double t, const State& s) {
    traj.times.push_back(t);
    traj.states.push_back(s);
    for (std::size_t k = 0; k < monitors.size(); ++k) {
      traj.monitors[k].push_back(monitors[k].fn(s));
    }
  };

  State s = std::move(s0);
  record(0.0, s);
  for (std::size_t i = 1; i <= n; ++i) {
    const double t_prev = static_cast<double>(i - 1) * cfg.dt;
    const double h = i == n ? cfg.t_end - t_prev : cfg.dt;
    s = step(s, h);
    if (i % static_cast<std::size_t>(cfg.record_stride) == 0 || i == n) {
      record(i == n ? cfg.t_end : static_cast<double>(i) * cfg.dt, s);
    }
  }
  return traj;
}

/// RK4 trajectory of s' = field(s). Throws ContractError for other schemes.
template <class State>
Trajectory<State> evolve(const std::function<State(const State&)>& field, State s0,
                         const IntegratorConfig& cfg,
                         const std::vector<Monitor<State>>& monitors = {}) {
  if (cfg.scheme != Scheme::RK4) {
    throw ContractError("evolve: only RK4 applies to a general vector field");
  }
  auto step = [&field](const State& s, double h) { return rk4_step(field, s, h); };
  return integrate(step, std::move(s0), cfg, monitors);
}

/// Trajectory of rho' = [hgrad(rho), rho] with either scheme.
Trajectory<Matrix> evolve_lvn(const std::function<Matrix(const Matrix&)>& hgrad, Matrix rho0,
                              const IntegratorConfig& cfg,
                              const std::vector<Monitor<Matrix>>& monitors = {});

/// Real part of an observable as a monitor.
Monitor<Matrix> observable_monitor(std::string name, Observable f);

/// max_t ||J(s_t) - J(s_0)||_op
template <class State>
double noether_drift(const std::function<Matrix(const State&)>& momentum,
                     const Trajectory<State>& traj) {
  if (traj.states.empty()) throw ContractError("noether_drift: empty trajectory");
  const Matrix j0 = momentum(traj.states.front());
  double worst = 0.0;
  for (const auto& s : traj.states) worst = std::max(worst, operator_norm(momentum(s) - j0));
  return worst;
}

/// || J(sigma_up(t)(p)) - sigma_down(t)(J(p)) || in the operator norm, both
/// flows integrated with RK4 at cfg.dt. The downstairs flow is the
/// Hamiltonian field of h_down for the given bracket.
template <class Up>
double collective_defect(const std::function<Matrix(const Up&)>& momentum,
                         const BracketSpec& spec, const Observable& h_down,
                         const std::function<Up(const Up&)>& field_up, const Up& p, double t,
                         IntegratorConfig cfg) {
  if (t == 0.0) return 0.0;
  cfg.scheme = Scheme::RK4;
  cfg.t_end = t;
  cfg.record_stride = static_cast<int>(cfg.steps());
  const auto up = evolve<Up>(field_up, p, cfg);
  std::function<Matrix(const Matrix&)> field_down = [&spec, &h_down](const Matrix& rho) {
    return ham_field(spec, h_down, rho);
  };
  const auto down = evolve<Matrix>(field_down, momentum(p), cfg);
  return operator_norm(momentum(up.states.back()) - down.states.back());
}

/// 17 significant digits, shortest round-trip form.
std::string format_double(double x);

/// CSV with header t,<state columns>,<monitor names>.
template <class State>
void write_csv(std::ostream& os, const Trajectory<State>& traj,
               const std::vector<std::string>& state_columns,
               const std::function<std::vector<double>(const State&)>& flatten) {
  os << 't';
  for (const auto& c : state_columns) os << ',' << c;
  for (const auto& m : traj.monitor_names) os << ',' << m;
  os << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << format_double(traj.times[i]);
    const auto values = flatten(traj.states[i]);
    if (values.size() != state_columns.size()) {
      throw ContractError("write_csv: flattened state does not match the header");
    }
    for (double v : values) os << ',' << format_double(v);
    for (const auto& series : traj.monitors) os << ',' << format_double(series[i]);
    os << '\n';
  }
}

/// Matrix states as re_ij,im_ij columns (1-based, row-major). Indices are
/// joined with '_' when N >= 10 to keep names unambiguous.
std::vector<std::string> matrix_state_columns(int n);
std::vector<double> flatten_matrix(const Matrix& m);
void write_csv(std::ostream& os, const Trajectory<Matrix>& traj);

}  // namespace lps
