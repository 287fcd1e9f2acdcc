// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances and instance counts are fixed.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lps/lps.hpp"
#include "oracles.hpp"

namespace {

using namespace lps;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Audit {
 public:
  // Records the worst value seen for a named quantity against its bound.
  void at_most(const std::string& name, double value, double bound) {
    auto it = std::find_if(items_.begin(), items_.end(), [&](const Item& i) { return i.name == name; });
    if (it == items_.end()) {
      items_.push_back({name, value, bound, false});
    } else {
      it->worst = std::max(it->worst, value);
    }
  }
  void at_least(const std::string& name, double value, double bound) {
    auto it = std::find_if(items_.begin(), items_.end(), [&](const Item& i) { return i.name == name; });
    if (it == items_.end()) {
      items_.push_back({name, value, bound, true});
    } else {
      it->worst = std::min(it->worst, value);
    }
  }
  void require(const std::string& name, bool ok) { at_most(name, ok ? 0.0 : 1.0, 0.0); }

  Outcome outcome() const {
    Outcome o;
    std::ostringstream os;
    bool first = true;
    for (const auto& i : items_) {
      const bool ok = i.lower ? i.worst >= i.bound : i.worst <= i.bound;
      o.pass = o.pass && ok;
      if (!first) os << "; ";
      first = false;
      os << i.name << ' ' << format(i.worst) << (i.lower ? " >= " : " <= ") << format(i.bound)
         << (ok ? "" : " VIOLATED");
    }
    o.detail = os.str();
    return o;
  }

 private:
  struct Item {
    std::string name;
    double worst;
    double bound;
    bool lower;
  };
  static std::string format(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
  }
  std::vector<Item> items_;
};

Matrix normalized(const Matrix& m) { return m / m.norm(); }

IntegratorConfig config(Scheme s, double dt, double t_end, int stride) {
  IntegratorConfig cfg;
  cfg.scheme = s;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.record_stride = stride;
  return cfg;
}

Matrix unitary_propagator(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    phases(k) = std::exp(Complex(0.0, -t * es.eigenvalues()(k)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<double> hermitian_spectrum(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// ---------------------------------------------------------------------------

Outcome bracket_axioms() {
  Audit audit;
  FixtureStream rng(1001, FixtureKind::General);
  const std::vector<BracketSpec> specs{BracketSpec::full(), BracketSpec::lower_coinduced(),
                                       BracketSpec::hermitian_real()};
  auto state = [&](const BracketSpec& spec, int n) -> Matrix {
    switch (spec.kind()) {
      case BracketSpec::Kind::LowerCoinduced: return normalized(rng.lower(n));
      case BracketSpec::Kind::HermitianReal: return normalized(rng.skew_hermitian(n));
      default: return normalized(rng.matrix(n));
    }
  };
  // On the skew-Hermitian space observables must be real valued: tr(A rho B rho)
  // is real there for Hermitian A, B, and tr(A rho) for skew-Hermitian A.
  bool real_space = false;
  auto coefficient = [&](int n) {
    return normalized(real_space ? rng.hermitian(n) : rng.matrix(n));
  };
  auto quad = [&](int n) { return quadratic_observable(coefficient(n), coefficient(n)); };
  auto lin = [&](int n) {
    return linear_observable(normalized(real_space ? rng.skew_hermitian(n) : rng.matrix(n)));
  };
  for (int instance = 0; instance < 100; ++instance) {
    const int n = 2 + instance % 5;
    const BracketSpec& spec = specs[instance % specs.size()];
    real_space = spec.kind() == BracketSpec::Kind::HermitianReal;
    const Matrix rho = state(spec, n);
    const Observable f = quad(n), g = quad(n), h = quad(n);
    audit.at_most("antisymmetry", std::abs(lp_bracket(spec, f, g, rho) + lp_bracket(spec, g, f, rho)),
                  1e-12);
    audit.at_most("leibniz", leibniz_defect(spec, f, g, h, rho), 1e-12);
    audit.at_most("jacobi(linear)", jacobi_defect(spec, lin(n), lin(n), lin(n), rho), 1e-12);
    audit.at_most("jacobi(quadratic)", jacobi_defect(spec, f, g, h, rho, kNestedFdStep), 1e-5);
  }
  return audit.outcome();
}

Outcome lvn_conservation() {
  Audit audit;
  FixtureStream rng(1002, FixtureKind::Hermitian);
  const int n = 6;
  const Matrix h = rng.hermitian(n);
  const Matrix rho0 = rng.psd(n);
  const Matrix gen = Complex(0.0, -1.0) * h;
  const std::function<Matrix(const Matrix&)> hgrad = [gen](const Matrix&) { return gen; };

  std::vector<Monitor<Matrix>> monitors;
  for (int k = 1; k <= 4; ++k) monitors.push_back(observable_monitor("T" + std::to_string(k), casimir(k, n)));
  const auto rk4 = evolve_lvn(hgrad, rho0, config(Scheme::RK4, 1e-3, 10.0, 100), monitors);
  for (std::size_t k = 0; k < monitors.size(); ++k) {
    const double c0 = rk4.monitors[k].front();
    double worst = 0.0;
    for (double c : rk4.monitors[k]) worst = std::max(worst, std::abs(c - c0) / std::abs(c0));
    audit.at_most("rk4 rel drift tr(rho^" + std::to_string(k + 1) + ")", worst, 1e-8);
  }

  const auto iso = evolve_lvn(hgrad, rho0, config(Scheme::IsospectralExp, 1e-3, 10.0, 100));
  const auto spec0 = hermitian_spectrum(rho0);
  double worst = 0.0;
  for (const auto& s : iso.states) worst = std::max(worst, max_diff(hermitian_spectrum(s), spec0));
  audit.at_most("isospectral eigenvalue drift", worst, 1e-11);
  return audit.outcome();
}

std::vector<int> random_blocks(FixtureStream& rng, int n) {
  std::vector<int> sizes;
  int left = n;
  while (left > 0) {
    const int s = 1 + static_cast<int>(rng.uniform() * std::min(left, 3));
    sizes.push_back(std::min(s, left));
    left -= sizes.back();
  }
  return sizes;
}

DecompositionOfUnity rotated_blocks(FixtureStream& rng, int n) {
  const Matrix u = rng.unitary(n);
  const auto blocks = DecompositionOfUnity::diagonal_blocks(random_blocks(rng, n));
  std::vector<Matrix> ps;
  for (const auto& p : blocks.projectors()) {
    ps.push_back(u * p * u.adjoint());
  }
  return DecompositionOfUnity(ps);
}

std::vector<ReductionOp> groups(FixtureStream& rng) {
  std::vector<ReductionOp> out;
  // Z_n generated by the cyclic shift
  for (int n : {2, 5, 8}) {
    Matrix shift = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) shift((j + 1) % n, j) = 1.0;
    out.push_back(ReductionOp::group_average(generate_group({shift})));
  }
  // S_3 on C^3
  Matrix swap = Matrix::Zero(3, 3), cycle = Matrix::Zero(3, 3);
  swap(1, 0) = swap(0, 1) = swap(2, 2) = 1.0;
  cycle(1, 0) = cycle(2, 1) = cycle(0, 2) = 1.0;
  out.push_back(ReductionOp::group_average(generate_group({swap, cycle})));
  // conjugated sign group (Z_2)^3 on C^6
  const Matrix u = rng.unitary(6);
  std::vector<Matrix> gens;
  for (int b = 0; b < 3; ++b) {
    Matrix d = Matrix::Identity(6, 6);
    d(2 * b, 2 * b) = -1.0;
    gens.push_back(u * d * u.adjoint());
  }
  out.push_back(ReductionOp::group_average(generate_group(gens)));
  // Z_4 phases on C^4
  Matrix phase = Matrix::Zero(4, 4);
  phase.diagonal() << 1.0, Complex(0, 1), -1.0, Complex(0, -1);
  out.push_back(ReductionOp::group_average(generate_group({phase})));
  return out;
}

Outcome reduction_laws() {
  Audit audit;
  FixtureStream rng(1003, FixtureKind::General);
  FixtureStream psd_rng(1003, FixtureKind::Psd);
  const BracketSpec full = BracketSpec::full();
  const auto group_ops = groups(rng);
  for (auto kind : {ReductionOp::Kind::Measurement, ReductionOp::Kind::LowerTriangularize,
                    ReductionOp::Kind::GroupAverage}) {
    const std::string tag(to_string(kind));
    int violations = 0;
    for (int instance = 0; instance < 100; ++instance) {
      const int n = 2 + instance % 7;
      const ReductionOp r = [&] {
        switch (kind) {
          case ReductionOp::Kind::Measurement: return ReductionOp::measurement(rotated_blocks(rng, n));
          case ReductionOp::Kind::LowerTriangularize:
            return ReductionOp::lower_triangularize(rotated_blocks(rng, n));
          default: return group_ops[instance % group_ops.size()];
        }
      }();
      const int d = r.dim();
      const Matrix rho = rng.matrix(d);
      const Matrix once = lps::apply(r, rho);
      audit.at_most(tag + " idempotence", oracle::max_abs(lps::apply(r, once) - once), 1e-12);
      if (!contraction_check(r, rho)) ++violations;
      audit.at_most(tag + " closure", closure_defect(r, rng.matrix(d), rng.matrix(d)), 1e-12);
      const Observable f = linear_observable(apply_dual(r, rng.matrix(d)));
      const Observable g = linear_observable(apply_dual(r, rng.matrix(d)));
      audit.at_most(tag + " poisson projection", poisson_map_defect(as_map(r), full, full, f, g, rho),
                    1e-12);
      if (kind != ReductionOp::Kind::LowerTriangularize) {
        audit.require(tag + " psd+trace", positivity_check(r, psd_rng.psd(d)).value_or(false));
      }
    }
    audit.at_most(tag + " contraction failures/100", violations, 0);
  }
  // Deterministic witness: the all-ones 2x2 matrix.
  const Matrix ones = Matrix::Constant(2, 2, 1.0);
  const auto lower = ReductionOp::lower_triangularize(DecompositionOfUnity::standard_basis(2));
  audit.at_most("lower_triangularize ||R(ones)||_1 - ||ones||_1",
                trace_norm(lps::apply(lower, ones)) - trace_norm(ones), 1e-10);
  return audit.outcome();
}

Outcome toda_suite() {
  Audit audit;
  const int n = 8;
  FixtureStream rng(1004, FixtureKind::Toda);
  for (int i = 0; i < 100; ++i) audit.at_most("intertwining", toda::intertwining_defect(rng.toda_state(n)), 1e-12);
  for (int i = 0; i < 50; ++i) {
    const toda::LaxPair lp = toda::flaschka(rng.toda_state(n));
    for (int j = 1; j <= 5; ++j)
      for (int k = 1; k <= 5; ++k) audit.at_most("involution", toda::involution_defect(lp, j, k), 1e-10);
  }

  const toda::TodaState s0 = rng.toda_state(n);
  const toda::LaxPair lp0 = toda::flaschka(s0);
  const auto cfg = config(Scheme::RK4, 1e-3, 10.0, 100);
  std::vector<double> h0(4);
  for (int k = 1; k <= 4; ++k) h0[k - 1] = toda::toda_hk(lp0, k)(lp0.rho_minus).real();
  const auto spec0 = oracle::sorted_real_eigenvalues(lp0.lax);
  double spectral_scale = 0.0;
  for (double e : spec0) spectral_scale = std::max(spectral_scale, std::abs(e));

  auto audit_lax = [&](const std::string& side, const Matrix& rho_minus) {
    const toda::LaxPair lp = toda::make_lax_pair(rho_minus, s0.alpha);
    for (int k = 1; k <= 4; ++k) {
      const double hk = toda::toda_hk(lp, k)(lp.rho_minus).real();
      audit.at_most(side + " h" + std::to_string(k) + " rel drift",
                    std::abs(hk - h0[k - 1]) / std::max(1.0, std::abs(h0[k - 1])), 1e-8);
    }
    audit.at_most(side + " spectrum rel drift",
                  max_diff(oracle::sorted_real_eigenvalues(lp.lax), spec0) / spectral_scale, 1e-8);
  };

  const std::function<RealVector(const RealVector&)> canonical = [&s0](const RealVector& z) {
    return toda::canonical_phase_field(s0, z);
  };
  const auto up = evolve<RealVector>(canonical, toda::phase_vector(s0), cfg);
  for (const auto& z : up.states) audit_lax("canonical", toda::flaschka(toda::with_phase(s0, z)).rho_minus);

  const Matrix a = lp0.a;
  const std::function<Matrix(const Matrix&)> lax = [a](const Matrix& rho) { return toda::lax_field(rho, a); };
  const auto down = evolve<Matrix>(lax, lp0.rho_minus, cfg);
  for (const auto& rho : down.states) audit_lax("lax", rho);
  return audit.outcome();
}

Outcome collective_flow() {
  Audit audit;
  FixtureStream rng(1005, FixtureKind::Toda);
  for (int trial = 0; trial < 3; ++trial) {
    const toda::TodaState s0 = rng.toda_state(8);
    const std::function<Matrix(const RealVector&)> momentum = [s0](const RealVector& z) {
      return toda::flaschka(toda::with_phase(s0, z)).rho_minus;
    };
    const std::function<RealVector(const RealVector&)> field = [s0](const RealVector& z) {
      return toda::canonical_phase_field(s0, z);
    };
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    audit.at_most("||J(sigma_up) - sigma_down(J)||",
                  collective_defect<RealVector>(momentum, BracketSpec::lower_coinduced(),
                                                toda::toda_hk(toda::flaschka(s0), 2), field,
                                                toda::phase_vector(s0), 1.0, cfg),
                  1e-6);
  }
  return audit.outcome();
}

Outcome kks_checks() {
  Audit audit;
  FixtureStream rng(1006, FixtureKind::General);
  const BracketSpec full = BracketSpec::full();
  for (int instance = 0; instance < 100; ++instance) {
    const int n = 1 + instance % 6;
    Matrix rho = rng.matrix(n);
    if (instance % 3 == 1) {
      // degenerate spectrum: two eigenvalues, rotated
      Matrix d = Matrix::Identity(n, n);
      for (int k = 0; k < n / 2; ++k) d(k, k) = -2.0;
      const Matrix u = rng.unitary(n);
      rho = u * d * u.adjoint();
    } else if (instance % 3 == 2) {
      rho = rng.hermitian(n);
    }
    const Matrix x = rng.matrix(n), y = rng.matrix(n), z = rng.matrix(n);
    const Complex s(rng.uniform(-1, 1), rng.uniform(-1, 1));
    audit.at_most("bilinearity",
                  std::abs(kks_eval(rho, s * x + z, y) - s * kks_eval(rho, x, y) - kks_eval(rho, z, y)),
                  1e-12);
    audit.at_most("antisymmetry", std::abs(kks_eval(rho, x, y) + kks_eval(rho, y, x)), 1e-12);

    // commutant perturbations: identity, polynomials in rho, and block terms
    std::vector<Matrix> perturbations{Matrix::Identity(n, n), 0.4 * rho - 0.3 * rho * rho};
    if (instance % 3 == 1) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
      const Matrix v = es.eigenvectors();
      Matrix block = Matrix::Zero(n, n);
      const Matrix w = rng.matrix(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (std::abs(es.eigenvalues()(i) - es.eigenvalues()(j)) < 1e-9) block(i, j) = w(i, j);
      perturbations.push_back(v * block * v.adjoint());
    }
    for (const auto& p : perturbations) {
      audit.at_most("well-definedness", kks_welldefined_defect(rho, x, x + p, y), 1e-10);
    }

    const Matrix g = rng.unitary(n);
    audit.at_most("conjugation invariance (unitary)",
                  std::abs(kks_eval(coadjoint_act(g, rho), g * x * g.adjoint(), g * y * g.adjoint()) -
                           kks_eval(rho, x, y)),
                  1e-10);
    const Matrix gl = Matrix::Identity(n, n) + 0.3 * rng.matrix(n);
    const Matrix gli = gl.inverse();
    audit.at_most("conjugation invariance (general)",
                  std::abs(kks_eval(coadjoint_act(gl, rho), gl * x * gli, gl * y * gli) - kks_eval(rho, x, y)),
                  1e-10);
    audit.at_most("lp_bracket vs kks",
                  std::abs(lp_bracket(full, linear_observable(x), linear_observable(y), rho) -
                           kks_eval(rho, x, y)),
                  1e-12);
    audit.require("characteristic_rank vs null-space oracle",
                  characteristic_rank(rho) == n * n - oracle::commutant_dimension(rho));
  }
  return audit.outcome();
}

Outcome reduction_condition() {
  Audit audit;
  FixtureStream rng(1007, FixtureKind::General);
  const MatrixMap skew{0, 0, [](const Matrix& m) { return skew_hermitian_part(m); },
                       [](const Matrix& x) { return skew_hermitian_part(x); }};
  for (int instance = 0; instance < 100; ++instance) {
    const int n = 2 + instance % 7;
    const auto meas = as_map(ReductionOp::measurement(rotated_blocks(rng, n)));
    MatrixMap skew_n = skew;
    skew_n.src_dim = skew_n.dst_dim = n;
    const Observable f = linear_observable(rng.matrix(n));
    const Observable g = linear_observable(rng.matrix(n));
    const Matrix rho = rng.matrix(n);
    audit.at_most("measurement", reduction_condition_defect(meas, BracketSpec::full(), f, g, rho), 1e-12);
    audit.at_most("skew_hermitian_part",
                  reduction_condition_defect(skew_n, BracketSpec::hermitian_real(), f, g, rho), 1e-12);
  }
  return audit.outcome();
}

Outcome order_tests() {
  Audit audit;
  FixtureStream rng(1008, FixtureKind::Hermitian);
  const int n = 4;
  const Matrix h = rng.hermitian(n);
  const Matrix rho0 = rng.hermitian(n);

  // RK4 on rho' = [-iH, rho] against the exact unitary conjugation.
  const Matrix gen = Complex(0.0, -1.0) * h;
  const std::function<Matrix(const Matrix&)> linear = [gen](const Matrix&) { return gen; };
  const Matrix u = unitary_propagator(h, 1.0);
  const Matrix exact = u * rho0 * u.adjoint();
  auto rk4_error = [&](double dt) {
    return oracle::max_abs(evolve_lvn(linear, rho0, config(Scheme::RK4, dt, 1.0, 1 << 20)).states.back() - exact);
  };
  const double rk4_ratio = rk4_error(0.1) / rk4_error(0.05);
  audit.at_least("rk4 ratio", rk4_ratio, 16.0 * 0.8);
  audit.at_most("rk4 ratio", rk4_ratio, 16.0 * 1.2);

  // Isospectral step on the nonlinear flow with Dh = H + rho^2 against a
  // fine RK4 reference (a constant generator would be integrated exactly).
  const std::function<Matrix(const Matrix&)> cubic = [h](const Matrix& rho) {
    return Matrix(Complex(0.0, -1.0) * (h + rho * rho));
  };
  const Matrix reference = evolve_lvn(cubic, rho0, config(Scheme::RK4, 1e-4, 1.0, 1 << 20)).states.back();
  auto iso_error = [&](double dt) {
    return oracle::max_abs(
        evolve_lvn(cubic, rho0, config(Scheme::IsospectralExp, dt, 1.0, 1 << 20)).states.back() - reference);
  };
  const double iso_ratio = iso_error(0.02) / iso_error(0.01);
  audit.at_least("isospectral ratio", iso_ratio, 4.0 * 0.8);
  audit.at_most("isospectral ratio", iso_ratio, 4.0 * 1.2);
  return audit.outcome();
}

Outcome negative_control() {
  Audit audit;
  // f = tr(E21 rho), g = tr(E12 rho) at rho = E11: 0 on the lower space, -1 on
  // the full space.
  const Observable f = linear_observable(elementary(2, 1, 0));
  const Observable g = linear_observable(elementary(2, 0, 1));
  audit.at_least("inclusion defect",
                 poisson_map_defect(lower_inclusion_map(2), BracketSpec::lower_coinduced(),
                                    BracketSpec::full(), f, g, elementary(2, 0, 0)),
                 1e-3);
  return audit.outcome();
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
  double budget_s;  // 0 = no runtime bound
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "bracket axioms", bracket_axioms, 5.0},
      {2, "casimir and isospectral conservation", lvn_conservation, 10.0},
      {3, "quantum reduction laws", reduction_laws, 0.0},
      {4, "toda suite", toda_suite, 10.0},
      {5, "collective flow commutation", collective_flow, 0.0},
      {6, "kks checks", kks_checks, 0.0},
      {7, "reduction condition", reduction_condition, 0.0},
      {8, "integrator order", order_tests, 0.0},
      {9, "negative control", negative_control, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = std::to_string(secs).substr(0, std::to_string(secs).find('.') + 3) + " s";
    if (c.budget_s > 0) {
      const bool in_time = secs < c.budget_s;
      o.pass = o.pass && in_time;
      timing += in_time ? " < " : " EXCEEDS ";
      timing += std::to_string(static_cast<int>(c.budget_s)) + " s";
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d (%s) [%s]: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, timing.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
