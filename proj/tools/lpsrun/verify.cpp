#include "verify.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>

#include "lps/lps.hpp"

namespace lpsrun {

using namespace lps;

namespace {

class Group {
 public:
  explicit Group(std::string module) : module_(std::move(module)) {}

  void cover(const std::string& op) { covered_.insert(module_ + "." + op); }

  // Keeps the worst defect per check name.
  void at_most(const std::string& name, double defect, double tol) {
    const std::string full = module_ + "." + name;
    auto it = index_.find(full);
    if (it == index_.end()) {
      index_[full] = checks_.size();
      checks_.push_back({full, defect, tol, defect <= tol});
      return;
    }
    Check& c = checks_[it->second];
    c.defect = std::max(c.defect, defect);
    c.pass = c.defect <= c.tol;
  }
  void require(const std::string& name, bool ok) { at_most(name, ok ? 0.0 : 1.0, 0.0); }

  std::vector<Check> checks() const { return checks_; }
  const std::set<std::string>& covered() const { return covered_; }

 private:
  std::string module_;
  std::vector<Check> checks_;
  std::map<std::string, std::size_t> index_;
  std::set<std::string> covered_;
};

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
Matrix normalized(const Matrix& m) { return m / m.norm(); }

IntegratorConfig config(Scheme s, double dt, double t_end, int stride) {
  IntegratorConfig cfg;
  cfg.scheme = s;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.record_stride = stride;
  return cfg;
}

std::vector<double> hermitian_spectrum(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

std::vector<double> sorted_real_spectrum(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

int dim_for(const VerifyOptions& o, int i) { return 2 + i % std::max(1, o.max_dim - 1); }

// ---------------------------------------------------------------------------

Group operator_core_group(const VerifyOptions& o) {
  Group g("operator_core");
  FixtureStream rng(o.seed, FixtureKind::General, 1);
  for (int i = 0; i < o.instances; ++i) {
    const int n = dim_for(o, i);
    const Matrix x = rng.matrix(n), y = rng.matrix(n), z = rng.matrix(n), rho = rng.matrix(n);
    g.cover("commutator");
    g.at_most("commutator.jacobi_identity",
              max_abs(commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) +
                      commutator(z, commutator(x, y))),
              1e-12);
    g.require("commutator.antisymmetry", commutator(x, y) == -commutator(y, x));

    g.cover("trace_pairing");
    g.at_most("trace_pairing.ad_invariance",
              std::abs(trace_pairing(commutator(x, y), rho) - trace_pairing(x, commutator(y, rho))), 1e-12);

    g.cover("trace_norm");
    const Matrix u = rng.unitary(n), v = rng.unitary(n);
    g.at_most("trace_norm.unitary_invariance", std::abs(trace_norm(u * rho * v) - trace_norm(rho)), 1e-11);
    g.at_most("trace_norm.pairing_bound",
              std::max(0.0, std::abs(trace_pairing(x, rho)) - operator_norm(x) * trace_norm(rho)), 1e-12);

    g.cover("project_lower");
    g.cover("project_upper_plus");
    const Matrix low = project_lower(rho);
    g.require("project_lower.idempotent_and_lower",
              project_lower(low) == low && validate(ClassTag::LowerTriangular, low, 0.0));
    g.require("project_lower.complement", low + project_strictly_upper(rho) == rho);
    g.at_most("project_upper_plus.pairing_duality",
              std::abs(trace_pairing(project_upper_plus(x), low) - trace_pairing(x, low)), 1e-12);

    g.cover("skew_hermitian_part");
    const Matrix s = skew_hermitian_part(rho);
    g.at_most("skew_hermitian_part.idempotent", max_abs(skew_hermitian_part(s) - s), 1e-15);
    g.require("skew_hermitian_part.is_skew", validate(ClassTag::SkewHermitian, s));

    g.cover("validate");
    g.require("validate.tags", validate(ClassTag::Hermitian, rng.hermitian(n)) &&
                                   !validate(ClassTag::LowerTriangular, project_strictly_upper(x) + elementary(n, 0, n - 1)) &&
                                   validate(ClassTag::StrictlyUpper, project_strictly_upper(x)) &&
                                   validate_decomposition(DecompositionOfUnity::standard_basis(n)));
  }
  return g;
}

Group poisson_group(const VerifyOptions& o) {
  Group g("poisson_core");
  FixtureStream rng(o.seed, FixtureKind::General, 2);
  const std::vector<BracketSpec> specs{BracketSpec::full(), BracketSpec::lower_coinduced(),
                                       BracketSpec::hermitian_real()};
  for (int i = 0; i < o.instances; ++i) {
    const int n = dim_for(o, i);
    const BracketSpec& spec = specs[static_cast<std::size_t>(i) % specs.size()];
    const bool real_space = spec.kind() == BracketSpec::Kind::HermitianReal;
    const Matrix rho = spec.kind() == BracketSpec::Kind::LowerCoinduced ? normalized(rng.lower(n))
                       : real_space                                     ? normalized(rng.skew_hermitian(n))
                                                                        : normalized(rng.matrix(n));
    auto coeff = [&] { return normalized(real_space ? rng.hermitian(n) : rng.matrix(n)); };
    auto lin = [&] { return linear_observable(normalized(real_space ? rng.skew_hermitian(n) : rng.matrix(n))); };
    const Observable f = quadratic_observable(coeff(), coeff());
    const Observable h = quadratic_observable(coeff(), coeff());
    const Observable l = lin();
    const std::string tag(spec.kind() == BracketSpec::Kind::Full             ? "full"
                          : spec.kind() == BracketSpec::Kind::LowerCoinduced ? "lower"
                                                                             : "hermitian_real");

    g.cover("lp_bracket");
    g.at_most("lp_bracket.antisymmetry." + tag,
              std::abs(lp_bracket(spec, f, h, rho) + lp_bracket(spec, h, f, rho)), 1e-12);

    g.cover("ham_field");
    const Matrix field = ham_field(spec, h, rho);
    g.at_most("ham_field.defining_identity." + tag,
              std::abs(pair(spec, l.gradient(rho), field) -
                       static_cast<double>(ham_field_sign(spec)) * lp_bracket(spec, l, h, rho)),
              1e-12);

    g.cover("casimir");
    const Matrix full_rho = normalized(rng.matrix(n));
    for (int k = 1; k <= 4; ++k) {
      g.at_most("casimir.ham_field_vanishes", max_abs(ham_field(BracketSpec::full(), casimir(k, n), full_rho)),
                1e-12);
    }

    g.cover("jacobi_defect");
    g.at_most("jacobi_defect.linear." + tag, jacobi_defect(spec, lin(), lin(), lin(), rho), 1e-12);
    g.at_most("jacobi_defect.quadratic." + tag, jacobi_defect(spec, f, h, quadratic_observable(coeff(), coeff()), rho),
              1e-5);

    g.cover("leibniz_defect");
    g.at_most("leibniz_defect." + tag, leibniz_defect(spec, f, h, l, rho), 1e-12);

    g.cover("poisson_map_defect");
    const Observable a = linear_observable(rng.matrix(n)), b = linear_observable(rng.matrix(n));
    const Matrix any = rng.matrix(n);
    g.at_most("poisson_map_defect.identity", poisson_map_defect(identity_map(n), BracketSpec::full(),
                                                                BracketSpec::full(), a, b, any),
              1e-12);
    g.at_most("poisson_map_defect.lower_projection",
              poisson_map_defect(lower_projection_map(n), BracketSpec::full(), BracketSpec::lower_coinduced(),
                                 a, b, any),
              1e-12);

    g.cover("reduction_condition_defect");
    const MatrixMap skew{n, n, [](const Matrix& m) { return skew_hermitian_part(m); },
                         [](const Matrix& m) { return skew_hermitian_part(m); }};
    g.at_most("reduction_condition_defect.skew_hermitian_part",
              reduction_condition_defect(skew, BracketSpec::hermitian_real(), a, b, any), 1e-12);
    g.at_most("reduction_condition_defect.measurement",
              reduction_condition_defect(as_map(ReductionOp::measurement(DecompositionOfUnity::standard_basis(n))),
                                         BracketSpec::full(), a, b, any),
              1e-12);
  }
  // The lower inclusion is not Poisson; the defect must expose it.
  const double negative = poisson_map_defect(
      lower_inclusion_map(2), BracketSpec::lower_coinduced(), BracketSpec::full(),
      linear_observable(elementary(2, 1, 0)), linear_observable(elementary(2, 0, 1)), elementary(2, 0, 0));
  g.require("poisson_map_defect.negative_control_detected", negative > 1e-3);
  return g;
}

Group reduction_group(const VerifyOptions& o) {
  Group g("reduction");
  FixtureStream rng(o.seed, FixtureKind::General, 3);
  FixtureStream psd(o.seed, FixtureKind::Psd, 3);
  const BracketSpec full = BracketSpec::full();
  for (int i = 0; i < o.instances; ++i) {
    const int n = dim_for(o, i);
    const Matrix u = rng.unitary(n);
    std::vector<Matrix> ps;
    for (int k = 0; k < n; ++k) ps.push_back(u * elementary(n, k, k) * u.adjoint());
    Matrix shift = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) shift((j + 1) % n, j) = 1.0;
    const std::vector<ReductionOp> ops{ReductionOp::measurement(DecompositionOfUnity(ps)),
                                       ReductionOp::lower_triangularize(DecompositionOfUnity(ps)),
                                       ReductionOp::group_average(generate_group({shift}))};
    for (const auto& r : ops) {
      const std::string tag(to_string(r.kind()));
      const Matrix rho = rng.matrix(n), x = rng.matrix(n);
      g.cover("apply");
      const Matrix once = lps::apply(r, rho);
      g.at_most("apply.idempotence." + tag, max_abs(lps::apply(r, once) - once), 1e-12);
      g.cover("apply_dual");
      g.at_most("apply_dual.adjointness." + tag,
                std::abs(trace_pairing(apply_dual(r, x), rho) - trace_pairing(x, once)), 1e-12);
      g.cover("closure_defect");
      g.at_most("closure_defect." + tag, closure_defect(r, x, rng.matrix(n)), 1e-12);
      g.at_most("poisson_projection." + tag,
                poisson_map_defect(as_map(r), full, full, linear_observable(apply_dual(r, x)),
                                   linear_observable(apply_dual(r, rng.matrix(n))), rho),
                1e-12);
      g.cover("contraction_check");
      g.cover("positivity_check");
      if (r.kind() != ReductionOp::Kind::LowerTriangularize) {
        g.require("contraction_check." + tag, contraction_check(r, rho));
        g.require("positivity_check." + tag, positivity_check(r, psd.psd(n)).value_or(false));
      } else {
        g.require("positivity_check.not_applicable." + tag, !positivity_check(r, psd.psd(n)).has_value());
      }
    }
  }
  // Triangular truncation can increase the trace norm; the check must say so.
  const auto lower = ReductionOp::lower_triangularize(DecompositionOfUnity::standard_basis(2));
  g.require("contraction_check.lower_triangularize_counterexample_detected",
            !contraction_check(lower, Matrix::Constant(2, 2, 1.0)));
  return g;
}

Group orbit_group(const VerifyOptions& o) {
  Group g("orbit");
  FixtureStream rng(o.seed, FixtureKind::General, 4);
  for (int i = 0; i < o.instances; ++i) {
    const int n = dim_for(o, i);
    const Matrix rho = rng.matrix(n), x = rng.matrix(n), y = rng.matrix(n);
    const Matrix a = Matrix::Identity(n, n) + 0.3 * rng.matrix(n);
    const Matrix b = Matrix::Identity(n, n) + 0.3 * rng.matrix(n);
    g.cover("coadjoint_act");
    g.at_most("coadjoint_act.composition",
              max_abs(coadjoint_act(a, coadjoint_act(b, rho)) - coadjoint_act(a * b, rho)), 1e-10);
    g.cover("tangent_vector");
    g.require("tangent_vector.is_commutator", tangent_vector(x, rho) == commutator(x, rho));
    g.cover("kks_eval");
    g.at_most("kks_eval.antisymmetry", std::abs(kks_eval(rho, x, y) + kks_eval(rho, y, x)), 1e-12);
    const Matrix ai = a.inverse();
    g.at_most("kks_eval.conjugation_invariance",
              std::abs(kks_eval(coadjoint_act(a, rho), a * x * ai, a * y * ai) - kks_eval(rho, x, y)), 1e-10);
    g.at_most("kks_eval.lp_bracket_consistency",
              std::abs(lp_bracket(BracketSpec::full(), linear_observable(x), linear_observable(y), rho) -
                       kks_eval(rho, x, y)),
              1e-12);
    g.cover("kks_welldefined_defect");
    g.at_most("kks_welldefined_defect.polynomial",
              kks_welldefined_defect(rho, x, x + 0.5 * rho * rho - 0.2 * rho + Matrix::Identity(n, n), y), 1e-10);

    // rho = U diag(multiplicities) U*: commutant dimension is sum m_k^2.
    g.cover("characteristic_rank");
    const int m1 = 1 + i % (n - 1 > 0 ? n - 1 : 1);
    Matrix d = Matrix::Identity(n, n);
    for (int k = 0; k < m1; ++k) d(k, k) = -1.5;
    const Matrix u = rng.unitary(n);
    const int expected = n * n - (m1 * m1 + (n - m1) * (n - m1));
    g.require("characteristic_rank.spectral_multiplicities",
              characteristic_rank(u * d * u.adjoint()) == expected);

    g.cover("rank_one_state");
    const Matrix p = rank_one_state(rng.vector(n));
    g.at_most("rank_one_state.projector", max_abs(p * p - p), 1e-12);
  }
  return g;
}

Group dynamics_group(const VerifyOptions& o) {
  Group g("dynamics");
  FixtureStream rng(o.seed, FixtureKind::Hermitian, 5);
  g.cover("rk4_step");
  const double one = rk4_step<double>([](const double& s) { return s; }, 1.0, 0.1);
  g.at_most("rk4_step.scalar_expansion", std::abs(one - 1.1051708333333334), 1e-15);

  const int n = std::min(o.max_dim, 4);
  const Matrix h = rng.hermitian(n);
  const Matrix rho0 = rng.hermitian(n);
  const std::function<Matrix(const Matrix&)> cubic = [h](const Matrix& rho) {
    return Matrix(Complex(0.0, -1.0) * (h + rho * rho));
  };
  g.cover("evolve");
  const auto reference = evolve_lvn(cubic, rho0, config(Scheme::RK4, 1e-3, 1.0, 1 << 20));
  auto err = [&](Scheme s, double dt) {
    return max_abs(evolve_lvn(cubic, rho0, config(s, dt, 1.0, 1 << 20)).states.back() - reference.states.back());
  };
  const double rk4_ratio = err(Scheme::RK4, 0.1) / err(Scheme::RK4, 0.05);
  g.at_most("rk4_step.order_ratio_deviation", std::abs(rk4_ratio / 16.0 - 1.0), 0.2);

  g.cover("isospectral_step");
  const double iso_ratio = err(Scheme::IsospectralExp, 0.02) / err(Scheme::IsospectralExp, 0.01);
  g.at_most("isospectral_step.order_ratio_deviation", std::abs(iso_ratio / 4.0 - 1.0), 0.2);
  Matrix rho = rho0;
  const auto spec0 = hermitian_spectrum(rho0);
  for (int step = 0; step < 100; ++step) {
    rho = isospectral_step(cubic, rho, 0.01);
    g.at_most("isospectral_step.spectrum_drift", max_diff(hermitian_spectrum(rho), spec0), 1e-11);
  }

  const auto again = evolve_lvn(cubic, rho0, config(Scheme::RK4, 1e-3, 1.0, 1 << 20));
  g.require("evolve.bit_deterministic",
            (again.states.back().array() == reference.states.back().array()).all());

  g.cover("noether_drift");
  const Matrix gen = Complex(0.0, -1.0) * h;
  const std::function<Matrix(const Matrix&)> linear = [gen](const Matrix&) { return gen; };
  const auto traj = evolve_lvn(linear, rho0, config(Scheme::IsospectralExp, 1e-2, 1.0, 10));
  // H itself commutes with the flow it generates.
  g.at_most("noether_drift.generator_conserved",
            noether_drift<Matrix>([&](const Matrix& r) { return Matrix(Matrix::Identity(n, n) * trace_pairing(h, r)); },
                                  traj),
            1e-12);

  g.cover("collective_defect");
  FixtureStream grng(o.seed, FixtureKind::General, 5);
  const Observable q = quadratic_observable(0.3 * grng.matrix(n), 0.3 * grng.matrix(n));
  const std::function<Matrix(const Matrix&)> id = [](const Matrix& m) { return m; };
  const std::function<Matrix(const Matrix&)> up = [&q](const Matrix& m) {
    return ham_field(BracketSpec::full(), q, m);
  };
  g.at_most("collective_defect.identity_momentum",
            collective_defect<Matrix>(id, BracketSpec::full(), q, up, grng.matrix(n), 0.5,
                                      config(Scheme::RK4, 1e-2, 1.0, 1)),
            1e-12);
  return g;
}

Group toda_group(const VerifyOptions& o) {
  Group g("toda");
  FixtureStream rng(o.seed, FixtureKind::Toda, 6);
  const int n = std::max(2, std::min(o.max_dim + 2, 8));
  for (int i = 0; i < o.instances; ++i) {
    const toda::TodaState s = rng.toda_state(n);
    g.cover("flaschka");
    const toda::LaxPair lp = toda::flaschka(s);
    const toda::TodaState back = toda::unflaschka(lp.rho_minus, s.alpha, s.lambda);
    g.at_most("flaschka.inverse", (back.x - s.x).cwiseAbs().maxCoeff(), 1e-12);
    g.cover("toda_hamiltonian");
    g.cover("toda_hk");
    const double hval = toda::toda_hamiltonian(s);
    g.at_most("toda_hk.h2_equals_hamiltonian",
              std::abs(toda::toda_hk(lp, 2)(lp.rho_minus).real() - hval) / std::max(1.0, std::abs(hval)), 1e-13);
    g.cover("canonical_field");
    g.at_most("canonical_field.momentum_sum", std::abs(toda::canonical_field(s).dp.sum()), 1e-12);
    g.cover("lax_field");
    g.at_most("lax_field.equals_ham_field",
              max_abs(toda::lax_field(lp) -
                      ham_field(BracketSpec::lower_coinduced(), toda::toda_hk(lp, 2), lp.rho_minus)),
              1e-13);
    g.cover("intertwining_defect");
    g.at_most("intertwining_defect", toda::intertwining_defect(s), 1e-12);
    g.cover("involution_defect");
    for (int j = 1; j <= 5; ++j)
      for (int k = j + 1; k <= 5; ++k) g.at_most("involution_defect", toda::involution_defect(lp, j, k), 1e-10);
  }

  const toda::TodaState s0 = rng.toda_state(n);
  const toda::LaxPair lp0 = toda::flaschka(s0);
  const std::function<RealVector(const RealVector&)> field = [s0](const RealVector& z) {
    return toda::canonical_phase_field(s0, z);
  };
  const auto traj = evolve<RealVector>(field, toda::phase_vector(s0), config(Scheme::RK4, 1e-3, 2.0, 100));
  const auto spec0 = sorted_real_spectrum(lp0.lax);
  for (const auto& z : traj.states) {
    const toda::LaxPair lp = toda::flaschka(toda::with_phase(s0, z));
    for (int k = 1; k <= 4; ++k) {
      const double h0 = toda::toda_hk(lp0, k)(lp0.rho_minus).real();
      g.at_most("conservation.h" + std::to_string(k),
                std::abs(toda::toda_hk(lp, k)(lp.rho_minus).real() - h0) / std::max(1.0, std::abs(h0)), 1e-8);
    }
    g.at_most("conservation.spectrum", max_diff(sorted_real_spectrum(lp.lax), spec0), 1e-8);
  }
  const std::function<Matrix(const RealVector&)> momentum = [s0](const RealVector& z) {
    return toda::flaschka(toda::with_phase(s0, z)).rho_minus;
  };
  g.at_most("collective_commutation",
            collective_defect<RealVector>(momentum, BracketSpec::lower_coinduced(), toda::toda_hk(lp0, 2), field,
                                          toda::phase_vector(s0), 1.0, config(Scheme::RK4, 1e-3, 1.0, 1)),
            1e-6);
  return g;
}

Group cli_group(const VerifyOptions& o) {
  Group g("cli");
  g.cover("run");
  g.cover("seeded_random_state");
  bool same = true;
  for (auto kind : {FixtureKind::General, FixtureKind::Hermitian, FixtureKind::Psd, FixtureKind::Lower}) {
    const Matrix a = std::get<Matrix>(seeded_random_state(o.seed, kind, 4));
    const Matrix b = std::get<Matrix>(seeded_random_state(o.seed, kind, 4));
    same = same && (a.array() == b.array()).all();
  }
  const auto t1 = std::get<toda::TodaState>(seeded_random_state(o.seed, FixtureKind::Toda, 5));
  const auto t2 = std::get<toda::TodaState>(seeded_random_state(o.seed, FixtureKind::Toda, 5));
  same = same && t1.x == t2.x && t1.p == t2.p;
  g.require("seeded_random_state.deterministic", same);
  const Matrix p = std::get<Matrix>(seeded_random_state(o.seed, FixtureKind::Psd, 5));
  Eigen::SelfAdjointEigenSolver<Matrix> es(p, Eigen::EigenvaluesOnly);
  g.at_most("seeded_random_state.psd_min_eigenvalue_deficit", std::max(0.0, -es.eigenvalues().minCoeff()), 0.0);
  g.at_most("seeded_random_state.toda_momentum_sum", std::abs(t1.p.sum()), 1e-12);
  return g;
}

}  // namespace

const std::vector<std::string>& required_operations() {
  static const std::vector<std::string> ops{
      "operator_core.commutator", "operator_core.trace_pairing", "operator_core.trace_norm",
      "operator_core.project_lower", "operator_core.project_upper_plus", "operator_core.skew_hermitian_part",
      "operator_core.validate", "poisson_core.lp_bracket", "poisson_core.ham_field", "poisson_core.casimir",
      "poisson_core.jacobi_defect", "poisson_core.leibniz_defect", "poisson_core.poisson_map_defect",
      "poisson_core.reduction_condition_defect", "reduction.apply", "reduction.apply_dual",
      "reduction.closure_defect", "reduction.contraction_check", "reduction.positivity_check",
      "orbit.coadjoint_act", "orbit.tangent_vector", "orbit.kks_eval", "orbit.kks_welldefined_defect",
      "orbit.characteristic_rank", "orbit.rank_one_state", "dynamics.rk4_step", "dynamics.isospectral_step",
      "dynamics.evolve", "dynamics.noether_drift", "dynamics.collective_defect", "toda.toda_hamiltonian",
      "toda.canonical_field", "toda.flaschka", "toda.toda_hk", "toda.lax_field", "toda.intertwining_defect",
      "toda.involution_defect", "cli.run", "cli.seeded_random_state"};
  return ops;
}

VerifyReport run_verify(const VerifyOptions& opts) {
  const std::vector<std::function<Group(const VerifyOptions&)>> groups{
      operator_core_group, poisson_group, reduction_group, orbit_group, dynamics_group, toda_group, cli_group};
  std::vector<std::future<Group>> running;
  for (const auto& fn : groups) running.push_back(std::async(std::launch::async, fn, opts));

  VerifyReport report;
  for (auto& f : running) {
    const Group g = f.get();
    const auto checks = g.checks();
    report.checks.insert(report.checks.end(), checks.begin(), checks.end());
    report.covered.insert(g.covered().begin(), g.covered().end());
  }
  for (const auto& op : required_operations()) {
    if (!report.covered.count(op)) report.missing.push_back(op);
  }
  report.checks.push_back({"cli.verify.coverage", static_cast<double>(report.missing.size()), 0.0,
                           report.missing.empty()});
  report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const Check& c) { return c.pass; });
  return report;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"defect", c.defect}, {"tol", c.tol}, {"pass", c.pass}});
  }
  return {{"checks", std::move(checks)},
          {"pass", report.pass},
          {"coverage",
           {{"required", required_operations()},
            {"covered", std::vector<std::string>(report.covered.begin(), report.covered.end())},
            {"missing", report.missing}}}};
}

}  // namespace lpsrun
