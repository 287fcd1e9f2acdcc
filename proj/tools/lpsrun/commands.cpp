#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <set>
#include <sstream>

#include "lps/lps.hpp"
#include "verify.hpp"

namespace lpsrun {

using namespace lps;

namespace {

struct CheckList {
  Json checks = Json::array();
  bool pass = true;

  void add(const std::string& name, double defect, double tol) {
    const bool ok = defect <= tol;
    checks.push_back({{"name", name}, {"defect", defect}, {"tol", tol}, {"pass", ok}});
    pass = pass && ok;
  }
  void flag(const std::string& name, bool ok) { add(name, ok ? 0.0 : 1.0, 0.0); }
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

IntegratorConfig integrator_or(const RunConfig& cfg, Scheme scheme, double dt, double t_end, int stride) {
  if (cfg.integrator) return *cfg.integrator;
  IntegratorConfig c;
  c.scheme = scheme;
  c.dt = dt;
  c.t_end = t_end;
  c.record_stride = stride;
  return c;
}

void forbid_integrator(const RunConfig& cfg) {
  if (cfg.integrator) throw ConfigError("command \"" + cfg.command + "\" takes no integrator");
}

// max_t |m(t) - m(0)| / max(1, |m(0)|)
double relative_drift(const std::vector<double>& series) {
  if (series.empty()) return 0.0;
  const double m0 = series.front();
  double worst = 0.0;
  for (double v : series) worst = std::max(worst, std::abs(v - m0));
  return worst / std::max(1.0, std::abs(m0));
}

std::vector<double> real_spectrum(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- verify

Job prepare_verify(const RunConfig& cfg) {
  forbid_integrator(cfg);
  require_keys(cfg.params, {"max_dim", "instances"}, "params");
  VerifyOptions opts;
  opts.seed = cfg.seed;
  opts.max_dim = param_int(cfg.params, "max_dim", 6, 2, 8);
  opts.instances = param_int(cfg.params, "instances", 20, 1, 1000);
  return [opts] {
    const VerifyReport report = run_verify(opts);
    std::size_t failed = 0;
    for (const auto& c : report.checks) failed += c.pass ? 0 : 1;
    return Outcome{{{"report.json", dump(to_json(report))}},
                   report.pass,
                   std::to_string(report.checks.size()) + " checks, " + std::to_string(failed) + " failed"};
  };
}

// -------------------------------------------------------------- toda-run

// h1..h4 and H evaluated through `to_state`.
template <class State>
std::vector<Monitor<State>> toda_monitors(const std::function<toda::TodaState(const State&)>& to_state) {
  std::vector<Monitor<State>> ms;
  for (int k = 1; k <= 4; ++k) {
    ms.push_back({"h" + std::to_string(k), [to_state, k](const State& z) {
                    const toda::LaxPair lp = toda::flaschka(to_state(z));
                    return toda::toda_hk(lp, k)(lp.rho_minus).real();
                  }});
  }
  ms.push_back({"H", [to_state](const State& z) { return toda::toda_hamiltonian(to_state(z)); }});
  return ms;
}

Job prepare_toda(const RunConfig& cfg) {
  require_keys(cfg.params, {"N", "side", "initial", "drift_tol"}, "params");
  const std::string side = param_choice(cfg.params, "side", "canonical", {"canonical", "lax"});
  const double tol = param_double(cfg.params, "drift_tol", 1e-8, 0.0, 1.0);
  const IntegratorConfig icfg = integrator_or(cfg, Scheme::RK4, 1e-3, 10.0, 100);
  if (icfg.scheme != Scheme::RK4) throw ConfigError("toda-run integrates with RK4 only");

  toda::TodaState s0;
  if (cfg.params.contains("initial")) {
    try {
      s0 = io::toda_state_from_json(cfg.params["initial"]);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("params.initial: ") + e.what());
    }
    if (cfg.params.contains("N") && param_int(cfg.params, "N", 0, 2, 256) != s0.size()) {
      throw ConfigError("params.N does not match params.initial");
    }
  } else {
    const int n = param_int(cfg.params, "N", 8, 2, 256);
    s0 = FixtureStream(cfg.seed, FixtureKind::Toda).toda_state(n);
  }

  return [s0, side, tol, icfg] {
    const int n = s0.size();
    std::vector<std::string> columns;
    for (int k = 1; k < n; ++k) columns.push_back("x_" + std::to_string(k));
    for (int k = 1; k <= n; ++k) columns.push_back("p_" + std::to_string(k));
    auto flatten_state = [](const toda::TodaState& s) {
      std::vector<double> v(s.x.data(), s.x.data() + s.x.size());
      v.insert(v.end(), s.p.data(), s.p.data() + s.p.size());
      return v;
    };
    std::ostringstream csv;
    std::vector<std::vector<double>> series;
    if (side == "canonical") {
      const std::function<toda::TodaState(const RealVector&)> to_state = [s0](const RealVector& z) {
        return toda::with_phase(s0, z);
      };
      const std::function<RealVector(const RealVector&)> field = [s0](const RealVector& z) {
        return toda::canonical_phase_field(s0, z);
      };
      const auto traj = evolve<RealVector>(field, toda::phase_vector(s0), icfg, toda_monitors(to_state));
      write_csv<RealVector>(csv, traj, columns, [&](const RealVector& z) { return flatten_state(to_state(z)); });
      series = traj.monitors;
    } else {
      const Matrix a = toda::upper_weight_matrix(s0.alpha);
      const std::function<toda::TodaState(const Matrix&)> to_state = [s0](const Matrix& rho) {
        return toda::unflaschka(rho, s0.alpha, s0.lambda);
      };
      const std::function<Matrix(const Matrix&)> field = [a](const Matrix& rho) { return toda::lax_field(rho, a); };
      const auto traj = evolve<Matrix>(field, toda::flaschka(s0).rho_minus, icfg, toda_monitors(to_state));
      write_csv<Matrix>(csv, traj, columns, [&](const Matrix& rho) { return flatten_state(to_state(rho)); });
      series = traj.monitors;
    }

    CheckList checks;
    for (int k = 1; k <= 4; ++k) checks.add("drift.h" + std::to_string(k), relative_drift(series[k - 1]), tol);
    checks.add("drift.H", relative_drift(series[4]), tol);
    const toda::LaxPair lp0 = toda::flaschka(s0);
    const double h0 = toda::toda_hamiltonian(s0);
    checks.add("initial.h2_equals_H", std::abs(toda::toda_hk(lp0, 2)(lp0.rho_minus).real() - h0) / std::max(1.0, std::abs(h0)),
               1e-13);
    checks.add("initial.intertwining_defect", toda::intertwining_defect(s0), 1e-12);

    const Json summary{{"checks", checks.checks},
                       {"pass", checks.pass},
                       {"side", side},
                       {"initial", io::to_json(s0)},
                       {"integrator",
                        {{"scheme", to_string(icfg.scheme)},
                         {"dt", icfg.dt},
                         {"t_end", icfg.t_end},
                         {"record_stride", icfg.record_stride}}}};
    return Outcome{{{"toda.csv", csv.str()}, {"toda_summary.json", dump(summary)}},
                   checks.pass,
                   "N=" + std::to_string(n) + " side=" + side};
  };
}

// --------------------------------------------------------------- lvn-run

struct LvnResult {
  std::string csv;
  Json checks;
  Json info = Json::object();
  bool pass = true;
};

LvnResult run_lvn(std::uint64_t seed, int n, bool cubic, const IntegratorConfig& icfg, double tol) {
  FixtureStream rng(seed, FixtureKind::Hermitian);
  const Matrix h = rng.hermitian(n);
  const Matrix rho0 = rng.hermitian(n);
  const Matrix gen = Complex(0.0, -1.0) * h;
  std::function<Matrix(const Matrix&)> hgrad;
  if (cubic) {
    // Adding the Casimir tr(rho^3)/3 leaves the flow unchanged but not the
    // discretization.
    hgrad = [gen](const Matrix& rho) { return Matrix(gen - Complex(0.0, 1.0) * rho * rho); };
  } else {
    hgrad = [gen](const Matrix&) { return gen; };
  }
  const std::vector<Monitor<Matrix>> monitors{
      observable_monitor("trace", linear_observable(Matrix::Identity(n, n))),
      observable_monitor("casimir2", casimir(2, n)), observable_monitor("casimir3", casimir(3, n)),
      observable_monitor("energy", linear_observable(h))};
  const auto traj = evolve_lvn(hgrad, rho0, icfg, monitors);

  LvnResult out;
  std::ostringstream csv;
  write_csv(csv, traj);
  out.csv = csv.str();
  CheckList checks;
  for (std::size_t k = 0; k < monitors.size(); ++k) {
    const double drift = relative_drift(traj.monitors[k]);
    // The exponential scheme keeps tr(H rho) only when the generator is
    // constant; otherwise its drift is discretization error, reported as is.
    if (cubic && monitors[k].name == "energy") {
      out.info["drift.energy"] = drift;
    } else {
      checks.add("drift." + monitors[k].name, drift, tol);
    }
  }
  const auto spec0 = real_spectrum(rho0);
  const auto spec1 = real_spectrum(traj.states.back());
  double scale = 1.0, drift = 0.0;
  for (std::size_t i = 0; i < spec0.size(); ++i) {
    scale = std::max(scale, std::abs(spec0[i]));
    drift = std::max(drift, std::abs(spec1[i] - spec0[i]));
  }
  checks.add("drift.spectrum", drift / scale, tol);
  out.checks = checks.checks;
  out.pass = checks.pass;
  return out;
}

Job prepare_lvn(const RunConfig& cfg) {
  require_keys(cfg.params, {"N", "hamiltonian", "seeds", "threads", "drift_tol"}, "params");
  const int n = param_int(cfg.params, "N", 6, 1, 32);
  const bool cubic = param_choice(cfg.params, "hamiltonian", "linear", {"linear", "cubic"}) == "cubic";
  const int threads = param_int(cfg.params, "threads", 1, 1, 64);
  const double tol = param_double(cfg.params, "drift_tol", 1e-8, 0.0, 1.0);
  const IntegratorConfig icfg = integrator_or(cfg, Scheme::IsospectralExp, 1e-2, 10.0, 10);
  std::vector<std::uint64_t> seeds{cfg.seed};
  if (cfg.params.contains("seeds")) {
    const Json& s = cfg.params["seeds"];
    if (!s.is_array() || s.empty() || s.size() > 256) throw ConfigError("params.seeds must be a list of 1 to 256 seeds");
    seeds.clear();
    for (const auto& v : s) seeds.push_back(as_seed(v, "params.seeds[]"));
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
      throw ConfigError("params.seeds contains duplicates");
    }
  }

  return [=] {
    // Workers pull seeds from a shared counter and own their trajectories.
    // Results land in seed order, so the thread count never shows in the output.
    std::vector<LvnResult> results(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < seeds.size(); i = next++) {
        results[i] = run_lvn(seeds[i], n, cubic, icfg, tol);
      }
    };
    std::vector<std::future<void>> pool;
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), seeds.size());
    for (std::size_t w = 0; w < workers; ++w) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();

    Outcome out;
    Json runs = Json::array();
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const std::string file = "lvn_seed" + std::to_string(seeds[i]) + ".csv";
      out.files.push_back({file, results[i].csv});
      runs.push_back({{"seed", seeds[i]}, {"csv", file}, {"checks", results[i].checks},
                      {"info", results[i].info}, {"pass", results[i].pass}});
      out.pass = out.pass && results[i].pass;
    }
    const Json summary{{"pass", out.pass},
                       {"hamiltonian", cubic ? "cubic" : "linear"},
                       {"N", n},
                       {"integrator",
                        {{"scheme", to_string(icfg.scheme)},
                         {"dt", icfg.dt},
                         {"t_end", icfg.t_end},
                         {"record_stride", icfg.record_stride}}},
                       {"runs", runs}};
    out.files.push_back({"lvn_summary.json", dump(summary)});
    out.summary = std::to_string(seeds.size()) + " seed(s)";
    return out;
  };
}

// ----------------------------------------------------------- reduce-demo

ReductionOp default_reduction(const std::string& kind, int n) {
  if (kind == "measurement") return ReductionOp::measurement(DecompositionOfUnity::standard_basis(n));
  if (kind == "lower_triangularize") {
    return ReductionOp::lower_triangularize(DecompositionOfUnity::standard_basis(n));
  }
  Matrix shift = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) shift((j + 1) % n, j) = 1.0;
  return ReductionOp::group_average(generate_group({shift}));
}

Job prepare_reduce(const RunConfig& cfg) {
  forbid_integrator(cfg);
  require_keys(cfg.params, {"N", "kind", "reduction", "state"}, "params");
  const std::string state_kind = param_choice(cfg.params, "state", "psd", {"general", "hermitian", "psd", "lower"});
  std::optional<ReductionOp> op;
  if (cfg.params.contains("reduction")) {
    if (cfg.params.contains("kind")) throw ConfigError("give params.kind or params.reduction, not both");
    try {
      op = io::reduction_from_json(cfg.params["reduction"]);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("params.reduction: ") + e.what());
    }
    if (cfg.params.contains("N") && param_int(cfg.params, "N", 0, 1, 16) != op->dim()) {
      throw ConfigError("params.N does not match params.reduction");
    }
  } else {
    const int n = param_int(cfg.params, "N", 4, 1, 16);
    const std::string kind =
        param_choice(cfg.params, "kind", "measurement", {"measurement", "lower_triangularize", "group_average"});
    op = default_reduction(kind, n);
  }
  const std::uint64_t seed = cfg.seed;
  const ReductionOp r = *op;

  return [r, seed, state_kind] {
    const int n = r.dim();
    const Matrix rho = std::get<Matrix>(seeded_random_state(seed, *parse_fixture_kind(state_kind), n));
    FixtureStream rng(seed, FixtureKind::General, 1);
    const Matrix x = rng.matrix(n), y = rng.matrix(n);
    const Matrix after = lps::apply(r, rho);

    CheckList checks;
    checks.add("idempotence", (lps::apply(r, after) - after).cwiseAbs().maxCoeff(), 1e-12);
    checks.add("adjointness", std::abs(trace_pairing(apply_dual(r, x), rho) - trace_pairing(x, after)), 1e-12);
    checks.add("closure_defect", closure_defect(r, x, y), 1e-12);
    // Triangular truncation is not a trace-norm contraction in general, so
    // the norms are reported for it instead of checked.
    if (r.kind() != ReductionOp::Kind::LowerTriangularize) {
      checks.flag("contraction", contraction_check(r, rho));
      checks.add("trace_preserved", std::abs(after.trace() - rho.trace()), 1e-12);
    }
    if (state_kind == "psd") {
      if (const auto pos = positivity_check(r, rho)) checks.flag("positivity", *pos);
    }
    const Json report{{"checks", checks.checks},
                      {"pass", checks.pass},
                      {"reduction", io::to_json(r)},
                      {"state", state_kind},
                      {"before", io::to_json(rho)},
                      {"after", io::to_json(after)},
                      {"trace_norm_before", trace_norm(rho)},
                      {"trace_norm_after", trace_norm(after)}};
    return Outcome{{{"reduce.json", dump(report)}}, checks.pass, std::string(to_string(r.kind()))};
  };
}

// ------------------------------------------------------------- orbit-kks

Job prepare_orbit(const RunConfig& cfg) {
  forbid_integrator(cfg);
  require_keys(cfg.params, {"N", "samples"}, "params");
  const int n = param_int(cfg.params, "N", 4, 1, 16);
  const int samples = param_int(cfg.params, "samples", 16, 1, 100000);
  const std::uint64_t seed = cfg.seed;

  return [n, samples, seed] {
    const Matrix rho = FixtureStream(seed, FixtureKind::General).matrix(n);
    FixtureStream rng(seed, FixtureKind::General, 1);
    const Matrix id = Matrix::Identity(n, n);
    // x and x + p(rho) define the same tangent vector.
    const Matrix shift = 0.5 * rho * rho - 0.2 * rho + id;

    std::ostringstream csv;
    csv << "sample,kks_re,kks_im,kks_conj_re,kks_conj_im,bracket_re,bracket_im,welldefined_defect\n";
    double antisym = 0.0, conj = 0.0, bracket = 0.0, welldef = 0.0;
    for (int s = 0; s < samples; ++s) {
      const Matrix x = rng.matrix(n), y = rng.matrix(n);
      const Matrix g = id + 0.3 * rng.matrix(n);
      const Matrix gi = g.inverse();
      const Complex w = kks_eval(rho, x, y);
      const Complex wc = kks_eval(coadjoint_act(g, rho), g * x * gi, g * y * gi);
      const Complex b = lp_bracket(BracketSpec::full(), linear_observable(x), linear_observable(y), rho);
      const double wd = kks_welldefined_defect(rho, x, x + shift, y);
      antisym = std::max(antisym, std::abs(w + kks_eval(rho, y, x)));
      conj = std::max(conj, std::abs(wc - w) / std::max(1.0, std::abs(w)));
      bracket = std::max(bracket, std::abs(b - w));
      welldef = std::max(welldef, wd);
      csv << s;
      for (double v : {w.real(), w.imag(), wc.real(), wc.imag(), b.real(), b.imag(), wd}) {
        csv << ',' << format_double(v);
      }
      csv << '\n';
    }
    CheckList checks;
    checks.add("antisymmetry", antisym, 1e-12);
    checks.add("conjugation_invariance", conj, 1e-10);
    checks.add("bracket_consistency", bracket, 1e-12);
    checks.add("welldefined_defect", welldef, 1e-10);
    const Json summary{{"checks", checks.checks},
                       {"pass", checks.pass},
                       {"state", io::to_json(rho)},
                       {"orbit_dimension", characteristic_rank(rho)},
                       {"samples", samples}};
    return Outcome{{{"kks.csv", csv.str()}, {"kks_summary.json", dump(summary)}},
                   checks.pass,
                   std::to_string(samples) + " samples"};
  };
}

}  // namespace

Job prepare(const RunConfig& cfg) {
  if (cfg.command == "verify") return prepare_verify(cfg);
  if (cfg.command == "toda-run") return prepare_toda(cfg);
  if (cfg.command == "lvn-run") return prepare_lvn(cfg);
  if (cfg.command == "reduce-demo") return prepare_reduce(cfg);
  if (cfg.command == "orbit-kks") return prepare_orbit(cfg);
  throw ConfigError("unknown command \"" + cfg.command + "\"");
}

}  // namespace lpsrun
