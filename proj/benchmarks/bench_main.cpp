#include <benchmark/benchmark.h>

#include "lps/lps.hpp"

namespace {

using namespace lps;

void BM_Commutator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FixtureStream rng(1, FixtureKind::General);
  const Matrix x = rng.matrix(n), y = rng.matrix(n);
  for (auto _ : state) benchmark::DoNotOptimize(commutator(x, y));
}
BENCHMARK(BM_Commutator)->RangeMultiplier(2)->Range(4, 64);

void BM_TraceNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix rho = FixtureStream(2, FixtureKind::General).matrix(n);
  for (auto _ : state) benchmark::DoNotOptimize(trace_norm(rho));
}
BENCHMARK(BM_TraceNorm)->RangeMultiplier(2)->Range(4, 64);

void BM_IsospectralStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FixtureStream rng(3, FixtureKind::Hermitian);
  const Matrix h = rng.hermitian(n);
  Matrix rho = rng.hermitian(n);
  const std::function<Matrix(const Matrix&)> hgrad = [&h](const Matrix& r) {
    return Matrix(Complex(0.0, -1.0) * (h + r * r));
  };
  for (auto _ : state) {
    rho = isospectral_step(hgrad, rho, 1e-2);
    benchmark::DoNotOptimize(rho.data());
  }
}
BENCHMARK(BM_IsospectralStep)->RangeMultiplier(2)->Range(4, 32);

void BM_LpBracketLower(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FixtureStream rng(4, FixtureKind::General);
  const Observable f = quadratic_observable(rng.matrix(n), rng.matrix(n));
  const Observable g = quadratic_observable(rng.matrix(n), rng.matrix(n));
  const Matrix rho = rng.lower(n);
  const BracketSpec spec = BracketSpec::lower_coinduced();
  for (auto _ : state) benchmark::DoNotOptimize(lp_bracket(spec, f, g, rho));
}
BENCHMARK(BM_LpBracketLower)->RangeMultiplier(2)->Range(4, 32);

// Canonical Toda lattice, 1000 RK4 steps.
void BM_TodaRk4(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const toda::TodaState s0 = FixtureStream(5, FixtureKind::Toda).toda_state(n);
  const std::function<RealVector(const RealVector&)> field = [&s0](const RealVector& z) {
    return toda::canonical_phase_field(s0, z);
  };
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.record_stride = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(evolve<RealVector>(field, toda::phase_vector(s0), cfg));
}
BENCHMARK(BM_TodaRk4)->Arg(8)->Arg(32)->Arg(128);

void BM_TodaLaxRk4(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const toda::LaxPair lp = toda::flaschka(FixtureStream(5, FixtureKind::Toda).toda_state(n));
  const std::function<Matrix(const Matrix&)> field = [&lp](const Matrix& rho) {
    return toda::lax_field(rho, lp.a);
  };
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.record_stride = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(evolve<Matrix>(field, lp.rho_minus, cfg));
}
BENCHMARK(BM_TodaLaxRk4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
