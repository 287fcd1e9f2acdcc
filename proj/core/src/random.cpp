#include "lps/random.hpp"

#include "lps/error.hpp"

namespace lps {

std::string_view to_string(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::General: return "general";
    case FixtureKind::Hermitian: return "hermitian";
    case FixtureKind::Psd: return "psd";
    case FixtureKind::Lower: return "lower";
    case FixtureKind::Toda: return "toda";
  }
  return "?";
}

std::optional<FixtureKind> parse_fixture_kind(std::string_view name) {
  for (auto k : {FixtureKind::General, FixtureKind::Hermitian, FixtureKind::Psd,
                 FixtureKind::Lower, FixtureKind::Toda}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

FixtureStream::FixtureStream(std::uint64_t seed, FixtureKind kind, std::uint64_t substream)
    : kind_(kind) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ (static_cast<std::uint64_t>(kind) + 1));
  s = splitmix64(s ^ substream);
  engine_.seed(s);
}

double FixtureStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Matrix FixtureStream::matrix(int n) {
  if (n < 1) throw DimensionError("fixture: n must be >= 1");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = uniform(-1.0, 1.0);
      const double im = uniform(-1.0, 1.0);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Matrix FixtureStream::hermitian(int n) {
  const Matrix a = matrix(n);
  return 0.5 * (a + a.adjoint());
}

Matrix FixtureStream::skew_hermitian(int n) { return skew_hermitian_part(matrix(n)); }

Matrix FixtureStream::psd(int n) {
  const Matrix a = matrix(n);
  Matrix p = a * a.adjoint();
  p = 0.5 * (p + p.adjoint());
  return p / p.trace().real();
}

Matrix FixtureStream::lower(int n) { return project_lower(matrix(n)); }

Matrix FixtureStream::unitary(int n) {
  const Matrix a = matrix(n);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(n, n);
}

Vector FixtureStream::vector(int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = uniform(-1.0, 1.0);
    const double im = uniform(-1.0, 1.0);
    v(i) = Complex(re, im);
  }
  return v;
}

RealVector FixtureStream::real_vector(int n, double lo, double hi) {
  RealVector v(n);
  for (int i = 0; i < n; ++i) v(i) = uniform(lo, hi);
  return v;
}

toda::TodaState FixtureStream::toda_state(int n) {
  if (n < 2) throw DimensionError("fixture: Toda state needs N >= 2");
  RealVector x = real_vector(n - 1);
  RealVector p = real_vector(n);
  p.array() -= p.mean();
  const RealVector w = toda::default_weights(n);
  return toda::make_state(std::move(x), std::move(p), w, w);
}

std::variant<Matrix, toda::TodaState> FixtureStream::next(int n) {
  switch (kind_) {
    case FixtureKind::General: return matrix(n);
    case FixtureKind::Hermitian: return hermitian(n);
    case FixtureKind::Psd: return psd(n);
    case FixtureKind::Lower: return lower(n);
    case FixtureKind::Toda: return toda_state(n);
  }
  return matrix(n);
}

std::variant<Matrix, toda::TodaState> seeded_random_state(std::uint64_t seed, FixtureKind kind,
                                                          int n) {
  FixtureStream stream(seed, kind);
  return stream.next(n);
}

}  // namespace lps
