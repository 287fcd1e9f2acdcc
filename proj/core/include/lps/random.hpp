#pragma once

// Seeded fixtures. Each (seed, kind, substream) triple selects an independent
// std::mt19937_64 stream whose seed is derived with SplitMix64, so adding a
// new fixture kind or substream never perturbs the existing ones. Uniform
// doubles are built from the top 53 bits of each draw; no library
// distribution is used, which keeps the output identical across standard
// library implementations.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <variant>

#include "lps/operator_core.hpp"
#include "lps/toda.hpp"

namespace lps {

enum class FixtureKind { General, Hermitian, Psd, Lower, Toda };

std::string_view to_string(FixtureKind kind);
std::optional<FixtureKind> parse_fixture_kind(std::string_view name);

std::uint64_t splitmix64(std::uint64_t x);

class FixtureStream {
 public:
  FixtureStream(std::uint64_t seed, FixtureKind kind, std::uint64_t substream = 0);

  /// [0, 1)
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Entries with real and imaginary parts uniform in [-1, 1).
  Matrix matrix(int n);
  Matrix hermitian(int n);
  Matrix skew_hermitian(int n);
  /// A A* / tr(A A*): Hermitian, positive definite, unit trace.
  Matrix psd(int n);
  Matrix lower(int n);
  /// Q factor of a random complex matrix.
  Matrix unitary(int n);
  Vector vector(int n);
  /// Real entries uniform in [lo, hi).
  RealVector real_vector(int n, double lo = -1.0, double hi = 1.0);
  /// x_k, p_k uniform in [-1, 1), p mean-subtracted, weights 2^-k.
  toda::TodaState toda_state(int n);

  /// Next fixture of the stream's own kind.
  std::variant<Matrix, toda::TodaState> next(int n);

 private:
  FixtureKind kind_;
  std::mt19937_64 engine_;
};

/// First fixture of the (seed, kind) stream.
std::variant<Matrix, toda::TodaState> seeded_random_state(std::uint64_t seed, FixtureKind kind,
                                                          int n);

}  // namespace lps
