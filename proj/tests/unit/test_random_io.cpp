#include <gtest/gtest.h>

#include <cstring>

#include "lps/error.hpp"
#include "lps/io.hpp"
#include "lps/random.hpp"
#include "oracles.hpp"

namespace lps {
namespace {

bool bit_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(Complex) * static_cast<std::size_t>(a.size())) == 0;
}

TEST(Random, SplitMixReferenceValues) {
  // First outputs of the reference SplitMix64 generator seeded with 0. The
  // mixer adds the increment itself, so output k is splitmix64(k * gamma).
  const std::uint64_t gamma = 0x9e3779b97f4a7c15ULL;
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(gamma), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(splitmix64(2 * gamma), 0x06c45d188009454fULL);
}

TEST(Random, SameSeedSameOutput) {
  for (auto kind : {FixtureKind::General, FixtureKind::Hermitian, FixtureKind::Psd,
                    FixtureKind::Lower, FixtureKind::Toda}) {
    const auto a = seeded_random_state(42, kind, 5);
    const auto b = seeded_random_state(42, kind, 5);
    if (kind == FixtureKind::Toda) {
      const auto& sa = std::get<toda::TodaState>(a);
      const auto& sb = std::get<toda::TodaState>(b);
      EXPECT_EQ(sa.x, sb.x);
      EXPECT_EQ(sa.p, sb.p);
    } else {
      EXPECT_TRUE(bit_equal(std::get<Matrix>(a), std::get<Matrix>(b)));
    }
  }
  EXPECT_FALSE(bit_equal(std::get<Matrix>(seeded_random_state(1, FixtureKind::General, 3)),
                         std::get<Matrix>(seeded_random_state(2, FixtureKind::General, 3))));
}

TEST(Random, StreamsAreIndependentPerKindAndSubstream) {
  FixtureStream a(7, FixtureKind::General, 0);
  FixtureStream b(7, FixtureKind::General, 1);
  FixtureStream c(7, FixtureKind::Hermitian, 0);
  const double x = a.uniform(), y = b.uniform(), z = c.uniform();
  EXPECT_NE(x, y);
  EXPECT_NE(x, z);
  // Drawing from one stream never changes another.
  FixtureStream a2(7, FixtureKind::General, 0);
  FixtureStream b2(7, FixtureKind::General, 1);
  for (int i = 0; i < 100; ++i) b2.uniform();
  EXPECT_EQ(a2.uniform(), x);
}

TEST(Random, FixtureShapes) {
  FixtureStream rng(9, FixtureKind::General);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 7;
    EXPECT_TRUE(validate(ClassTag::Hermitian, rng.hermitian(n), 0.0));
    EXPECT_TRUE(validate(ClassTag::SkewHermitian, rng.skew_hermitian(n), 0.0));
    EXPECT_TRUE(validate(ClassTag::LowerTriangular, rng.lower(n), 0.0));
    const Matrix u = rng.unitary(n);
    EXPECT_LE(oracle::max_abs(u * u.adjoint() - Matrix::Identity(n, n)), 1e-13);
    const Matrix p = rng.psd(n);
    EXPECT_NEAR(p.trace().real(), 1.0, 1e-14);
    EXPECT_GE(oracle::sorted_real_eigenvalues(p).front(), 0.0);
    const double v = rng.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
  const auto s = rng.toda_state(8);
  EXPECT_LE(std::abs(s.p.sum()), 1e-12);
  EXPECT_EQ(s.alpha, toda::default_weights(8));
}

TEST(Random, KindNames) {
  for (auto kind : {FixtureKind::General, FixtureKind::Hermitian, FixtureKind::Psd,
                    FixtureKind::Lower, FixtureKind::Toda}) {
    EXPECT_EQ(parse_fixture_kind(to_string(kind)), kind);
  }
  EXPECT_FALSE(parse_fixture_kind("banana").has_value());
}

TEST(Io, MatrixRoundTripIsBitExact) {
  FixtureStream rng(11, FixtureKind::General);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = rng.matrix(1 + trial % 6) * std::pow(10.0, trial % 11 - 5);
    const std::string text = io::to_json(m).dump();
    EXPECT_TRUE(bit_equal(io::matrix_from_json(io::Json::parse(text)), m));
  }
}

TEST(Io, MatrixLayout) {
  Matrix m(2, 2);
  m << Complex(1, -1), 2.0, 3.0, Complex(0, 4);
  const io::Json j = io::to_json(m);
  EXPECT_EQ(j["dim"], 2);
  EXPECT_EQ(j["re"], io::Json({1.0, 2.0, 3.0, 0.0}));
  EXPECT_EQ(j["im"], io::Json({-1.0, 0.0, 0.0, 4.0}));
}

TEST(Io, MalformedMatricesRejected) {
  using io::Json;
  EXPECT_THROW(io::matrix_from_json(Json::parse(R"({"dim":1,"re":[1],"im":[0],"x":1})")),
               FormatError);
  EXPECT_THROW(io::matrix_from_json(Json::parse(R"({"dim":2,"re":[1],"im":[0]})")), FormatError);
  EXPECT_THROW(io::matrix_from_json(Json::parse(R"({"dim":1,"re":["a"],"im":[0]})")), FormatError);
  EXPECT_THROW(io::matrix_from_json(Json::parse(R"({"dim":0,"re":[],"im":[]})")), FormatError);
  EXPECT_THROW(io::matrix_from_json(Json::parse(R"({"re":[1],"im":[0]})")), FormatError);
  EXPECT_THROW(io::matrix_from_json(Json::parse("[1,2]")), FormatError);
}

TEST(Io, TodaStateRoundTrip) {
  FixtureStream rng(12, FixtureKind::Toda);
  const auto s = rng.toda_state(6);
  const auto back = io::toda_state_from_json(io::Json::parse(io::to_json(s).dump()));
  EXPECT_EQ(back.x, s.x);
  EXPECT_EQ(back.p, s.p);
  EXPECT_EQ(back.alpha, s.alpha);
  EXPECT_EQ(back.lambda, s.lambda);
  EXPECT_THROW(io::toda_state_from_json(io::Json::parse(
                   R"({"N":2,"x":[0],"p":[1,1],"alpha":[1],"lambda":[1]})")),
               FormatError);
  EXPECT_THROW(io::toda_state_from_json(io::Json::parse(
                   R"({"N":2,"x":[0],"p":[1,-1],"alpha":[1],"lambda":[1],"q":[0]})")),
               FormatError);
}

TEST(Io, ReductionRoundTrip) {
  FixtureStream rng(13, FixtureKind::General);
  const std::vector<ReductionOp> ops{
      ReductionOp::measurement(DecompositionOfUnity::diagonal_blocks({1, 2})),
      ReductionOp::lower_triangularize(DecompositionOfUnity::standard_basis(3)),
      ReductionOp::group_average({Matrix::Identity(3, 3), Matrix::Identity(3, 3) * -1.0})};
  for (const auto& r : ops) {
    const auto back = io::reduction_from_json(io::Json::parse(io::to_json(r).dump()));
    EXPECT_EQ(back.kind(), r.kind());
    const Matrix rho = rng.matrix(3);
    EXPECT_TRUE(bit_equal(lps::apply(back, rho), lps::apply(r, rho)));
  }
  EXPECT_THROW(io::reduction_from_json(io::Json::parse(R"({"kind":"mystery","dim":1})")),
               FormatError);
  // projectors that do not sum to the identity
  io::Json bad = io::to_json(ops[0]);
  bad["projectors"].erase(1);
  EXPECT_THROW(io::reduction_from_json(bad), FormatError);
}

}  // namespace
}  // namespace lps
