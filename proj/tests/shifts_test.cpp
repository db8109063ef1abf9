#include "champ_ppc/shifts.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

namespace champ_ppc {
namespace {

TEST(ShiftPointTest, Values) {
  EXPECT_EQ(shift_point(1, 4).numerator, 11u);
  EXPECT_EQ(shift_point(2, 4).numerator, 7u);
  EXPECT_EQ(shift_point(0, 4).numerator, 13u);
  EXPECT_EQ(shift_point(5, 64).width, 64u);
  EXPECT_THROW(shift_point(1, 0), std::invalid_argument);
  EXPECT_THROW(shift_point(1, 65), std::invalid_argument);
}

TEST(ChampernowneSequenceTest, Values) {
  EXPECT_EQ(champernowne_sequence(3, 4).values, (std::vector<std::uint64_t>{11, 7, 14}));
  EXPECT_EQ(champernowne_sequence(1, 1).values, (std::vector<std::uint64_t>{1}));
  const SequenceSample big = champernowne_sequence(2048, 32);
  EXPECT_EQ(big.size(), 2048u);
  for (auto v : big.values) EXPECT_LT(v, std::uint64_t{1} << 32);
  EXPECT_THROW(champernowne_sequence(0, 8), std::invalid_argument);
}

TEST(ChampernowneSequenceTest, AgreesWithShiftPoints) {
  for (unsigned w : {1u, 7u, 33u, 64u}) {
    const SequenceSample s = champernowne_sequence(300, w);
    for (std::size_t t = 0; t < s.size(); ++t) ASSERT_EQ(s.values[t], shift_point(t + 1, w).numerator);
  }
}

TEST(ChampernowneSequenceTest, WindowConsistencyAcrossWidths) {
  for (unsigned w = 2; w <= 64; ++w) {
    const SequenceSample wide = champernowne_sequence(500, w);
    const SequenceSample narrow = champernowne_sequence(500, w - 1);
    for (std::size_t t = 0; t < wide.size(); ++t) ASSERT_EQ(wide.values[t] >> 1, narrow.values[t]) << "w=" << w;
  }
}

TEST(KroneckerTest, HalfStep) {
  const unsigned w = 20;
  const SequenceSample s = kronecker_sequence(2, w, std::uint64_t{1} << (w - 1));
  EXPECT_EQ(s.values, (std::vector<std::uint64_t>{std::uint64_t{1} << (w - 1), 0}));
}

TEST(KroneckerTest, GoldenStep) {
  EXPECT_EQ(golden_kronecker_step(32), 2654435769u);  // 0x9E3779B9
  for (unsigned w = 1; w <= 64; ++w) {
    // floor semantics: the true golden fraction lies within one unit above
    const long double golden = (std::sqrt(5.0L) - 1) / 2;
    const long double scaled = std::ldexp(golden, static_cast<int>(w));
    const long double step = static_cast<long double>(golden_kronecker_step(w));
    EXPECT_LE(step, scaled + 1e-6L * scaled) << w;
    EXPECT_GT(step + 1, scaled - 1e-6L * scaled) << w;
  }
  EXPECT_THROW(kronecker_sequence(3, 4, 16), std::invalid_argument);
}

TEST(SqrtTest, FractionValues) {
  for (unsigned w : {1u, 8u, 64u}) EXPECT_EQ(sqrt_fraction(4, w), 0u);
  EXPECT_EQ(sqrt_fraction(2, 8), 106u);  // floor(256 * 0.41421356...)
  for (std::uint64_t n = 1; n < 2000; ++n) {
    const long double exact = std::sqrt(static_cast<long double>(n));
    const long double frac = exact - std::floor(exact);
    const long double approx = std::ldexp(static_cast<long double>(sqrt_fraction(n, 40)), -40);
    ASSERT_LE(approx, frac + 1e-15L);
    ASSERT_LT(frac - approx, std::ldexp(1.0L, -40) + 1e-15L);
  }
}

TEST(SqrtTest, SequenceSkipsSquares) {
  const SequenceSample s = sqrt_sequence(6, 16);
  const std::vector<std::uint64_t> n_values = {2, 3, 5, 6, 7, 8};
  ASSERT_EQ(s.size(), n_values.size());
  for (std::size_t t = 0; t < s.size(); ++t) EXPECT_EQ(s.values[t], sqrt_fraction(n_values[t], 16));
  EXPECT_TRUE(is_perfect_square(0));
  EXPECT_TRUE(is_perfect_square(1));
  EXPECT_TRUE(is_perfect_square(1ull << 62));
  EXPECT_FALSE(is_perfect_square((1ull << 62) + 1));
}

TEST(UniformTest, Deterministic) {
  const SequenceSample a = uniform_sequence(5, 48, 7);
  const SequenceSample b = uniform_sequence(5, 48, 7);
  const SequenceSample c = uniform_sequence(5, 48, 8);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
  for (auto v : a.values) EXPECT_LT(v, std::uint64_t{1} << 48);
  EXPECT_EQ(a.seed, std::optional<std::uint64_t>(7));
}

TEST(ReferenceSequenceTest, DispatchAndErrors) {
  EXPECT_THROW(reference_sequence(SequenceKind::uniform, 5, 16), std::invalid_argument);
  EXPECT_THROW(reference_sequence(SequenceKind::kronecker, 5, 16, 1), std::invalid_argument);
  EXPECT_EQ(reference_sequence(SequenceKind::uniform, 5, 16, 3).values, uniform_sequence(5, 16, 3).values);
  EXPECT_EQ(reference_sequence(SequenceKind::kronecker, 5, 16, std::nullopt, 5).values,
            (std::vector<std::uint64_t>{5, 10, 15, 20, 25}));
  EXPECT_EQ(reference_sequence(SequenceKind::champernowne, 3, 4).values, (std::vector<std::uint64_t>{11, 7, 14}));
  EXPECT_EQ(parse_sequence_kind("sqrt_n"), SequenceKind::sqrt_n);
  EXPECT_THROW(parse_sequence_kind("gauss"), std::invalid_argument);
}

}  // namespace
}  // namespace champ_ppc
