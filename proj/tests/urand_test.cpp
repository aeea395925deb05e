//
// Copyright 2026 The secrand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#include "secrand/urand.h"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace secrand {
namespace {

TEST(PrecisionTest, RejectsOutOfRange) {
  EXPECT_THROW(Precision(0), std::invalid_argument);
  EXPECT_THROW(Precision(54), std::invalid_argument);
  EXPECT_NO_THROW(Precision(1));
  EXPECT_NO_THROW(Precision(53));
}

TEST(PrecisionTest, StepIsExactPowerOfTwo) {
  for (int bits = 1; bits <= 53; ++bits) {
    const Precision p(bits);
    EXPECT_EQ(p.step() * static_cast<double>(p.grid_size()), 1.0);
    EXPECT_EQ(std::ldexp(p.step(), bits), 1.0);
  }
}

TEST(UniformVariateTest, FromNumeratorChecksRange) {
  const Precision p(8);
  EXPECT_NO_THROW(UniformVariate::FromNumerator(255, p));
  EXPECT_THROW(UniformVariate::FromNumerator(256, p), std::invalid_argument);
  EXPECT_EQ(UniformVariate::FromNumerator(128, p).value(), 0.5);
}

TEST(NextUniformTest, RangeAndGranularityAtDoublePrecision) {
  BitSource src = BitSource::Seeded(17);
  for (int i = 0; i < 2; ++i) {
    const UniformVariate u = src.next_uniform(kDoublePrecision);
    const double v = u.value();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
    const double scaled = std::ldexp(v, 53);
    EXPECT_EQ(scaled, std::floor(scaled));
    EXPECT_EQ(static_cast<std::uint64_t>(scaled), u.numerator);
  }
}

TEST(NextUniformTest, EveryVariateIsOnTheGrid) {
  BitSource src = BitSource::Seeded(3);
  for (int bits : {1, 5, 12, 31, 52, 53}) {
    const Precision p(bits);
    for (int i = 0; i < 1000; ++i) {
      const UniformVariate u = src.next_uniform(p);
      ASSERT_LT(u.numerator, p.grid_size());
      const double v = u.value();
      ASSERT_GE(v, 0.0);
      ASSERT_LT(v, 1.0);
      ASSERT_EQ(std::ldexp(v, bits), static_cast<double>(u.numerator));
    }
  }
}

TEST(NextUniformTest, OneBitVariatesAreFair) {
  // Binomial(1e5, 1/2): sd = 158, so [49000, 51000] is a 6.3-sigma band.
  BitSource src = BitSource::Seeded(101);
  const Precision p(1);
  int zeros = 0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    if (src.next_uniform(p).value() == 0.0) ++zeros;
  }
  const double freq = static_cast<double>(zeros) / kDraws;
  EXPECT_GE(freq, 0.49);
  EXPECT_LE(freq, 0.51);
}

TEST(NextUniformTest, EightBitVariatesCoverTheGrid) {
  // P(some value missing) <= 256 * (255/256)^1e6, far below 1e-9.
  BitSource src = BitSource::Seeded(202);
  const Precision p(8);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000000; ++i) seen.insert(src.next_uniform(p).numerator);
  EXPECT_EQ(seen.size(), 256u);
}

TEST(NextUniformTest, ChiSquaredUniformityAtTenBits) {
  const Precision p(10);
  constexpr int kDraws = 1000000;
  std::vector<int> counts(p.grid_size(), 0);
  BitSource src = BitSource::Seeded(303);
  for (int i = 0; i < kDraws; ++i) ++counts[src.next_uniform(p).numerator];
  const double expected = static_cast<double>(kDraws) / p.grid_size();
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // Upper 0.001 quantile, z = 3.0902.
  const double critical =
      testing::ChiSquaredQuantile(static_cast<double>(p.grid_size() - 1), 3.0902);
  EXPECT_LT(chi2, critical);
}

TEST(BitSourceTest, CountsVariatesAndBits) {
  BitSource src = BitSource::Seeded(1);
  src.next_uniform(Precision(53));
  src.next_uniform(Precision(7));
  src.next_uniform(Precision(53));
  EXPECT_EQ(src.variates_drawn(), 3u);
  EXPECT_EQ(src.bits_drawn(), 113u);
}

TEST(BitSourceTest, ConsumesExactlyTheRequestedBits) {
  // The bit stream is the engine's words, most significant bit first.
  std::mt19937_64 reference(99);
  const std::uint64_t w0 = reference();
  const std::uint64_t w1 = reference();

  BitSource src = BitSource::Seeded(99);
  EXPECT_EQ(src.next_bits(32), w0 >> 32);
  EXPECT_EQ(src.next_bits(16), (w0 >> 16) & 0xffff);
  // Straddles the word boundary: 16 bits of w0 then 37 of w1.
  const std::uint64_t straddle = src.next_uniform(Precision(53)).numerator;
  EXPECT_EQ(straddle, ((w0 & 0xffff) << 37) | (w1 >> 27));
  EXPECT_EQ(src.next_bits(27), w1 & ((std::uint64_t{1} << 27) - 1));
}

TEST(BitSourceTest, FullWordRequest) {
  std::mt19937_64 reference(5);
  BitSource src = BitSource::Seeded(5);
  EXPECT_EQ(src.next_bits(64), reference());
  EXPECT_THROW(src.next_bits(0), std::invalid_argument);
  EXPECT_THROW(src.next_bits(65), std::invalid_argument);
}

TEST(BitSourceTest, SeededStreamsAreReproducible) {
  BitSource a = BitSource::Seeded(0xfeedULL);
  BitSource b = BitSource::Seeded(0xfeedULL);
  BitSource c = BitSource::Seeded(0xfeeeULL);
  bool differs = false;
  for (int i = 0; i < 10000; ++i) {
    const Precision p(1 + i % 53);
    const UniformVariate ua = a.next_uniform(p);
    ASSERT_EQ(ua, b.next_uniform(p));
    differs |= ua != c.next_uniform(p);
  }
  EXPECT_TRUE(differs);
  EXPECT_FALSE(a.is_secure());
}

TEST(BitSourceTest, SecureModeDraws) {
  BitSource a = BitSource::Secure();
  BitSource b = BitSource::Secure();
  EXPECT_TRUE(a.is_secure());
  // Two independent 53-bit draws collide with probability 2^-53.
  const UniformVariate ua = a.next_uniform(kDoublePrecision);
  EXPECT_NE(ua, b.next_uniform(kDoublePrecision));
  for (int i = 0; i < 1000; ++i) {
    const double v = a.next_uniform(kDoublePrecision).value();
    ASSERT_GE(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(RoundToMultipleTest, Examples) {
  EXPECT_EQ(round_to_multiple(0.3, 0.25), 0.25);
  EXPECT_EQ(round_to_multiple(0.375, 0.25), 0.5);  // tie, index 2 is even
  EXPECT_EQ(round_to_multiple(0.125, 0.25), 0.0);  // tie, index 0 is even
  EXPECT_EQ(round_to_multiple(0.7, 1.0), 1.0);
  EXPECT_EQ(round_to_multiple(0.5, 1.0), 0.0);
  EXPECT_EQ(round_to_multiple(1.5, 1.0), 2.0);
  EXPECT_EQ(round_to_multiple(-0.375, 0.25), -0.5);
}

TEST(RoundToMultipleTest, Errors) {
  EXPECT_THROW(round_to_multiple(std::nan(""), 1.0), std::invalid_argument);
  EXPECT_THROW(round_to_multiple(INFINITY, 1.0), std::invalid_argument);
  EXPECT_THROW(round_to_multiple(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(round_to_multiple(1.0, -0.5), std::invalid_argument);
}

TEST(RoundToMultipleTest, ResultIsNearestMultiple) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> xs(-100.0, 100.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = xs(gen);
    const double k = std::ldexp(1.0, static_cast<int>(gen() % 20) - 10);
    const double r = round_to_multiple(x, k);
    ASSERT_LE(std::fabs(r - x), 0.5 * k);
    ASSERT_EQ(std::fmod(r, k), 0.0);
  }
}

TEST(NeighborsTest, Examples) {
  const Precision p(8);
  auto numerators = [](const std::vector<UniformVariate>& v) {
    std::vector<std::uint64_t> out;
    for (const auto& u : v) out.push_back(u.numerator);
    return out;
  };
  EXPECT_EQ(numerators(neighbors({5, p}, 1)),
            (std::vector<std::uint64_t>{4, 5, 6}));
  EXPECT_EQ(numerators(neighbors({0, p}, 2)),
            (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_EQ(numerators(neighbors({255, p}, 1)),
            (std::vector<std::uint64_t>{254, 255}));
  EXPECT_EQ(numerators(neighbors({7, p}, 0)), (std::vector<std::uint64_t>{7}));
  EXPECT_EQ(neighbors({0, Precision(1)}, 10).size(), 2u);
  EXPECT_EQ(neighbors({5, p}, 1)[0].value(), 4.0 / 256.0);
}

TEST(ReplaySourceTest, ReplaysAndExhausts) {
  ReplaySource src({3, 0, 255});
  const Precision p(8);
  EXPECT_EQ(src.next_uniform(p).numerator, 3u);
  EXPECT_EQ(src.next_uniform(p).numerator, 0u);
  EXPECT_EQ(src.next_uniform(p).numerator, 255u);
  EXPECT_EQ(src.consumed(), 3u);
  EXPECT_THROW(src.next_uniform(p), std::out_of_range);
}

TEST(ReplaySourceTest, FromValuesNeedsGridPoints) {
  const Precision p(4);
  ReplaySource src = ReplaySource::FromValues({0.5, 0.0625}, p);
  EXPECT_EQ(src.next_uniform(p).numerator, 8u);
  EXPECT_EQ(src.next_uniform(p).numerator, 1u);
  EXPECT_THROW(ReplaySource::FromValues({0.3}, p), std::invalid_argument);
  EXPECT_THROW(ReplaySource::FromValues({1.0}, p), std::invalid_argument);
}

}  // namespace
}  // namespace secrand
