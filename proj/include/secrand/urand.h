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
// Precision-p uniform variates and the bit sources that produce them.
//
// A uniform variate is a dyadic rational m * 2^-p in [0, 1). It is stored by
// its integer numerator so that equality and neighbor enumeration are exact;
// the double value is always exactly representable because p <= 53.
//
#ifndef SECRAND_URAND_H_
#define SECRAND_URAND_H_

#include <sys/random.h>

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "secrand/errors.h"

namespace secrand {

// Number of random bits per uniform variate.
class Precision {
 public:
  static constexpr int kMinBits = 1;
  static constexpr int kMaxBits = 53;

  constexpr explicit Precision(int bits) : bits_(bits) {
    if (bits < kMinBits || bits > kMaxBits) {
      throw std::invalid_argument("precision must be in [1, 53], got " +
                                  std::to_string(bits));
    }
  }

  constexpr int bits() const { return bits_; }
  // 2^p, the number of distinct variates.
  constexpr std::uint64_t grid_size() const { return std::uint64_t{1} << bits_; }
  // 2^-p, the grid spacing.
  double step() const { return std::ldexp(1.0, -bits_); }

  friend constexpr bool operator==(Precision, Precision) = default;

 private:
  int bits_;
};

// The precision of a standard double-precision uniform draw.
inline constexpr Precision kDoublePrecision{53};

struct UniformVariate {
  std::uint64_t numerator = 0;
  Precision precision = kDoublePrecision;

  // Throws std::invalid_argument unless numerator < 2^p.
  static UniformVariate FromNumerator(std::uint64_t numerator, Precision p) {
    if (numerator >= p.grid_size()) {
      throw std::invalid_argument("uniform numerator out of range");
    }
    return UniformVariate{numerator, p};
  }

  double value() const {
    return std::ldexp(static_cast<double>(numerator), -precision.bits());
  }

  friend bool operator==(const UniformVariate&, const UniformVariate&) =
      default;
};

// Anything that hands out uniform variates at a requested precision.
template <typename S>
concept UniformSource = requires(S& source, Precision p) {
  { source.next_uniform(p) } -> std::same_as<UniformVariate>;
};

// Returns the multiple of `step` nearest to x. Ties go to the even multiple.
inline double round_to_multiple(double x, double step) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("round_to_multiple: x must be finite");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("round_to_multiple: step must be positive");
  }
  const double scaled = x / step;
  const double lower = std::floor(scaled);
  const double frac = scaled - lower;
  double index = lower;
  if (frac > 0.5) {
    index = lower + 1.0;
  } else if (frac == 0.5 && std::fmod(lower, 2.0) != 0.0) {
    index = lower + 1.0;
  }
  return index * step;
}

// All grid points within `window` steps of u, clamped to the grid, ascending.
inline std::vector<UniformVariate> neighbors(const UniformVariate& u,
                                             std::uint64_t window) {
  const std::uint64_t top = u.precision.grid_size() - 1;
  const std::uint64_t lo = u.numerator > window ? u.numerator - window : 0;
  const std::uint64_t hi = top - u.numerator > window ? u.numerator + window : top;
  std::vector<UniformVariate> out;
  out.reserve(hi - lo + 1);
  for (std::uint64_t m = lo; m <= hi; ++m) {
    out.push_back(UniformVariate{m, u.precision});
  }
  return out;
}

// Reads the operating system CSPRNG (getrandom(2)) through a small buffer.
class SystemEntropyEngine {
 public:
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    if (next_ == buffer_.size()) Refill();
    return buffer_[next_++];
  }

 private:
  void Refill() {
    auto* bytes = reinterpret_cast<unsigned char*>(buffer_.data());
    std::size_t filled = 0;
    const std::size_t want = sizeof(buffer_);
    while (filled < want) {
      const ssize_t got = ::getrandom(bytes + filled, want - filled, 0);
      if (got < 0) {
        if (errno == EINTR) continue;
        throw EntropyError("getrandom failed with errno " +
                           std::to_string(errno));
      }
      filled += static_cast<std::size_t>(got);
    }
    next_ = 0;
  }

  std::array<std::uint64_t, 32> buffer_{};
  std::size_t next_ = buffer_.size();
};

// Source of random bits and uniform variates.
//
// Secure mode reads the operating system CSPRNG; an attacker cannot predict
// forthcoming variates. Seeded mode runs a 64-bit Mersenne Twister and is
// fully reproducible, which is what tests and experiments need, but it is
// predictable and must not be used to protect real data.
//
// Bits are consumed exactly: a p-bit variate takes p bits from the stream and
// leftover bits carry over to the next request. Not thread-safe; give each
// thread its own source.
class BitSource {
 public:
  static BitSource Secure() { return BitSource(SystemEntropyEngine{}); }
  static BitSource Seeded(std::uint64_t seed) {
    return BitSource(std::mt19937_64{seed});
  }

  bool is_secure() const {
    return std::holds_alternative<SystemEntropyEngine>(engine_);
  }

  // The next `count` bits of the stream, most significant first.
  std::uint64_t next_bits(int count) {
    if (count < 1 || count > 64) {
      throw std::invalid_argument("next_bits: count must be in [1, 64]");
    }
    std::uint64_t out = 0;
    int need = count;
    while (need > 0) {
      if (available_ == 0) {
        reservoir_ = NextWord();
        available_ = 64;
      }
      const int take = std::min(need, available_);
      if (take == 64) {
        out = reservoir_;
        reservoir_ = 0;
      } else {
        out = (out << take) | (reservoir_ >> (64 - take));
        reservoir_ <<= take;
      }
      available_ -= take;
      need -= take;
    }
    bits_drawn_ += static_cast<std::uint64_t>(count);
    return out;
  }

  UniformVariate next_uniform(Precision p) {
    ++variates_drawn_;
    return UniformVariate{next_bits(p.bits()), p};
  }

  std::uint64_t variates_drawn() const { return variates_drawn_; }
  std::uint64_t bits_drawn() const { return bits_drawn_; }

 private:
  using Engine = std::variant<std::mt19937_64, SystemEntropyEngine>;

  explicit BitSource(Engine engine) : engine_(std::move(engine)) {}

  std::uint64_t NextWord() {
    return std::visit([](auto& e) -> std::uint64_t { return e(); }, engine_);
  }

  Engine engine_;
  std::uint64_t reservoir_ = 0;
  int available_ = 0;
  std::uint64_t variates_drawn_ = 0;
  std::uint64_t bits_drawn_ = 0;
};

// Replays a fixed list of numerators. Used to force specific uniforms into a
// sampler. Throws std::out_of_range once the script runs out.
class ReplaySource {
 public:
  explicit ReplaySource(std::vector<std::uint64_t> numerators)
      : numerators_(std::move(numerators)) {}

  // Convenience: exact grid values in [0, 1) at precision p.
  static ReplaySource FromValues(const std::vector<double>& values,
                                 Precision p) {
    std::vector<std::uint64_t> numerators;
    numerators.reserve(values.size());
    for (double v : values) {
      const double scaled = std::ldexp(v, p.bits());
      if (!(v >= 0.0 && v < 1.0) || scaled != std::floor(scaled)) {
        throw std::invalid_argument("value is not a grid point at precision");
      }
      numerators.push_back(static_cast<std::uint64_t>(scaled));
    }
    return ReplaySource(std::move(numerators));
  }

  UniformVariate next_uniform(Precision p) {
    if (next_ == numerators_.size()) {
      throw std::out_of_range("ReplaySource exhausted");
    }
    return UniformVariate::FromNumerator(numerators_[next_++], p);
  }

  std::size_t consumed() const { return next_; }

 private:
  std::vector<std::uint64_t> numerators_;
  std::size_t next_ = 0;
};

static_assert(UniformSource<BitSource>);
static_assert(UniformSource<ReplaySource>);

}  // namespace secrand

#endif  // SECRAND_URAND_H_
