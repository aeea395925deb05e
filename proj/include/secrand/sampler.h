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
// Laplace and Gaussian samplers.
//
// Two kinds live here. The naive samplers (inverse transform Laplace and a
// Box-Muller stream that caches its sine output) are injective in their
// uniforms and can be inverted by an observer. The divisible samplers build
// each draw from several independent uniforms, so inverting one output means
// searching a product of uniform grids whose size grows exponentially with
// the number of components while the sampling cost grows linearly.
//
// All samplers emit standard draws (location 0, unit scale). Use
// secrand::standardize to apply a location and scale.
//
#ifndef SECRAND_SAMPLER_H_
#define SECRAND_SAMPLER_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "secrand/dist.h"
#include "secrand/urand.h"

namespace secrand {

struct GaussianPair {
  double cos_branch;
  double sin_branch;
};

// The Box-Muller map
//   N1 = sqrt(-2 log(1 - u1)) cos(2 pi u2)
//   N2 = sqrt(-2 log(1 - u1)) sin(2 pi u2)
// evaluated exactly as the streams below evaluate it. Attack code calls this
// too, so its floating-point expression must not change.
inline GaussianPair box_muller_pair(double u1, double u2) {
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

// Inverse transform Laplace draw from one variate. The variate 0 would hit
// log(0), so it is remapped to the smallest positive grid point.
inline double naive_laplace_from(const UniformVariate& u) {
  const std::uint64_t m = u.numerator == 0 ? 1 : u.numerator;
  return laplace_inverse_cdf(UniformVariate{m, u.precision}.value());
}

template <UniformSource Source>
double naive_laplace(Source& src, Precision p) {
  return naive_laplace_from(src.next_uniform(p));
}

enum class StreamPhase { kEmpty, kCached };

// Box-Muller generator that returns the cosine output and holds the sine
// output back for the next call, as most runtime libraries do.
template <UniformSource Source>
class GaussianStream {
 public:
  GaussianStream(Source& src, Precision p) : src_(&src), precision_(p) {}

  double next() {
    if (cache_) {
      const double out = *cache_;
      cache_.reset();
      return out;
    }
    const double u1 = src_->next_uniform(precision_).value();
    const double u2 = src_->next_uniform(precision_).value();
    const GaussianPair pair = box_muller_pair(u1, u2);
    cache_ = pair.sin_branch;
    return pair.cos_branch;
  }

  StreamPhase phase() const {
    return cache_ ? StreamPhase::kCached : StreamPhase::kEmpty;
  }
  Precision precision() const { return precision_; }

 private:
  Source* src_;
  Precision precision_;
  std::optional<double> cache_;
};

template <UniformSource Source>
double box_muller(GaussianStream<Source>& stream) {
  return stream.next();
}

// Sum of 2n Box-Muller outputs scaled by 1/sqrt(2n). Every call builds a fresh
// stream, so no cached variate ever crosses from one draw into the next.
// Consumes exactly 2n uniforms.
template <UniformSource Source>
double secure_gaussian(Source& src, Precision p, int n) {
  if (n < 1) throw std::invalid_argument("secure_gaussian: n must be >= 1");
  GaussianStream<Source> stream(src, p);
  double sum = 0.0;
  for (int i = 0; i < 2 * n; ++i) sum += stream.next();
  return sum / std::sqrt(2.0 * n);
}

inline double combine_sqsum(double n1, double n2, double n3, double n4) {
  return 0.5 * (n1 * n1 - n2 * n2 + n3 * n3 - n4 * n4);
}

inline double combine_proddiff(double n1, double n2, double n3, double n4) {
  return n1 * n2 - n3 * n4;
}

// (N1^2 - N2^2 + N3^2 - N4^2) / 2 with each N a secure_gaussian of
// divisibility m. Consumes 8m uniforms.
template <UniformSource Source>
double laplace_sqsum(Source& src, Precision p, int m) {
  if (m < 1) throw std::invalid_argument("laplace_sqsum: m must be >= 1");
  const double n1 = secure_gaussian(src, p, m);
  const double n2 = secure_gaussian(src, p, m);
  const double n3 = secure_gaussian(src, p, m);
  const double n4 = secure_gaussian(src, p, m);
  return combine_sqsum(n1, n2, n3, n4);
}

// N1 N2 - N3 N4 with each N a secure_gaussian of divisibility m. Consumes
// 8m uniforms.
template <UniformSource Source>
double laplace_proddiff(Source& src, Precision p, int m) {
  if (m < 1) throw std::invalid_argument("laplace_proddiff: m must be >= 1");
  const double n1 = secure_gaussian(src, p, m);
  const double n2 = secure_gaussian(src, p, m);
  const double n3 = secure_gaussian(src, p, m);
  const double n4 = secure_gaussian(src, p, m);
  return combine_proddiff(n1, n2, n3, n4);
}

// (-1)^s cos(pi * r), where s is the top bit of the variate's numerator and
// r the value of the remaining bits. Same law as cos(pi u), but symmetric
// about zero on a finite grid.
inline double symmetric_cos(const UniformVariate& u) {
  const int bits = u.precision.bits();
  const std::uint64_t sign_bit = std::uint64_t{1} << (bits - 1);
  const double magnitude =
      std::ldexp(static_cast<double>(u.numerator & (sign_bit - 1)), -bits);
  const double c = std::cos(std::numbers::pi * magnitude);
  return (u.numerator & sign_bit) ? -c : c;
}

// log(1 - U1) cos(pi U2) + log(1 - U3) cos(pi U4), four uniforms per draw.
// With `symmetric` set each cosine factor is symmetric_cos.
template <UniformSource Source>
double laplace_theorem(Source& src, Precision p, bool symmetric) {
  double out = 0.0;
  for (int term = 0; term < 2; ++term) {
    const UniformVariate radial = src.next_uniform(p);
    const UniformVariate angular = src.next_uniform(p);
    const double c = symmetric ? symmetric_cos(angular)
                               : std::cos(std::numbers::pi * angular.value());
    out += std::log(1.0 - radial.value()) * c;
  }
  return out;
}

// E1 - E2 with Ei = -log(1 - Ui). Only two components, so a full inversion
// costs a single 2^p search; kept as the weakest divisible form.
template <UniformSource Source>
double laplace_expdiff(Source& src, Precision p) {
  const double e1 = -std::log(1.0 - src.next_uniform(p).value());
  const double e2 = -std::log(1.0 - src.next_uniform(p).value());
  return e1 - e2;
}

enum class Family { kLaplace, kGaussian };

enum class Method {
  kNaiveLaplace,
  kLaplaceExpDiff,
  kLaplaceSqSum,
  kLaplaceProdDiff,
  kLaplaceTheorem,
  kLaplaceTheoremSymmetric,
  kBoxMuller,
  kSecureGaussian,
};

// A named sampling procedure plus its divisibility parameter (used by
// secure-gaussian, laplace-sqsum and laplace-proddiff; ignored elsewhere).
class SamplerMethod {
 public:
  static constexpr int kDefaultDivisibility = 4;

  explicit SamplerMethod(Method method, int divisibility = kDefaultDivisibility)
      : method_(method), divisibility_(divisibility) {
    if (divisibility < 1) {
      throw std::invalid_argument("divisibility must be >= 1");
    }
  }

  // Throws std::invalid_argument for unknown names.
  static SamplerMethod FromName(std::string_view name,
                                int divisibility = kDefaultDivisibility) {
    for (Method m : kAll) {
      if (NameOf(m) == name) return SamplerMethod(m, divisibility);
    }
    throw std::invalid_argument("unknown sampler method: " + std::string(name));
  }

  Method method() const { return method_; }
  int divisibility() const { return divisibility_; }
  std::string_view name() const { return NameOf(method_); }

  Family family() const {
    return (method_ == Method::kBoxMuller || method_ == Method::kSecureGaussian)
               ? Family::kGaussian
               : Family::kLaplace;
  }

  // True for samplers whose output is an injective image of one variate (or
  // one Box-Muller pair) and so can be inverted directly.
  bool is_naive() const {
    return method_ == Method::kNaiveLaplace || method_ == Method::kBoxMuller;
  }

  bool uses_divisibility() const {
    return method_ == Method::kSecureGaussian ||
           method_ == Method::kLaplaceSqSum ||
           method_ == Method::kLaplaceProdDiff;
  }

  // Uniform variates consumed per draw. The caching Box-Muller stream
  // consumes two per pair of draws, reported here as one.
  std::uint64_t uniforms_per_draw() const {
    const auto n = static_cast<std::uint64_t>(divisibility_);
    switch (method_) {
      case Method::kNaiveLaplace:
      case Method::kBoxMuller:
        return 1;
      case Method::kLaplaceExpDiff:
        return 2;
      case Method::kLaplaceTheorem:
      case Method::kLaplaceTheoremSymmetric:
        return 4;
      case Method::kSecureGaussian:
        return 2 * n;
      case Method::kLaplaceSqSum:
      case Method::kLaplaceProdDiff:
        return 8 * n;
    }
    return 0;
  }

  // The standard distribution the draws follow.
  DistributionSpec standard_distribution() const {
    if (family() == Family::kGaussian) return GaussianDist{0.0, 1.0};
    return LaplaceDist{0.0, 1.0};
  }

  static constexpr std::string_view NameOf(Method m) {
    switch (m) {
      case Method::kNaiveLaplace: return "naive-laplace";
      case Method::kLaplaceExpDiff: return "laplace-expdiff";
      case Method::kLaplaceSqSum: return "laplace-sqsum";
      case Method::kLaplaceProdDiff: return "laplace-proddiff";
      case Method::kLaplaceTheorem: return "laplace-theorem";
      case Method::kLaplaceTheoremSymmetric: return "laplace-theorem-symmetric";
      case Method::kBoxMuller: return "box-muller";
      case Method::kSecureGaussian: return "secure-gaussian";
    }
    return "";
  }

  static constexpr Method kAll[] = {
      Method::kNaiveLaplace,   Method::kLaplaceExpDiff,
      Method::kLaplaceSqSum,   Method::kLaplaceProdDiff,
      Method::kLaplaceTheorem, Method::kLaplaceTheoremSymmetric,
      Method::kBoxMuller,      Method::kSecureGaussian,
  };

 private:
  Method method_;
  int divisibility_;
};

// Runtime dispatch over SamplerMethod, bound to one source. Keeps the
// Box-Muller cache for the box-muller method; every other method is
// stateless between draws.
template <UniformSource Source>
class Sampler {
 public:
  Sampler(SamplerMethod method, Precision p, Source& src)
      : method_(method), precision_(p), src_(&src), stream_(src, p) {}

  Sampler(const Sampler&) = delete;
  Sampler& operator=(const Sampler&) = delete;

  double operator()() {
    Source& src = *src_;
    const Precision p = precision_;
    const int n = method_.divisibility();
    switch (method_.method()) {
      case Method::kNaiveLaplace: return naive_laplace(src, p);
      case Method::kLaplaceExpDiff: return laplace_expdiff(src, p);
      case Method::kLaplaceSqSum: return laplace_sqsum(src, p, n);
      case Method::kLaplaceProdDiff: return laplace_proddiff(src, p, n);
      case Method::kLaplaceTheorem: return laplace_theorem(src, p, false);
      case Method::kLaplaceTheoremSymmetric: return laplace_theorem(src, p, true);
      case Method::kBoxMuller: return box_muller(stream_);
      case Method::kSecureGaussian: return secure_gaussian(src, p, n);
    }
    throw std::logic_error("unhandled sampler method");
  }

  StreamPhase phase() const { return stream_.phase(); }
  const SamplerMethod& method() const { return method_; }
  Precision precision() const { return precision_; }

 private:
  SamplerMethod method_;
  Precision precision_;
  Source* src_;
  GaussianStream<Source> stream_;
};

}  // namespace secrand

#endif  // SECRAND_SAMPLER_H_
