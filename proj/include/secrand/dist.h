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
// Analytic distribution formulas: densities, CDFs, the Laplace inverse CDF
// used by inverse transform sampling, and the affine maps that turn standard
// draws into parameterized ones.
//
#ifndef SECRAND_DIST_H_
#define SECRAND_DIST_H_

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

#include "secrand/errors.h"
#include "secrand/urand.h"

namespace secrand {

struct UniformDist {
  double lower = 0.0;
  double upper = 1.0;
};
struct GaussianDist {
  double mean = 0.0;
  double stddev = 1.0;
};
struct LaplaceDist {
  double location = 0.0;
  double scale = 1.0;
};
struct ExponentialDist {
  double rate = 1.0;
};
struct GammaDist {
  double shape = 1.0;
  double scale = 1.0;
};
struct ChiSquaredDist {
  int degrees = 1;
};

using DistributionSpec = std::variant<UniformDist, GaussianDist, LaplaceDist,
                                      ExponentialDist, GammaDist, ChiSquaredDist>;

namespace internal {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

inline void Require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace internal

// Throws std::invalid_argument if the parameters are outside their domain.
inline void validate(const DistributionSpec& spec) {
  using internal::Require;
  std::visit(
      internal::Overloaded{
          [](const UniformDist& d) {
            Require(std::isfinite(d.lower) && std::isfinite(d.upper) &&
                        d.lower < d.upper,
                    "uniform: need finite a < b");
          },
          [](const GaussianDist& d) {
            Require(std::isfinite(d.mean) && d.stddev > 0.0 &&
                        std::isfinite(d.stddev),
                    "gaussian: need sigma > 0");
          },
          [](const LaplaceDist& d) {
            Require(std::isfinite(d.location) && d.scale > 0.0 &&
                        std::isfinite(d.scale),
                    "laplace: need b > 0");
          },
          [](const ExponentialDist& d) {
            Require(d.rate > 0.0 && std::isfinite(d.rate),
                    "exponential: need lambda > 0");
          },
          [](const GammaDist& d) {
            Require(d.shape > 0.0 && d.scale > 0.0 && std::isfinite(d.shape) &&
                        std::isfinite(d.scale),
                    "gamma: need k > 0 and theta > 0");
          },
          [](const ChiSquaredDist& d) {
            Require(d.degrees >= 1, "chi-squared: need k >= 1");
          },
      },
      spec);
}

// Standard Laplace CDF: e^x / 2 for x <= 0, 1 - e^-x / 2 otherwise.
inline double laplace_cdf(double x) {
  if (x <= 0.0) return 0.5 * std::exp(x);
  return 1.0 - 0.5 * std::exp(-x);
}

// Standard Laplace inverse CDF in the sign-selector form
//
//   F^-1(u) = (-1)^round(u) * log(1 - 2 |u - 0.5|)
//
// This is the exact expression naive samplers evaluate and the one the
// inversion attack inverts; keep it branch-for-branch.
//
// Throws std::domain_error at u = 0 or u = 1 (log 0) and
// std::invalid_argument outside [0, 1].
inline double laplace_inverse_cdf(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("laplace_inverse_cdf: u outside [0, 1]");
  }
  if (u == 0.0 || u == 1.0) {
    throw std::domain_error("laplace_inverse_cdf: log(0) at u = 0 or u = 1");
  }
  const double sign = round_to_multiple(u, 1.0) == 0.0 ? 1.0 : -1.0;
  return sign * std::log(1.0 - 2.0 * std::fabs(u - 0.5));
}

// Standard normal CDF via the complementary error function.
inline double gaussian_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

inline double pdf(const DistributionSpec& spec, double x) {
  validate(spec);
  constexpr double kInvSqrt2Pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
  return std::visit(
      internal::Overloaded{
          [x](const UniformDist& d) {
            return (x >= d.lower && x <= d.upper) ? 1.0 / (d.upper - d.lower)
                                                  : 0.0;
          },
          [x](const GaussianDist& d) {
            const double z = (x - d.mean) / d.stddev;
            return kInvSqrt2Pi / d.stddev * std::exp(-0.5 * z * z);
          },
          [x](const LaplaceDist& d) {
            return std::exp(-std::fabs(x - d.location) / d.scale) /
                   (2.0 * d.scale);
          },
          [x](const ExponentialDist& d) {
            return x < 0.0 ? 0.0 : d.rate * std::exp(-d.rate * x);
          },
          [x](const GammaDist& d) {
            if (x < 0.0) return 0.0;
            if (x == 0.0) {
              if (d.shape < 1.0) return HUGE_VAL;
              return d.shape == 1.0 ? 1.0 / d.scale : 0.0;
            }
            const double log_density = (d.shape - 1.0) * std::log(x) -
                                       x / d.scale - std::lgamma(d.shape) -
                                       d.shape * std::log(d.scale);
            return std::exp(log_density);
          },
          [x](const ChiSquaredDist& d) {
            const double half_k = 0.5 * d.degrees;
            if (x < 0.0) return 0.0;
            if (x == 0.0) {
              if (d.degrees == 1) return HUGE_VAL;
              return d.degrees == 2 ? 0.5 : 0.0;
            }
            const double log_density = (half_k - 1.0) * std::log(x) - 0.5 * x -
                                       half_k * std::numbers::ln2 -
                                       std::lgamma(half_k);
            return std::exp(log_density);
          },
      },
      spec);
}

// CDF where a closed form exists. Gamma and chi-squared throw
// UnsupportedError.
inline double cdf(const DistributionSpec& spec, double x) {
  validate(spec);
  return std::visit(
      internal::Overloaded{
          [x](const UniformDist& d) {
            if (x <= d.lower) return 0.0;
            if (x >= d.upper) return 1.0;
            return (x - d.lower) / (d.upper - d.lower);
          },
          [x](const GaussianDist& d) {
            return gaussian_cdf((x - d.mean) / d.stddev);
          },
          [x](const LaplaceDist& d) {
            return laplace_cdf((x - d.location) / d.scale);
          },
          [x](const ExponentialDist& d) {
            return x <= 0.0 ? 0.0 : -std::expm1(-d.rate * x);
          },
          [](const GammaDist&) -> double {
            throw UnsupportedError("cdf: gamma has no closed form here");
          },
          [](const ChiSquaredDist&) -> double {
            throw UnsupportedError("cdf: chi-squared has no closed form here");
          },
      },
      spec);
}

inline double mean(const DistributionSpec& spec) {
  validate(spec);
  return std::visit(
      internal::Overloaded{
          [](const UniformDist& d) { return 0.5 * (d.lower + d.upper); },
          [](const GaussianDist& d) { return d.mean; },
          [](const LaplaceDist& d) { return d.location; },
          [](const ExponentialDist& d) { return 1.0 / d.rate; },
          [](const GammaDist& d) { return d.shape * d.scale; },
          [](const ChiSquaredDist& d) { return static_cast<double>(d.degrees); },
      },
      spec);
}

inline double variance(const DistributionSpec& spec) {
  validate(spec);
  return std::visit(
      internal::Overloaded{
          [](const UniformDist& d) {
            const double w = d.upper - d.lower;
            return w * w / 12.0;
          },
          [](const GaussianDist& d) { return d.stddev * d.stddev; },
          [](const LaplaceDist& d) { return 2.0 * d.scale * d.scale; },
          [](const ExponentialDist& d) { return 1.0 / (d.rate * d.rate); },
          [](const GammaDist& d) { return d.shape * d.scale * d.scale; },
          [](const ChiSquaredDist& d) { return 2.0 * d.degrees; },
      },
      spec);
}

// Maps a draw from the standard member of the family onto `spec`:
//   Gaussian    sigma * N + mu
//   Laplace     b * L + mu
//   Exponential E / lambda
//   Gamma       c * G  with G ~ Gamma(k, 1), c = theta
// Uniform maps a U(0, 1) draw affinely onto [a, b]. Chi-squared has no
// scale relation and throws UnsupportedError.
inline double standardize(const DistributionSpec& spec, double standard_draw) {
  validate(spec);
  const double s = standard_draw;
  return std::visit(
      internal::Overloaded{
          [s](const UniformDist& d) { return d.lower + (d.upper - d.lower) * s; },
          [s](const GaussianDist& d) { return d.stddev * s + d.mean; },
          [s](const LaplaceDist& d) { return d.scale * s + d.location; },
          [s](const ExponentialDist& d) { return s / d.rate; },
          [s](const GammaDist& d) { return d.scale * s; },
          [](const ChiSquaredDist&) -> double {
            throw UnsupportedError("standardize: chi-squared has no scale map");
          },
      },
      spec);
}

}  // namespace secrand

#endif  // SECRAND_DIST_H_
