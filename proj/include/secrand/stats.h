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
// Goodness-of-fit and moment checks for sampler output.
//
#ifndef SECRAND_STATS_H_
#define SECRAND_STATS_H_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "secrand/errors.h"
#include "secrand/sampler.h"
#include "secrand/urand.h"

namespace secrand {

// Two-sided one-sample Kolmogorov-Smirnov statistic
//   D = max_i max(i/n - F(x_i), F(x_(i)) - (i-1)/n)
// `sorted_samples` must be in ascending order.
inline double ks_statistic(std::span<const double> sorted_samples,
                           const std::function<double(double)>& cdf) {
  if (sorted_samples.empty()) {
    throw std::invalid_argument("ks_statistic: no samples");
  }
  if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end())) {
    throw std::invalid_argument("ks_statistic: samples must be sorted");
  }
  const double n = static_cast<double>(sorted_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double f = cdf(sorted_samples[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

// Two-sample statistic: sup |F_a - F_b| over the pooled sample.
inline double ks_two_sample(std::span<const double> sorted_a,
                            std::span<const double> sorted_b) {
  if (sorted_a.empty() || sorted_b.empty()) {
    throw std::invalid_argument("ks_two_sample: no samples");
  }
  if (!std::is_sorted(sorted_a.begin(), sorted_a.end()) ||
      !std::is_sorted(sorted_b.begin(), sorted_b.end())) {
    throw std::invalid_argument("ks_two_sample: samples must be sorted");
  }
  const double na = static_cast<double>(sorted_a.size());
  const double nb = static_cast<double>(sorted_b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sorted_a.size() && j < sorted_b.size()) {
    const double x = std::min(sorted_a[i], sorted_b[j]);
    while (i < sorted_a.size() && sorted_a[i] == x) ++i;
    while (j < sorted_b.size() && sorted_b[j] == x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return d;
}

// Asymptotic Kolmogorov coefficient c(alpha) = sqrt(-ln(alpha / 2) / 2):
// 1.628 at alpha = 0.01, 1.358 at alpha = 0.05.
inline double ks_coefficient(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("ks_coefficient: alpha must be in (0, 1)");
  }
  return std::sqrt(-0.5 * std::log(0.5 * alpha));
}

inline double ks_critical_value(double alpha, std::size_t n) {
  if (n == 0) throw std::invalid_argument("ks_critical_value: n = 0");
  return ks_coefficient(alpha) / std::sqrt(static_cast<double>(n));
}

inline double ks_two_sample_critical_value(double alpha, std::size_t n,
                                           std::size_t m) {
  if (n == 0 || m == 0) {
    throw std::invalid_argument("ks_two_sample_critical_value: empty sample");
  }
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return ks_coefficient(alpha) * std::sqrt((nd + md) / (nd * md));
}

struct MomentSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

// Sample mean, unbiased variance, and standardized third and fourth central
// moments. The samples are summed in sorted order, so the result does not
// depend on input order. Needs at least four samples; throws
// std::domain_error when all samples are equal.
inline MomentSummary moments(std::span<const double> samples) {
  if (samples.size() < 4) {
    throw std::invalid_argument("moments: need at least 4 samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  double sum = 0.0;
  for (double x : sorted) sum += x;
  const double mean = sum / n;

  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double x : sorted) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  if (m2 == 0.0) {
    throw std::domain_error("moments: zero variance, shape undefined");
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;

  MomentSummary out;
  out.count = sorted.size();
  out.mean = mean;
  out.variance = m2 * n / (n - 1.0);
  out.skewness = m3 / std::pow(m2, 1.5);
  out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  return out;
}

inline constexpr int kDistinctCountMaxBits = 16;

// Number of distinct bit patterns among `draws` outputs of `method`.
template <UniformSource Source>
std::size_t distinct_output_count(const SamplerMethod& method, Precision p,
                                  std::uint64_t draws, Source& source) {
  if (p.bits() > kDistinctCountMaxBits) {
    throw CostGuardError("distinct_output_count: precision above 16 bits");
  }
  Sampler<Source> sampler(method, p, source);
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < draws; ++i) {
    seen.insert(std::bit_cast<std::uint64_t>(sampler()));
  }
  return seen.size();
}

}  // namespace secrand

#endif  // SECRAND_STATS_H_
