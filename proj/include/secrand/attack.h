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
// Candidate-elimination attacks on floating-point noise.
//
// An attacker sees q = v + noise for a hidden v drawn from a finite candidate
// set. For each candidate c it reconstructs the uniform(s) that would have
// produced q - c, snaps them to the uniform grid and replays the sampler.
// A candidate survives only if some grid point within `window` steps
// reproduces q bit for bit. Naive samplers are injective in their uniforms,
// so the true candidate always survives and the others drop out; divisible
// samplers leave nothing to reconstruct from a single output.
//
// Also here: the single-output level-curve search over the uniform grid and
// its expected cost.
//
#ifndef SECRAND_ATTACK_H_
#define SECRAND_ATTACK_H_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "secrand/dist.h"
#include "secrand/errors.h"
#include "secrand/sampler.h"
#include "secrand/urand.h"

namespace secrand {

// The released value: target plus scaled standard noise. Oracles and
// attackers share this expression so that their rounding agrees.
inline double add_noise(double target, double scale, double standard_draw) {
  return target + scale * standard_draw;
}

// A query answering target + noise with fresh noise on every call. Owns its
// source. Not copyable or movable, since the sampler refers to the source.
template <UniformSource Source = BitSource>
class QueryOracle {
 public:
  QueryOracle(double target, SamplerMethod noise, Precision p, Source source,
              double scale = 1.0)
      : target_(target),
        scale_(scale),
        source_(std::move(source)),
        sampler_(noise, p, source_) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw std::invalid_argument("oracle scale must be positive");
    }
  }

  QueryOracle(const QueryOracle&) = delete;
  QueryOracle& operator=(const QueryOracle&) = delete;

  double query() {
    ++call_count_;
    return add_noise(target_, scale_, sampler_());
  }

  std::uint64_t call_count() const { return call_count_; }
  const SamplerMethod& noise() const { return sampler_.method(); }
  double scale() const { return scale_; }
  // Whether the next query will be served from a cached Box-Muller output.
  // Stands in for the timing side channel that reveals this in practice.
  StreamPhase phase() const { return sampler_.phase(); }

 private:
  double target_;
  double scale_;
  std::uint64_t call_count_ = 0;
  Source source_;
  Sampler<Source> sampler_;
};

template <typename O>
concept Oracle = requires(O& o, const O& co) {
  { o.query() } -> std::same_as<double>;
  { co.noise() } -> std::convertible_to<const SamplerMethod&>;
  { co.phase() } -> std::same_as<StreamPhase>;
  { co.scale() } -> std::convertible_to<double>;
};

enum class AttackStatus { kIdentified, kAllEliminated, kBudgetExhausted };

struct EliminationStep {
  std::vector<double> query;       // one value, or a Box-Muller pair
  std::vector<double> eliminated;  // candidates removed by this query
};

struct AttackOutcome {
  AttackStatus status = AttackStatus::kBudgetExhausted;
  std::optional<double> identified;
  // Oracle rounds used: single queries for the Laplace attack, query pairs
  // for the Box-Muller pair attack.
  std::uint64_t queries_used = 0;
  std::vector<EliminationStep> trace;
};

struct AttackConfig {
  Precision precision = kDoublePrecision;
  // Grid points checked on each side of the reconstructed uniform.
  std::uint64_t window = 2;
  std::uint64_t max_queries = 100;
  // Once elimination leaves one candidate, it must survive this many more
  // queries before it is declared identified. An injective sampler never
  // rejects the true candidate, so this only filters out lucky survivors
  // against samplers the attack cannot invert. Not applied when the attack
  // starts from a single candidate.
  std::uint64_t confirmations = 20;
};

namespace internal {

inline std::uint64_t NearestNumerator(double u, Precision p) {
  const double top = static_cast<double>(p.grid_size() - 1);
  const double m = std::ldexp(round_to_multiple(u, p.step()), p.bits());
  return static_cast<std::uint64_t>(std::clamp(m, 0.0, top));
}

// Shared candidate-elimination loop. `survives(c, query)` decides one
// candidate; `next_query()` produces the next observation.
template <typename NextQuery, typename Survives>
AttackOutcome EliminateCandidates(std::vector<double> candidates,
                                  const AttackConfig& config,
                                  NextQuery&& next_query, Survives&& survives) {
  if (candidates.empty()) {
    throw std::invalid_argument("attack: candidate set is empty");
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  AttackOutcome outcome;
  // Runs one query against the current set. False once the budget is spent.
  auto round = [&]() -> bool {
    if (outcome.queries_used == config.max_queries) return false;
    EliminationStep step;
    step.query = next_query();
    ++outcome.queries_used;
    std::vector<double> kept;
    for (double c : candidates) {
      if (survives(c, step.query)) {
        kept.push_back(c);
      } else {
        step.eliminated.push_back(c);
      }
    }
    candidates = std::move(kept);
    outcome.trace.push_back(std::move(step));
    return true;
  };

  const bool narrowed = candidates.size() > 1;
  while (candidates.size() > 1) {
    if (!round()) return outcome;  // budget exhausted
  }
  for (std::uint64_t k = 0;
       narrowed && !candidates.empty() && k < config.confirmations; ++k) {
    if (!round()) return outcome;
  }
  if (candidates.empty()) {
    outcome.status = AttackStatus::kAllEliminated;
  } else {
    outcome.status = AttackStatus::kIdentified;
    outcome.identified = candidates.front();
  }
  return outcome;
}

}  // namespace internal

// True if some variate within `window` grid steps of the reconstructed one
// makes the naive Laplace mechanism release exactly q for candidate c.
inline bool laplace_candidate_survives(double q, double c, double scale,
                                       Precision p, std::uint64_t window) {
  const double d = (q - c) / scale;
  if (!std::isfinite(d)) return false;
  const UniformVariate centre{internal::NearestNumerator(laplace_cdf(d), p), p};
  for (const UniformVariate& u : neighbors(centre, window)) {
    if (add_noise(c, scale, naive_laplace_from(u)) == q) return true;
  }
  return false;
}

// Mironov's candidate-elimination attack against inverse transform Laplace
// noise. Queries until at most one candidate is left, confirms a lone
// survivor (AttackConfig::confirmations), and gives up when the query budget
// runs out. A singleton candidate set is identified without any query.
template <Oracle O>
AttackOutcome mironov_attack(O& oracle, std::vector<double> candidates,
                             const AttackConfig& config) {
  if (oracle.noise().family() != Family::kLaplace) {
    throw std::invalid_argument("mironov_attack: oracle noise is not Laplace");
  }
  const double scale = oracle.scale();
  return internal::EliminateCandidates(
      std::move(candidates), config,
      [&] { return std::vector<double>{oracle.query()}; },
      [&](double c, const std::vector<double>& q) {
        return laplace_candidate_survives(q[0], c, scale, config.precision,
                                          config.window);
      });
}

// Recovers (u1, u2) from a Box-Muller pair:
//   u1 = 1 - exp(-(n1^2 + n2^2) / 2)
//   u2 = atan2(n2, n1) / (2 pi), shifted by +1 when negative
// The quadrant arctangent covers n1 = 0 and places u2 in [0, 1). The squared
// radius is carried with its rounding error, corrected to first order.
// Throws std::invalid_argument at (0, 0), where the angle is undefined.
inline std::pair<double, double> invert_box_muller(double n1, double n2) {
  if (n1 == 0.0 && n2 == 0.0) {
    throw std::invalid_argument("invert_box_muller: (0, 0) has no angle");
  }
  // n1^2 + n2^2 as s + tail, exact up to the rounding of tail.
  const double p1 = n1 * n1;
  const double p2 = n2 * n2;
  const double s = p1 + p2;
  const double b = s - p1;
  const double tail = ((p1 - (s - b)) + (p2 - b)) + std::fma(n1, n1, -p1) +
                      std::fma(n2, n2, -p2);
  const double u1 =
      -std::expm1(-0.5 * s) + 0.5 * tail * std::exp(-0.5 * s);
  double u2 = std::atan2(n2, n1) / (2.0 * std::numbers::pi);
  if (u2 < 0.0) u2 += 1.0;
  if (u2 >= 1.0) u2 = 0.0;
  return {u1, u2};
}

// True if a grid pair near the reconstruction of (q1 - c, q2 - c) makes a
// Box-Muller mechanism release exactly (q1, q2).
inline bool pair_candidate_survives(double q1, double q2, double c,
                                    double scale, Precision p,
                                    std::uint64_t window) {
  const double d1 = (q1 - c) / scale;
  const double d2 = (q2 - c) / scale;
  if (!std::isfinite(d1) || !std::isfinite(d2)) return false;
  if (d1 == 0.0 && d2 == 0.0) {
    // Only u1 = 0 produces the origin.
    const GaussianPair z = box_muller_pair(0.0, 0.0);
    return add_noise(c, scale, z.cos_branch) == q1 &&
           add_noise(c, scale, z.sin_branch) == q2;
  }
  const auto [u1, u2] = invert_box_muller(d1, d2);
  const UniformVariate radial{internal::NearestNumerator(u1, p), p};
  const std::uint64_t grid = p.grid_size();
  const std::uint64_t angle_centre =
      static_cast<std::uint64_t>(std::ldexp(round_to_multiple(u2, p.step()),
                                            p.bits())) %
      grid;
  const std::uint64_t span = std::min<std::uint64_t>(2 * window + 1, grid);
  for (const UniformVariate& r : neighbors(radial, window)) {
    const double rv = r.value();
    // The angle is periodic, so its neighborhood wraps around the grid.
    for (std::uint64_t k = 0; k < span; ++k) {
      const std::uint64_t m = (angle_centre + grid - window % grid + k) % grid;
      const GaussianPair g =
          box_muller_pair(rv, UniformVariate{m, p}.value());
      if (add_noise(c, scale, g.cos_branch) == q1 &&
          add_noise(c, scale, g.sin_branch) == q2) {
        return true;
      }
    }
  }
  return false;
}

// The Gaussian extension of the attack: take two consecutive outputs, which
// for a caching Box-Muller stream are the cosine and sine outputs of one
// evaluation, and invert the pair. max_queries and queries_used count pairs.
//
// Throws PhaseError if the oracle has a cached output pending at the start;
// the attacker is expected to align first.
template <Oracle O>
AttackOutcome gaussian_pair_attack(O& oracle, std::vector<double> candidates,
                                   const AttackConfig& config) {
  if (oracle.noise().family() != Family::kGaussian) {
    throw std::invalid_argument(
        "gaussian_pair_attack: oracle noise is not Gaussian");
  }
  if (oracle.phase() != StreamPhase::kEmpty) {
    throw PhaseError("gaussian_pair_attack: oracle has a cached variate");
  }
  const double scale = oracle.scale();
  return internal::EliminateCandidates(
      std::move(candidates), config,
      [&] {
        const double first = oracle.query();
        const double second = oracle.query();
        return std::vector<double>{first, second};
      },
      [&](double c, const std::vector<double>& q) {
        return pair_candidate_survives(q[0], q[1], c, scale, config.precision,
                                       config.window);
      });
}

// Level curve of a single cosine output: the u1 that pairs with u2 to give
// n1, 1 - exp(-n1^2 / (2 cos^2(2 pi u2))). Throws std::domain_error if the
// cosine is exactly zero.
inline double level_curve_u1(double n1, double u2) {
  const double c = std::cos(2.0 * std::numbers::pi * u2);
  if (c == 0.0) throw std::domain_error("level_curve_u1: cos(2 pi u2) = 0");
  return -std::expm1(-(n1 * n1) / (2.0 * c * c));
}

// Number of grid values u1 with 1 - exp(-n1^2 / 2) <= u1 < 1. Since
// |cos| <= 1, only these can lie on the level curve of n1.
inline std::uint64_t count_feasible_checks(double n1, Precision p) {
  if (!std::isfinite(n1)) {
    throw std::invalid_argument("count_feasible_checks: n1 must be finite");
  }
  const double lower = -std::expm1(-0.5 * n1 * n1);
  const double first = std::ceil(std::ldexp(lower, p.bits()));
  const double grid = static_cast<double>(p.grid_size());
  return static_cast<std::uint64_t>(grid - std::min(first, grid));
}

// Mean of count_feasible_checks over N ~ N(0, 1): 2^p / sqrt(2).
inline double expected_checks(Precision p) {
  return std::exp2(static_cast<double>(p.bits()) - 0.5);
}

struct BruteForceResult {
  std::vector<std::pair<UniformVariate, UniformVariate>> solutions;
  // Grid values of u1 examined: the size of the search space.
  std::uint64_t checks = 0;
  // Forward Box-Muller evaluations performed.
  std::uint64_t evaluations = 0;
};

inline constexpr int kBruteForceMaxBits = 20;

namespace internal {

// Searches u1 numerators in [first, last).
inline BruteForceResult BruteForceRange(double n1, Precision p,
                                        std::uint64_t window,
                                        std::uint64_t first,
                                        std::uint64_t last) {
  BruteForceResult out;
  const std::uint64_t grid = p.grid_size();
  const std::uint64_t span = std::min<std::uint64_t>(2 * window + 1, grid);
  std::vector<std::uint64_t> angles;
  for (std::uint64_t m1 = first; m1 < last; ++m1) {
    ++out.checks;
    const UniformVariate radial{m1, p};
    const double u1 = radial.value();
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
    if (radius == 0.0) {
      // Every angle maps to zero.
      if (n1 == 0.0) {
        for (std::uint64_t m2 = 0; m2 < grid; ++m2) {
          out.solutions.emplace_back(radial, UniformVariate{m2, p});
        }
      }
      continue;
    }
    const double ratio = std::clamp(n1 / radius, -1.0, 1.0);
    const double theta = std::acos(ratio) / (2.0 * std::numbers::pi);
    // cos is even: the angle and its reflection both lie on the curve.
    const double centres[2] = {theta, 1.0 - theta};
    angles.clear();
    for (double centre : centres) {
      const std::uint64_t mc =
          static_cast<std::uint64_t>(std::ldexp(
              round_to_multiple(centre, p.step()), p.bits())) %
          grid;
      for (std::uint64_t k = 0; k < span; ++k) {
        angles.push_back((mc + grid - window % grid + k) % grid);
      }
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
    for (std::uint64_t m2 : angles) {
      ++out.evaluations;
      const UniformVariate angular{m2, p};
      if (box_muller_pair(u1, angular.value()).cos_branch == n1) {
        out.solutions.emplace_back(radial, angular);
      }
    }
  }
  return out;
}

}  // namespace internal

// Exhaustive search for every grid pair (u1, u2) whose Box-Muller cosine
// output is exactly n1. Enumerates u1 over the feasible interval (widened by
// `window` grid steps for rounding), solves the level curve for u2 and checks
// `window` grid points around each solution. The search can be split across
// `workers` threads; results and counters do not depend on the split.
//
// Throws CostGuardError above 20 bits of precision.
inline BruteForceResult brute_force_single_gaussian(double n1, Precision p,
                                                    std::uint64_t window,
                                                    unsigned workers = 1) {
  if (p.bits() > kBruteForceMaxBits) {
    throw CostGuardError("brute force refused above 20 bits of precision");
  }
  if (!std::isfinite(n1)) {
    throw std::invalid_argument("brute_force_single_gaussian: n1 not finite");
  }
  const std::uint64_t grid = p.grid_size();
  const std::uint64_t feasible = count_feasible_checks(n1, p);
  const std::uint64_t lowest = grid - feasible;
  const std::uint64_t first = lowest > window ? lowest - window : 0;

  workers = std::max(1u, workers);
  const std::uint64_t total = grid - first;
  const std::uint64_t chunk = (total + workers - 1) / workers;
  std::vector<BruteForceResult> parts(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(grid, first + w * chunk);
    const std::uint64_t end = std::min(grid, begin + chunk);
    if (workers == 1) {
      parts[w] = internal::BruteForceRange(n1, p, window, begin, end);
    } else {
      threads.emplace_back([&parts, w, n1, p, window, begin, end] {
        parts[w] = internal::BruteForceRange(n1, p, window, begin, end);
      });
    }
  }
  for (std::thread& t : threads) t.join();

  BruteForceResult merged;
  for (BruteForceResult& part : parts) {
    merged.checks += part.checks;
    merged.evaluations += part.evaluations;
    merged.solutions.insert(merged.solutions.end(), part.solutions.begin(),
                            part.solutions.end());
  }
  return merged;
}

}  // namespace secrand

#endif  // SECRAND_ATTACK_H_
