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
#include "cli/commands.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "secrand/attack.h"
#include "secrand/dist.h"
#include "secrand/sampler.h"
#include "secrand/stats.h"
#include "secrand/urand.h"

namespace secrand::cli {
namespace {

using Json = nlohmann::ordered_json;

void Require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

Precision ParsePrecision(int bits) {
  Require(bits >= Precision::kMinBits && bits <= Precision::kMaxBits,
          "--precision must be in [1, 53]");
  return Precision(bits);
}

SamplerMethod ParseMethod(const RunConfig& cfg) {
  Require(cfg.divisibility >= 1, "--n must be >= 1");
  try {
    return SamplerMethod::FromName(cfg.method, cfg.divisibility);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

BitSource MakeSource(const RunConfig& cfg) {
  return cfg.seed ? BitSource::Seeded(*cfg.seed) : BitSource::Secure();
}

// Scale applied to standard draws: 1/epsilon for Laplace noise, 1 otherwise.
double NoiseScale(const RunConfig& cfg, const SamplerMethod& method) {
  if (!cfg.epsilon) return 1.0;
  Require(*cfg.epsilon > 0.0 && std::isfinite(*cfg.epsilon),
          "--epsilon must be positive");
  Require(method.family() == Family::kLaplace,
          "--epsilon applies to Laplace methods only");
  return 1.0 / *cfg.epsilon;
}

Json OptionalSeed(const RunConfig& cfg) {
  return cfg.seed ? Json(*cfg.seed) : Json(nullptr);
}

Json OptionalDouble(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

// Common leading fields of every report.
Json Header(const char* command, const RunConfig& cfg,
            const SamplerMethod& method, double scale) {
  Json j;
  j["command"] = command;
  j["method"] = std::string(method.name());
  j["precision"] = cfg.precision;
  j["n"] = method.divisibility();
  j["seed"] = OptionalSeed(cfg);
  j["epsilon"] = OptionalDouble(cfg.epsilon);
  j["scale"] = scale;
  return j;
}

std::string JoinDoubles(const std::vector<double>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += format_double(values[i]);
  }
  return out;
}

std::string CsvMeta(const Json& header) {
  std::string line = "#";
  bool first = true;
  for (const auto& [key, value] : header.items()) {
    line += first ? " " : ",";
    first = false;
    line += key;
    line += "=";
    if (value.is_null()) {
    } else if (value.is_string()) {
      line += value.get<std::string>();
    } else if (value.is_number_float()) {
      line += format_double(value.get<double>());
    } else if (value.is_array()) {
      line += JoinDoubles(value.get<std::vector<double>>(), ';');
    } else {
      line += value.dump();
    }
  }
  return line + "\n";
}


const char* StatusName(AttackStatus status) {
  switch (status) {
    case AttackStatus::kIdentified: return "identified";
    case AttackStatus::kAllEliminated: return "all_eliminated";
    case AttackStatus::kBudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, result.ptr);
}

int run_sample(const RunConfig& cfg, std::ostream& out) {
  const Precision p = ParsePrecision(cfg.precision);
  const SamplerMethod method = ParseMethod(cfg);
  const double scale = NoiseScale(cfg, method);

  BitSource source = MakeSource(cfg);
  Sampler<BitSource> sampler(method, p, source);
  std::vector<double> draws;
  draws.reserve(cfg.count);
  for (std::uint64_t i = 0; i < cfg.count; ++i) {
    draws.push_back(add_noise(0.0, scale, sampler()));
  }

  Json report = Header("sample", cfg, method, scale);
  report["count"] = cfg.count;
  report["uniforms_per_draw"] = method.uniforms_per_draw();
  if (cfg.format == Format::kCsv) {
    out << CsvMeta(report) << "index,value\n";
    for (std::size_t i = 0; i < draws.size(); ++i) {
      out << i << ',' << format_double(draws[i]) << '\n';
    }
  } else {
    report["draws"] = draws;
    out << report.dump(2) << '\n';
  }
  return kExitOk;
}

int run_attack(const RunConfig& cfg, std::ostream& out) {
  const Precision p = ParsePrecision(cfg.precision);
  const SamplerMethod method = ParseMethod(cfg);
  const double scale = NoiseScale(cfg, method);
  Require(!cfg.candidates.empty(), "--candidates must list at least one value");
  for (double c : cfg.candidates) {
    Require(std::isfinite(c), "--candidates must be finite");
  }
  std::string attack = cfg.attack;
  if (attack == "auto") {
    attack = method.family() == Family::kLaplace ? "mironov" : "gaussian-pair";
  }
  Require(attack == "mironov" || attack == "gaussian-pair",
          "--attack must be mironov or gaussian-pair");
  Require(attack != "mironov" || method.family() == Family::kLaplace,
          "mironov attack needs a Laplace noise method");
  Require(attack != "gaussian-pair" || method.family() == Family::kGaussian,
          "gaussian-pair attack needs a Gaussian noise method");
  Require(cfg.window < p.grid_size(), "--window too large for precision");

  const double target = cfg.target.value_or(cfg.candidates.front());
  QueryOracle<BitSource> oracle(target, method, p, MakeSource(cfg), scale);
  AttackConfig config;
  config.precision = p;
  config.window = cfg.window;
  config.max_queries = cfg.max_queries;
  config.confirmations = cfg.confirmations;
  const AttackOutcome outcome =
      attack == "mironov" ? mironov_attack(oracle, cfg.candidates, config)
                          : gaussian_pair_attack(oracle, cfg.candidates, config);

  Json report = Header("attack", cfg, method, scale);
  report["attack"] = attack;
  report["candidates"] = cfg.candidates;
  report["target"] = target;
  report["window"] = cfg.window;
  report["max_queries"] = cfg.max_queries;
  report["confirmations"] = cfg.confirmations;
  report["status"] = StatusName(outcome.status);
  report["identified"] = OptionalDouble(outcome.identified);
  report["correct"] = outcome.identified && *outcome.identified == target;
  report["queries_used"] = outcome.queries_used;

  if (cfg.format == Format::kCsv) {
    out << CsvMeta(report) << "round,query,eliminated\n";
    for (std::size_t i = 0; i < outcome.trace.size(); ++i) {
      const EliminationStep& step = outcome.trace[i];
      out << i << ',' << JoinDoubles(step.query, ';') << ','
          << JoinDoubles(step.eliminated, ';') << '\n';
    }
  } else {
    Json trace = Json::array();
    for (const EliminationStep& step : outcome.trace) {
      trace.push_back({{"query", step.query}, {"eliminated", step.eliminated}});
    }
    report["trace"] = std::move(trace);
    out << report.dump(2) << '\n';
  }
  return outcome.status == AttackStatus::kIdentified ? kExitOk : kExitNegative;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const Precision p = ParsePrecision(cfg.precision);
  const SamplerMethod method = ParseMethod(cfg);
  const double scale = NoiseScale(cfg, method);
  Require(cfg.count >= 4, "--count must be at least 4 for moment checks");
  Require(cfg.alpha > 0.0 && cfg.alpha < 1.0, "--alpha must be in (0, 1)");

  std::string against = cfg.against;
  if (against == "auto") {
    against = method.family() == Family::kLaplace ? "laplace" : "gaussian";
  }
  Require(against == "laplace" || against == "gaussian",
          "--against must be laplace, gaussian or auto");
  const DistributionSpec reference =
      against == "laplace" ? DistributionSpec{LaplaceDist{0.0, scale}}
                           : DistributionSpec{GaussianDist{0.0, scale}};

  BitSource source = MakeSource(cfg);
  Sampler<BitSource> sampler(method, p, source);
  std::vector<double> draws;
  draws.reserve(cfg.count);
  for (std::uint64_t i = 0; i < cfg.count; ++i) {
    draws.push_back(add_noise(0.0, scale, sampler()));
  }
  std::sort(draws.begin(), draws.end());

  const double ks = ks_statistic(
      draws, [&reference](double x) { return cdf(reference, x); });
  const double critical = ks_critical_value(cfg.alpha, draws.size());
  const bool ks_pass = ks < critical;

  MomentSummary summary;
  bool moments_defined = true;
  try {
    summary = moments(draws);
  } catch (const std::domain_error&) {
    moments_defined = false;
  }
  const double expected_variance = variance(reference);
  constexpr double kVarianceTolerance = 0.03;
  const double lower = expected_variance * (1.0 - kVarianceTolerance);
  const double upper = expected_variance * (1.0 + kVarianceTolerance);
  const bool variance_pass = moments_defined && summary.variance >= lower &&
                             summary.variance <= upper;
  const bool pass = ks_pass && variance_pass;

  Json report = Header("verify", cfg, method, scale);
  report["against"] = against;
  report["count"] = cfg.count;
  report["alpha"] = cfg.alpha;
  report["ks"] = {{"statistic", ks}, {"critical_value", critical},
                  {"pass", ks_pass}};
  if (moments_defined) {
    report["moments"] = {{"count", summary.count},
                         {"mean", summary.mean},
                         {"variance", summary.variance},
                         {"skewness", summary.skewness},
                         {"excess_kurtosis", summary.excess_kurtosis}};
  } else {
    report["moments"] = nullptr;
  }
  report["variance_check"] = {{"expected", expected_variance},
                              {"lower", lower},
                              {"upper", upper},
                              {"pass", variance_pass}};
  report["pass"] = pass;

  if (cfg.format == Format::kCsv) {
    Json meta = Header("verify", cfg, method, scale);
    meta["against"] = against;
    meta["count"] = cfg.count;
    meta["alpha"] = cfg.alpha;
    out << CsvMeta(meta) << "check,value,threshold,pass\n";
    out << "ks," << format_double(ks) << ',' << format_double(critical) << ','
        << (ks_pass ? "true" : "false") << '\n';
    out << "variance,"
        << (moments_defined ? format_double(summary.variance) : "") << ','
        << format_double(lower) << ';' << format_double(upper) << ','
        << (variance_pass ? "true" : "false") << '\n';
  } else {
    out << report.dump(2) << '\n';
  }
  return pass ? kExitOk : kExitNegative;
}

int run_complexity(const RunConfig& cfg, std::ostream& out) {
  const Precision p = ParsePrecision(cfg.precision);
  const double theoretical = expected_checks(p);

  Json report;
  report["command"] = "complexity";
  report["precision"] = cfg.precision;
  report["seed"] = OptionalSeed(cfg);
  report["mode"] = cfg.theoretical_only ? "theoretical" : "empirical";
  report["theoretical_checks"] = theoretical;
  report["theoretical_log2"] = p.bits() - 0.5;

  if (!cfg.theoretical_only) {
    Require(p.bits() <= kBruteForceMaxBits,
            "empirical complexity refused above 20 bits of precision; use "
            "--theoretical-only");
    Require(cfg.count >= 1, "--count must be at least 1");
    Require(cfg.window < p.grid_size(), "--window too large for precision");
    BitSource source = MakeSource(cfg);
    double total_checks = 0.0;
    double total_feasible = 0.0;
    std::uint64_t recovered = 0;
    for (std::uint64_t i = 0; i < cfg.count; ++i) {
      const UniformVariate u1 = source.next_uniform(p);
      const UniformVariate u2 = source.next_uniform(p);
      const double n1 = box_muller_pair(u1.value(), u2.value()).cos_branch;
      const BruteForceResult result =
          brute_force_single_gaussian(n1, p, cfg.window, cfg.workers);
      total_checks += static_cast<double>(result.checks);
      total_feasible += static_cast<double>(count_feasible_checks(n1, p));
      const auto planted = std::make_pair(u1, u2);
      if (std::find(result.solutions.begin(), result.solutions.end(),
                    planted) != result.solutions.end()) {
        ++recovered;
      }
    }
    const double n = static_cast<double>(cfg.count);
    const double mean_checks = total_checks / n;
    report["count"] = cfg.count;
    report["window"] = cfg.window;
    report["empirical_mean_checks"] = mean_checks;
    report["feasible_mean_checks"] = total_feasible / n;
    report["ratio"] = mean_checks / theoretical;
    report["planted_recovered"] = recovered;
  }

  if (cfg.format == Format::kCsv) {
    out << "key,value\n";
    for (const auto& [key, value] : report.items()) {
      out << key << ',';
      if (value.is_null()) {
      } else if (value.is_string()) {
        out << value.get<std::string>();
      } else if (value.is_number_float()) {
        out << format_double(value.get<double>());
      } else {
        out << value.dump();
      }
      out << '\n';
    }
  } else {
    out << report.dump(2) << '\n';
  }
  return kExitOk;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::kSample: return run_sample(cfg, out);
      case Command::kAttack: return run_attack(cfg, out);
      case Command::kVerify: return run_verify(cfg, out);
      case Command::kComplexity: return run_complexity(cfg, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace secrand::cli
