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
// secrand: sample, attack, verify and measure floating-point DP samplers.
//
//   secrand sample --method laplace-theorem --count 3 --seed 7 --format csv
//   secrand attack --method naive-laplace --candidates 0,1 --target 1 --seed 3
//   secrand verify --method laplace-proddiff --n 1 --count 100000 --seed 5
//   secrand complexity --precision 12 --count 200 --seed 11
//
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.h"

namespace {

using secrand::cli::Format;
using secrand::cli::RunConfig;

void AddCommon(CLI::App* cmd, RunConfig& cfg, std::string& out_path) {
  cmd->add_option("-p,--precision", cfg.precision,
                  "random bits per uniform variate (1..53)")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed,
                  "64-bit seed; omit for the secure system generator");
  cmd->add_option("--format", cfg.format, "json or csv")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::kJson},
                                        {"csv", Format::kCsv}},
          CLI::ignore_case));
  cmd->add_option("--out", out_path, "write the report to FILE");
}

void AddMethod(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--method", cfg.method, "sampler method name")
      ->capture_default_str();
  cmd->add_option("-n,--n,-m,--m,--divisibility", cfg.divisibility,
                  "divisibility (secure-gaussian, laplace-sqsum, "
                  "laplace-proddiff)")
      ->capture_default_str();
  cmd->add_option("--epsilon", cfg.epsilon,
                  "privacy budget; Laplace scale is 1/epsilon");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floating-point-aware DP sampling, attacks and checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string out_path;

  CLI::App* sample = app.add_subcommand("sample", "emit draws from a sampler");
  AddCommon(sample, cfg, out_path);
  AddMethod(sample, cfg);
  sample->add_option("--count", cfg.count, "number of draws")
      ->capture_default_str();

  CLI::App* attack =
      app.add_subcommand("attack", "run a candidate-elimination attack");
  AddCommon(attack, cfg, out_path);
  AddMethod(attack, cfg);
  attack->add_option("--attack", cfg.attack, "mironov, gaussian-pair or auto")
      ->capture_default_str();
  attack->add_option("--candidates", cfg.candidates, "comma-separated values")
      ->delimiter(',')
      ->required();
  attack->add_option("--target", cfg.target,
                     "hidden value (default: first candidate)");
  attack->add_option("-W,--window", cfg.window, "grid neighborhood half-width")
      ->capture_default_str();
  attack->add_option("--max-queries", cfg.max_queries, "query budget")
      ->capture_default_str();
  attack->add_option("--confirmations", cfg.confirmations,
                     "extra checks a lone survivor must pass")
      ->capture_default_str();

  CLI::App* verify =
      app.add_subcommand("verify", "goodness-of-fit and moment checks");
  AddCommon(verify, cfg, out_path);
  AddMethod(verify, cfg);
  verify->add_option("--count", cfg.count, "number of draws");
  verify->add_option("--against", cfg.against, "laplace, gaussian or auto")
      ->capture_default_str();
  verify->add_option("--alpha", cfg.alpha, "KS significance level")
      ->capture_default_str();

  CLI::App* complexity = app.add_subcommand(
      "complexity", "brute-force cost of inverting one Gaussian output");
  AddCommon(complexity, cfg, out_path);
  complexity->add_option("--count", cfg.count, "number of seeded draws");
  complexity->add_option("-W,--window", cfg.window,
                         "grid neighborhood half-width")
      ->capture_default_str();
  complexity->add_flag("--theoretical-only", cfg.theoretical_only,
                       "only print 2^(p - 1/2)");
  complexity->add_option("--workers", cfg.workers, "search threads")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return secrand::cli::kExitUsage;
  }

  if (sample->parsed()) {
    cfg.command = secrand::cli::Command::kSample;
  } else if (attack->parsed()) {
    cfg.command = secrand::cli::Command::kAttack;
  } else if (verify->parsed()) {
    cfg.command = secrand::cli::Command::kVerify;
    if (verify->count("--count") == 0) cfg.count = 100000;
  } else {
    cfg.command = secrand::cli::Command::kComplexity;
    if (complexity->count("--count") == 0) cfg.count = 200;
  }

  if (out_path.empty()) return secrand::cli::run(cfg, std::cout, std::cerr);
  std::ofstream file(out_path);
  if (!file) {
    std::cerr << "cannot open " << out_path << '\n';
    return secrand::cli::kExitUsage;
  }
  return secrand::cli::run(cfg, file, std::cerr);
}
