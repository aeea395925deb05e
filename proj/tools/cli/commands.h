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
// Subcommands of the secrand command-line tool. Each writes one report to
// `out` and returns the process exit code.
//
#ifndef SECRAND_TOOLS_CLI_COMMANDS_H_
#define SECRAND_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace secrand::cli {

inline constexpr int kExitOk = 0;
// Attack did not identify / a verification check failed.
inline constexpr int kExitNegative = 2;
// Bad flags, violated preconditions, refused work.
inline constexpr int kExitUsage = 64;

enum class Command { kSample, kAttack, kVerify, kComplexity };
enum class Format { kJson, kCsv };

struct RunConfig {
  Command command = Command::kSample;
  std::string method = "laplace-theorem";
  int precision = 53;
  int divisibility = 4;
  std::uint64_t count = 10;
  // Absent means secure mode.
  std::optional<std::uint64_t> seed;
  Format format = Format::kJson;
  // Laplace scale b = 1 / epsilon.
  std::optional<double> epsilon;

  // attack
  std::string attack = "auto";  // mironov | gaussian-pair | auto
  std::vector<double> candidates;
  std::optional<double> target;
  std::uint64_t window = 2;
  std::uint64_t max_queries = 100;
  std::uint64_t confirmations = 20;

  // verify
  std::string against = "auto";  // laplace | gaussian | auto
  double alpha = 0.01;

  // complexity
  bool theoretical_only = false;
  unsigned workers = 1;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

int run_sample(const RunConfig& cfg, std::ostream& out);
int run_attack(const RunConfig& cfg, std::ostream& out);
int run_verify(const RunConfig& cfg, std::ostream& out);
int run_complexity(const RunConfig& cfg, std::ostream& out);

// Dispatches on cfg.command. Usage errors are reported on `err` and mapped to
// kExitUsage.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Shortest decimal that parses back to the same double.
std::string format_double(double x);

}  // namespace secrand::cli

#endif  // SECRAND_TOOLS_CLI_COMMANDS_H_
