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
#ifndef SECRAND_ERRORS_H_
#define SECRAND_ERRORS_H_

#include <stdexcept>

namespace secrand {

// Invalid parameters and precondition violations are reported with
// std::invalid_argument. Evaluation outside a formula's domain (log 0,
// zero cosine) uses std::domain_error. The types below cover the rest.

// The operating system refused to hand out entropy. Retrying may succeed.
class EntropyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation has no definition for the requested distribution.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A brute-force search was refused because it would not finish.
class CostGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// The Gaussian oracle had a cached variate pending when an attack began.
class PhaseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace secrand

#endif  // SECRAND_ERRORS_H_
