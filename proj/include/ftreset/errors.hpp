// Copyright 2026 The ftreset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ftreset {

// Bad caller input (shape mismatch, out-of-range parameter).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input violates a physical requirement such as detailed balance.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degenerate input for which the quantity is undefined.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A theorem hypothesis does not hold for the run being checked.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-error target below what the protocol family can reach.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& msg, double min_eps)
      : std::runtime_error(msg), min_eps_(min_eps) {}
  double min_achievable_eps() const { return min_eps_; }

 private:
  double min_eps_;
};

}  // namespace ftreset
