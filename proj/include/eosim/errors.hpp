// Copyright 2026 The eosim Authors
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

namespace eosim {

// Operator or state built with inconsistent dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Model parameters that cannot be simulated as given (bad rates, Fock
// truncation too small for the requested coherent amplitude, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the integrator when the state stops looking like a density
// matrix: Hermiticity drift above the hard limit or a step that increases
// the trace.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double time, long step)
      : std::runtime_error(what), time_(time), step_(step) {}

  double time() const noexcept { return time_; }
  long step() const noexcept { return step_; }

 private:
  double time_;
  long step_;
};

// An observable left its physical range by more than rounding noise.
class NumericalHealthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Conditioning on an event of zero probability.
class ConditionalStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eosim
