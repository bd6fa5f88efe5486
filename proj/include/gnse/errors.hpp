// Copyright 2026 The gnse Authors
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

namespace gnse {

/// Precondition violated by a caller-supplied argument.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A multiplier would divide by zero on a populated mode.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Statistics or fits that cannot produce a meaningful value.
class DegenerateData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lattice sum truncated before the cutoff support ends.
class IncompleteSum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CalibrationInconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the solver when dt violates the CFL-type guard.
class StepRejected : public std::runtime_error {
 public:
  StepRejected(const std::string& what, double admissible_dt)
      : std::runtime_error(what), admissible_dt_(admissible_dt) {}
  double admissible_dt() const noexcept { return admissible_dt_; }

 private:
  double admissible_dt_;
};

/// Fixed-point iteration of the resolvent map did not contract.
class NoContraction : public std::runtime_error {
 public:
  NoContraction(const std::string& what, double suggested_shift)
      : std::runtime_error(what), suggested_shift_(suggested_shift) {}
  double suggested_shift() const noexcept { return suggested_shift_; }

 private:
  double suggested_shift_;
};

}  // namespace gnse
