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

#include <iosfwd>
#include <string>
#include <vector>

#include "gnse/config.hpp"

namespace gnse {

enum class Verdict { pass, fail, underpowered, error };

struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::pass;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  /// 0 all pass, 1 any failure, 3 numerical abort, 4 underpowered statistics.
  int exit_code() const;
};

const std::vector<std::string>& verify_suites();

/// Runs one suite (or "all"), writing one NDJSON verdict per check to `out`
/// as it completes. Unknown suites throw InvalidArgument.
VerifyReport run_verify(const std::string& suite, const RunConfig& cfg, std::ostream& out);

std::string to_string(Verdict v);

}  // namespace gnse
