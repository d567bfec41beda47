// Copyright 2026 The kltail Authors
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

#include <cstdint>
#include <ostream>

namespace kltail::cli {

struct VerifyOptions {
  std::uint64_t n_max = 18;
  std::uint64_t k_max = 4;
  std::uint64_t dists_per_cell = 20;
  std::uint64_t eps_points = 50;
  std::uint64_t seed = 20260101;
  double slack = 1e-12;
  /// Self-test: lowers the exact-sum prefactor by a factor of 1000.
  bool inject_bug = false;
  /// Adds a report-only section for the unproven bounds.
  bool conjectures = false;
};

/// Oracle-vs-bound soundness grid. Returns 0 iff every check passes; on the
/// first violation prints the counterexample to `err` and returns 1.
int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

}  // namespace kltail::cli
