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
#include <optional>
#include <string>
#include <vector>

#include "kltail/cli/table.hpp"

namespace kltail::cli {

struct FigureConfig {
  std::string id;
  /// Overrides for the figure's defaults.
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> k;
  std::optional<double> eps;
  std::optional<std::vector<double>> eps_grid;
  std::optional<std::string> eps_grid_text;
  /// fig5 only: n sweep endpoints.
  std::optional<std::uint64_t> n_min;
  std::optional<std::uint64_t> n_max;
  std::optional<std::uint64_t> points;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

/// fig1 .. fig7.
const std::vector<std::string>& figure_ids();

/// Series for one figure; log-probabilities are clamped with min(0, .).
/// Throws std::invalid_argument for an unknown id.
Table figure_table(const FigureConfig& config);

}  // namespace kltail::cli
