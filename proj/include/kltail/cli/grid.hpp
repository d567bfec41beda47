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
#include <string>
#include <string_view>
#include <vector>

namespace kltail::cli {

/// `points` evenly spaced values from start to stop inclusive.
std::vector<double> linear_grid(double start, double stop, std::uint64_t points);
/// Geometric spacing; requires 0 < start, 0 < stop.
std::vector<double> log_grid(double start, double stop, std::uint64_t points);

/// "start:stop:points[:lin|log]", linear by default.
std::vector<double> parse_eps_grid(std::string_view spec);

/// Canonical text of a grid spec, for config comment lines.
std::string grid_spec(double start, double stop, std::uint64_t points, bool log_spaced = false);

}  // namespace kltail::cli
