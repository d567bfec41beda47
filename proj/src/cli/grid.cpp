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

#include "kltail/cli/grid.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "kltail/cli/table.hpp"

namespace kltail::cli {

namespace {

[[noreturn]] void bad(std::string_view spec, const std::string& why) {
  throw std::invalid_argument("--eps-grid: '" + std::string(spec) + "': " + why);
}

template <typename T>
T parse_field(std::string_view spec, std::string_view field, const char* what) {
  T value{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) bad(spec, std::string("cannot parse ") + what);
  return value;
}

}  // namespace

std::vector<double> linear_grid(double start, double stop, std::uint64_t points) {
  if (points == 0) throw std::invalid_argument("linear_grid: points must be >= 1");
  if (points == 1) return {start};
  std::vector<double> out(points);
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::uint64_t i = 0; i < points; ++i) out[i] = start + step * static_cast<double>(i);
  out.back() = stop;
  return out;
}

std::vector<double> log_grid(double start, double stop, std::uint64_t points) {
  if (!(start > 0.0 && stop > 0.0)) {
    throw std::invalid_argument("log_grid: endpoints must be > 0");
  }
  auto out = linear_grid(std::log(start), std::log(stop), points);
  for (double& v : out) v = std::exp(v);
  out.front() = start;
  out.back() = stop;
  return out;
}

std::vector<double> parse_eps_grid(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto colon = spec.find(':', pos);
    parts.push_back(spec.substr(pos, colon == std::string_view::npos ? colon : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() != 3 && parts.size() != 4) bad(spec, "expected start:stop:points[:lin|log]");
  const auto start = parse_field<double>(spec, parts[0], "start");
  const auto stop = parse_field<double>(spec, parts[1], "stop");
  const auto points = parse_field<std::uint64_t>(spec, parts[2], "points");
  if (points == 0) bad(spec, "points must be >= 1");
  if (!std::isfinite(start) || !std::isfinite(stop)) bad(spec, "endpoints must be finite");
  const std::string_view mode = parts.size() == 4 ? parts[3] : "lin";
  if (mode == "lin") return linear_grid(start, stop, points);
  if (mode == "log") {
    if (!(start > 0.0 && stop > 0.0)) bad(spec, "log spacing needs positive endpoints");
    return log_grid(start, stop, points);
  }
  bad(spec, "spacing must be lin or log");
}

std::string grid_spec(double start, double stop, std::uint64_t points, bool log_spaced) {
  return format_number(start) + ":" + format_number(stop) + ":" + std::to_string(points) +
         (log_spaced ? ":log" : ":lin");
}

}  // namespace kltail::cli
