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

#include "kltail/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "kltail/special.hpp"

namespace kltail {

Distribution::Distribution(std::vector<double> probs, bool uniform)
    : probs_(std::move(probs)), uniform_(uniform) {
  interior_ = std::all_of(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; });
}

Distribution Distribution::from_probs(std::vector<double> probs) {
  if (probs.size() < 2) {
    throw DistributionError("distribution needs at least 2 entries, got " +
                                std::to_string(probs.size()),
                            -1);
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw DistributionError(
          "probability at index " + std::to_string(i) + " is outside [0, 1]: " + std::to_string(p),
          static_cast<long>(i));
    }
    total += p;
  }
  if (std::fabs(total.value() - 1.0) > kMassTolerance) {
    throw DistributionError("probabilities sum to " + std::to_string(total.value()) +
                                ", expected 1",
                            -1);
  }
  const bool uniform = std::all_of(probs.begin(), probs.end(),
                                   [&](double p) { return p == probs.front(); });
  return Distribution(std::move(probs), uniform);
}

Distribution Distribution::uniform(std::size_t k) {
  if (k < 2) {
    throw DistributionError("uniform distribution needs k >= 2, got " + std::to_string(k), -1);
  }
  return Distribution(std::vector<double>(k, 1.0 / static_cast<double>(k)), true);
}

double Distribution::min_prob() const { return *std::min_element(probs_.begin(), probs_.end()); }

CountVector CountVector::from_counts(std::vector<std::uint64_t> counts) {
  if (counts.size() < 2) {
    throw DistributionError("count vector needs at least 2 entries", -1);
  }
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  if (n == 0) {
    throw DistributionError("count vector must have a positive total", -1);
  }
  return CountVector(std::move(counts), n);
}

std::vector<double> CountVector::empirical_law() const {
  std::vector<double> law(counts_.size());
  const double total = static_cast<double>(n_);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    law[i] = static_cast<double>(counts_[i]) / total;
  }
  return law;
}

Distribution parse_distribution(std::string_view text, std::size_t k) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) {
      s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) {
      s.remove_suffix(1);
    }
    return s;
  };
  text = trim(text);
  if (text == "uniform") {
    if (k < 2) {
      throw DistributionError("'uniform' needs an alphabet size k >= 2", -1);
    }
    return Distribution::uniform(k);
  }
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') {
      throw DistributionError("unterminated '[' in distribution list", -1);
    }
    text = trim(text.substr(1, text.size() - 2));
  }

  std::vector<double> probs;
  std::size_t index = 0;
  while (true) {
    const auto comma = text.find(',');
    const auto token = trim(text.substr(0, comma));
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc() || ptr != last) {
      throw DistributionError("cannot parse probability at index " + std::to_string(index) +
                                  ": '" + std::string(token) + "'",
                              static_cast<long>(index));
    }
    probs.push_back(value);
    ++index;
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  if (k != 0 && probs.size() != k) {
    throw DistributionError("distribution has " + std::to_string(probs.size()) +
                                " entries but k = " + std::to_string(k),
                            -1);
  }
  return Distribution::from_probs(std::move(probs));
}

}  // namespace kltail
