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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kltail {

/// Validation failure for a probability or count vector. `index()` names the
/// offending coordinate, or -1 when the problem is global (length, total mass).
class DistributionError : public std::invalid_argument {
 public:
  DistributionError(const std::string& what, long index)
      : std::invalid_argument(what), index_(index) {}
  [[nodiscard]] long index() const { return index_; }

 private:
  long index_;
};

/// A probability vector on the alphabet {0, ..., k-1}, k >= 2, summing to one
/// within 1e-12.
class Distribution {
 public:
  static constexpr double kMassTolerance = 1e-12;

  static Distribution from_probs(std::vector<double> probs);
  static Distribution uniform(std::size_t k);

  [[nodiscard]] std::span<const double> probs() const { return probs_; }
  [[nodiscard]] std::size_t size() const { return probs_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return probs_[i]; }
  /// True iff every entry is > 0.
  [[nodiscard]] bool strictly_interior() const { return interior_; }
  [[nodiscard]] bool is_uniform() const { return uniform_; }
  [[nodiscard]] double min_prob() const;

 private:
  Distribution(std::vector<double> probs, bool uniform);

  std::vector<double> probs_;
  bool interior_ = false;
  bool uniform_ = false;
};

/// Integer counts summing to n >= 1, the type of an n-sample.
class CountVector {
 public:
  static CountVector from_counts(std::vector<std::uint64_t> counts);

  [[nodiscard]] std::span<const std::uint64_t> counts() const { return counts_; }
  [[nodiscard]] std::uint64_t n() const { return n_; }
  [[nodiscard]] std::size_t size() const { return counts_.size(); }
  /// counts / n.
  [[nodiscard]] std::vector<double> empirical_law() const;

 private:
  CountVector(std::vector<std::uint64_t> counts, std::uint64_t n)
      : counts_(std::move(counts)), n_(n) {}

  std::vector<std::uint64_t> counts_;
  std::uint64_t n_;
};

/// Parses "uniform" (requires k), "p1,p2,..." or a JSON-style "[p1, p2, ...]".
/// Errors name the offending index.
Distribution parse_distribution(std::string_view text, std::size_t k = 0);

}  // namespace kltail
