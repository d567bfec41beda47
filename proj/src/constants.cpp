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

#include "kltail/constants.hpp"

#include <math.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kltail {

namespace {

using std::numbers::e;
using std::numbers::pi;

// Stirling remainder log(n!) - [(n + 1/2) log n - n + log(2 pi)/2]; truncation
// error below 1e-14 for n >= 16.
double stirling_tail(double n) {
  const double r = 1.0 / n;
  const double r2 = r * r;
  return r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 / 1680.0)));
}

}  // namespace

const UniversalConstants& universal_constants() {
  static const UniversalConstants constants = [] {
    UniversalConstants u{};
    u.d0 = e * e * e / 2.0;
    u.C0 = e * e * e / (2.0 * pi);
    const double c1 = 2.0;
    const double c2 = pi / 2.0;
    u.C1 = (3.0 * c1 / c2) * std::sqrt(u.d0 / (2.0 * pi * e));
    return u;
  }();
  return constants;
}

WallisTable WallisTable::build(int m_max) {
  if (m_max < 0) {
    throw std::invalid_argument("WallisTable::build: m_max must be >= 0");
  }
  WallisTable t;
  t.max_index = m_max;
  const auto size = static_cast<std::size_t>(m_max) + 1;
  t.c.resize(size);
  t.h.resize(size);
  t.log_K.resize(size + 1);
  t.log_H.resize(size + 1);

  t.c[0] = pi;
  if (m_max >= 1) {
    t.c[1] = 2.0;
  }
  for (std::size_t m = 2; m < size; ++m) {
    t.c[m] = t.c[m - 2] * static_cast<double>(m - 1) / static_cast<double>(m);
  }
  for (std::size_t m = 0; m < size; ++m) {
    t.h[m] = (m == 2) ? t.c[1] : t.c[m];
  }
  t.log_K[0] = 0.0;
  t.log_H[0] = 0.0;
  for (std::size_t m = 0; m < size; ++m) {
    t.log_K[m + 1] = t.log_K[m] + std::log(t.c[m]);
    t.log_H[m + 1] = t.log_H[m] + std::log(t.h[m]);
  }
  return t;
}

double WallisTable::K(int m) const {
  return std::exp(log_K.at(static_cast<std::size_t>(m + 1)));
}

double WallisTable::H(int m) const {
  return std::exp(log_H.at(static_cast<std::size_t>(m + 1)));
}

std::shared_ptr<const WallisTable> wallis_table(int m_max) {
  static std::mutex mutex;
  static std::shared_ptr<const WallisTable> cached;

  const int wanted = m_max < 64 ? 64 : m_max;
  std::lock_guard<std::mutex> lock(mutex);
  if (!cached || cached->max_index < wanted) {
    int size = cached ? cached->max_index : 64;
    while (size < wanted) {
      size *= 2;
    }
    cached = std::make_shared<const WallisTable>(WallisTable::build(size));
  }
  return cached;
}

double wallis_c(int m) {
  if (m < 0) {
    throw std::invalid_argument("wallis_c: m must be >= 0, got " + std::to_string(m));
  }
  return wallis_table(m)->c[static_cast<std::size_t>(m)];
}

double log_wallis_K(int m) {
  if (m < -1) {
    throw std::invalid_argument("wallis_K: m must be >= -1, got " + std::to_string(m));
  }
  return wallis_table(m)->log_K[static_cast<std::size_t>(m + 1)];
}

double wallis_K(int m) { return std::exp(log_wallis_K(m)); }

double wallis_h(int m) {
  if (m < 0) {
    throw std::invalid_argument("wallis_h: m must be >= 0, got " + std::to_string(m));
  }
  return wallis_table(m)->h[static_cast<std::size_t>(m)];
}

double log_wallis_H(int m) {
  if (m < -1) {
    throw std::invalid_argument("wallis_H: m must be >= -1, got " + std::to_string(m));
  }
  return wallis_table(m)->log_H[static_cast<std::size_t>(m + 1)];
}

double log_factorial(std::uint64_t a) {
  // lgamma_r: std::lgamma writes the global signgam, which races across threads.
  int sign = 0;
  return ::lgamma_r(static_cast<double>(a) + 1.0, &sign);
}

double log_binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) {
    throw std::invalid_argument("log_binomial: b > a (" + std::to_string(b) + " > " +
                                std::to_string(a) + ")");
  }
  const std::uint64_t small = b < a - b ? b : a - b;
  if (small == 0) {
    return 0.0;
  }
  const double rest = static_cast<double>(a - small);
  if (small < 16) {
    // C(a, s) = prod_{j=1}^{s} (a - s + j) / j
    double sum = 0.0;
    for (std::uint64_t j = 1; j <= small; ++j) {
      sum += std::log1p(rest / static_cast<double>(j));
    }
    return sum;
  }
  // Stirling form with every term positive, so no cancellation between the
  // O(a log a) pieces that a plain lgamma difference would suffer.
  const double A = static_cast<double>(a);
  const double B = static_cast<double>(small);
  const double C = rest;
  const double main = B * std::log(A / B) - C * std::log1p(-B / A) +
                      0.5 * std::log(A / (B * C)) - 0.5 * std::log(2.0 * pi);
  return main + stirling_tail(A) - stirling_tail(B) - stirling_tail(C);
}

}  // namespace kltail
