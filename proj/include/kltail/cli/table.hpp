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
#include <string>
#include <variant>
#include <vector>

namespace kltail::cli {

using Cell = std::variant<std::string, double, std::int64_t, bool>;

/// printf "%.17g"; the C locale is never changed, so '.' is the decimal point.
std::string format_number(double x);

enum class Format { csv, json };

Format parse_format(const std::string& name);

/// Rows of named columns plus '#' comment lines (CSV only).
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_comment(std::string line);
  void add_row(std::vector<Cell> row);

  [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }
  [[nodiscard]] const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  [[nodiscard]] const std::vector<std::string>& comments() const { return comments_; }

  /// Comments, header, rows; comma-separated with LF endings.
  void write_csv(std::ostream& out) const;
  /// Array of row objects keyed by column name. Non-finite numbers become null.
  void write_json(std::ostream& out) const;
  void write(std::ostream& out, Format format) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::string> comments_;
};

}  // namespace kltail::cli
