// Copyright 2026 The acstab Authors.
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

#ifndef ACSTAB_CLI_CSV_HPP
#define ACSTAB_CLI_CSV_HPP

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace acstab::cli {

/// Nine significant digits, "inf"/"-inf"/"nan", and no negative zero, so the
/// same value always prints the same bytes.
std::string format_number(double v);
std::string format_number(int v);
std::string format_number(long long v);

/// Minimal CSV emitter: one header row, '\n' endings, '#' comment lines.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> columns);

  /// Cells are written verbatim; callers format numbers with format_number.
  void row(const std::vector<std::string>& cells);
  void comment(const std::string& text);
  std::size_t columns() const { return columns_.size(); }

 private:
  std::ostream& out_;
  std::vector<std::string> columns_;
};

}  // namespace acstab::cli

#endif  // ACSTAB_CLI_CSV_HPP
