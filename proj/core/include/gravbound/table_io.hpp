// Copyright 2026 The gravbound Authors.
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

#ifndef GRAVBOUND_TABLE_IO_HPP_
#define GRAVBOUND_TABLE_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gravbound {

// A numeric CSV table with a header row, stored row-major.
struct NumericTable {
  std::vector<std::string> header;
  std::vector<double> values;

  std::size_t cols() const { return header.size(); }
  std::size_t rows() const { return header.empty() ? 0 : values.size() / header.size(); }
  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * cols(), cols()};
  }
};

// %.17g, enough digits to round-trip any double.
std::string format_double(double v);

// Parses a header line followed by numeric rows. An empty file yields an
// empty table. Malformed or ragged rows raise ParseError with the 1-based
// line number.
NumericTable parse_numeric_csv(std::string_view text);
NumericTable read_numeric_csv(const std::filesystem::path& path);
std::string format_numeric_csv(const NumericTable& table);

std::string read_text_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it over `path`, creating
// parent directories as needed.
void atomic_write(const std::filesystem::path& path, std::string_view content);

}  // namespace gravbound

#endif  // GRAVBOUND_TABLE_IO_HPP_
