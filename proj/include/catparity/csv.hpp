// Copyright 2026 The catparity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>
#include <ostream>

namespace catparity {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

using CsvCell = std::variant<double, long long, std::string>;

class CsvTable {
   public:
    explicit CsvTable(std::vector<std::string> header);

    const std::vector<std::string> &header() const { return header_; }
    std::size_t rows() const { return rows_.size(); }
    const std::vector<CsvCell> &row(std::size_t i) const { return rows_[i]; }

    /// Throws UsageError when the row width differs from the header.
    void add_row(std::vector<CsvCell> row);
    void append(const CsvTable &other);

    void write(std::ostream &os) const;
    std::string str() const;
    /// Writes to path, or to stdout when path is empty or "-".
    void write_file(const std::string &path) const;

    int column(std::string_view name) const;
    double number(std::size_t r, std::string_view name) const;

   private:
    std::vector<std::string> header_;
    std::vector<std::vector<CsvCell>> rows_;
};

}  // namespace catparity
