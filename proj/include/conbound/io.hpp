// Copyright 2026 The conbound Authors. All Rights Reserved.
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
// =============================================================================
#ifndef CONBOUND_IO_HPP_
#define CONBOUND_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "conbound/experiments.hpp"
#include "conbound/portfolio.hpp"
#include "conbound/types.hpp"

namespace conbound::io {

enum class Format { Csv, Json, Table };

Format parse_format(std::string_view name);

/// A cell is empty, text, a real, an unsigned integer or a flag.
using Cell = std::variant<std::monostate, std::string, double, std::uint64_t, bool>;

/// Column-named rows; the common currency of every writer.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Doubles are written with 17 significant digits so that CSV re-parses to
/// the identical value. JSON is an array of objects keyed by column; non-finite
/// reals become null.
void write(std::ostream& os, const Table& table, Format format);

/// Parsed CSV text. `lines` holds the 1-based source line of each row.
struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> lines;
};

/// Splits comma-separated text, skipping blank lines and lines starting with
/// '#'. Fields are whitespace-trimmed. Throws ParseError on ragged rows.
CsvData read_csv(std::istream& is);

/// Reads a file, mapping open failures to IoError.
CsvData read_csv_file(const std::filesystem::path& path);

/// Parses a field as a finite-or-not real, reporting line and column on failure.
double parse_real(const CsvData& data, std::size_t row, std::size_t col);

/// Schema `name,mu,sigma,floor`.
std::vector<Investment> parse_investments(const CsvData& data);

/// Schema `mu,sigma,bound,side` with side in {ceiling, floor}.
std::vector<VariableSpec> parse_variables(const CsvData& data);

bool is_investment_header(std::span<const std::string> header);

Table bound_table(std::span<const BoundResult> results);
std::vector<BoundResult> parse_bound_table(const CsvData& data);

Table experiment_table(std::span<const ExperimentRecord> records);
std::vector<ExperimentRecord> parse_experiment_table(const CsvData& data);

/// Columns tau, alpha_1..alpha_n, phi_bound; failed points carry nan.
Table sweep_table(std::span<const SweepEntry> entries, std::size_t assets);

/// Sweep layout followed by lambda_1..lambda_n.
Table allocation_table(const AllocationResult& result);

Table validation_table(std::span<const ValidationRow> rows);

}  // namespace conbound::io

#endif  // CONBOUND_IO_HPP_
