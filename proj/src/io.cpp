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
#include "conbound/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "conbound/error.hpp"

namespace conbound::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string format_real(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string cell_text(const Cell& cell, int digits) {
  struct Visitor {
    int digits;
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double v) const { return format_real(v, digits); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{digits}, cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(double v) const {
      return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
    }
    nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

[[noreturn]] void parse_fail(const std::string& what, int line, int column) {
  std::ostringstream msg;
  msg << "line " << line;
  if (column > 0) msg << ", column " << column;
  msg << ": " << what;
  throw ParseError(msg.str(), line, column);
}

void expect_header(const CsvData& data, std::span<const std::string_view> expected,
                   std::string_view schema) {
  bool ok = data.header.size() == expected.size();
  for (std::size_t i = 0; ok && i < expected.size(); ++i) {
    ok = data.header[i] == expected[i];
  }
  if (!ok) parse_fail("expected header '" + std::string(schema) + "'", 1, 0);
}

std::uint64_t parse_unsigned(const CsvData& data, std::size_t row, std::size_t col) {
  const std::string& s = data.rows[row][col];
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    parse_fail("'" + s + "' is not an unsigned integer", data.lines[row],
               static_cast<int>(col) + 1);
  }
  return v;
}

std::size_t column_index(const CsvData& data, std::string_view name) {
  const auto it = std::find(data.header.begin(), data.header.end(), name);
  if (it == data.header.end()) parse_fail("missing column '" + std::string(name) + "'", 1, 0);
  return static_cast<std::size_t>(it - data.header.begin());
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  if (name == "table") return Format::Table;
  throw DomainError("unknown output format '" + std::string(name) + "'");
}

void write(std::ostream& os, const Table& table, Format format) {
  switch (format) {
    case Format::Csv: {
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        os << (c ? "," : "") << table.columns[c];
      }
      os << '\n';
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          os << (c ? "," : "") << cell_text(row[c], 17);
        }
        os << '\n';
      }
      break;
    }
    case Format::Json: {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& row : table.rows) {
        auto obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = cell_json(row[c]);
        arr.push_back(std::move(obj));
      }
      os << arr.dump(2) << '\n';
      break;
    }
    case Format::Table: {
      std::vector<std::vector<std::string>> text;
      std::vector<std::size_t> width(table.columns.size());
      for (std::size_t c = 0; c < width.size(); ++c) width[c] = table.columns[c].size();
      for (const auto& row : table.rows) {
        auto& line = text.emplace_back();
        for (std::size_t c = 0; c < row.size(); ++c) {
          line.push_back(cell_text(row[c], 6));
          width[c] = std::max(width[c], line.back().size());
        }
      }
      auto emit = [&](const std::vector<std::string>& fields) {
        for (std::size_t c = 0; c < fields.size(); ++c) {
          if (c) os << "  ";
          os << fields[c] << std::string(width[c] - fields[c].size(), ' ');
        }
        os << '\n';
      };
      emit(table.columns);
      for (const auto& line : text) emit(line);
      break;
    }
  }
}

CsvData read_csv(std::istream& is) {
  CsvData data;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      fields.emplace_back(trim(body.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!have_header) {
      data.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != data.header.size()) {
      std::ostringstream msg;
      msg << "expected " << data.header.size() << " fields, found " << fields.size();
      parse_fail(msg.str(), line_no, 0);
    }
    data.rows.push_back(std::move(fields));
    data.lines.push_back(line_no);
  }
  if (!have_header) parse_fail("empty input, a header row is required", 1, 0);
  return data;
}

CsvData read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return read_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line(), e.column());
  }
}

double parse_real(const CsvData& data, std::size_t row, std::size_t col) {
  const std::string& s = data.rows[row][col];
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    parse_fail("'" + s + "' is not a number", data.lines[row], static_cast<int>(col) + 1);
  }
  return v;
}

bool is_investment_header(std::span<const std::string> header) {
  return header.size() == 4 && header[0] == "name" && header[1] == "mu" &&
         header[2] == "sigma" && header[3] == "floor";
}

std::vector<Investment> parse_investments(const CsvData& data) {
  static constexpr std::string_view kHeader[] = {"name", "mu", "sigma", "floor"};
  expect_header(data, kHeader, "name,mu,sigma,floor");
  std::vector<Investment> out;
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    Investment inv{data.rows[r][0], parse_real(data, r, 1), parse_real(data, r, 2),
                   parse_real(data, r, 3)};
    if (inv.name.empty()) parse_fail("empty investment name", data.lines[r], 1);
    out.push_back(std::move(inv));
  }
  return out;
}

std::vector<VariableSpec> parse_variables(const CsvData& data) {
  static constexpr std::string_view kHeader[] = {"mu", "sigma", "bound", "side"};
  expect_header(data, kHeader, "mu,sigma,bound,side");
  std::vector<VariableSpec> out;
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    VariableSpec v;
    v.mu = parse_real(data, r, 0);
    v.sigma = parse_real(data, r, 1);
    v.bound_value = parse_real(data, r, 2);
    try {
      v.bound_side = parse_side(data.rows[r][3]);
    } catch (const DomainError& e) {
      parse_fail(e.what(), data.lines[r], 4);
    }
    out.push_back(v);
  }
  return out;
}

Table bound_table(std::span<const BoundResult> results) {
  Table t;
  t.columns = {"method", "probability", "log_probability", "raw_log_bound", "lambda",
               "degenerate"};
  for (const auto& r : results) {
    t.rows.push_back({std::string(to_string(r.method)), r.probability, r.log_probability,
                      r.raw_log_bound,
                      r.lambda ? Cell(*r.lambda) : Cell(std::monostate{}), r.degenerate});
  }
  return t;
}

std::vector<BoundResult> parse_bound_table(const CsvData& data) {
  static constexpr std::string_view kHeader[] = {"method", "probability", "log_probability",
                                                 "raw_log_bound", "lambda", "degenerate"};
  expect_header(data, kHeader,
                "method,probability,log_probability,raw_log_bound,lambda,degenerate");
  std::vector<BoundResult> out;
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    BoundResult b;
    try {
      b.method = parse_method(data.rows[r][0]);
    } catch (const DomainError& e) {
      parse_fail(e.what(), data.lines[r], 1);
    }
    b.probability = parse_real(data, r, 1);
    b.log_probability = parse_real(data, r, 2);
    b.raw_log_bound = parse_real(data, r, 3);
    if (!data.rows[r][4].empty()) b.lambda = parse_real(data, r, 4);
    const auto& flag = data.rows[r][5];
    if (flag != "true" && flag != "false") {
      parse_fail("'" + flag + "' is not true or false", data.lines[r], 6);
    }
    b.degenerate = flag == "true";
    out.push_back(b);
  }
  return out;
}

Table experiment_table(std::span<const ExperimentRecord> records) {
  Table t;
  t.columns = {"instance_id", "n", "z", "t", "seed"};
  for (Method m : kAllMethods) t.columns.emplace_back(to_string(m));
  for (const auto& r : records) {
    std::vector<Cell> row{r.instance_id, static_cast<std::uint64_t>(r.n), r.z, r.t, r.seed};
    for (Method m : kAllMethods) row.emplace_back(r.log_bounds.at(m));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<ExperimentRecord> parse_experiment_table(const CsvData& data) {
  const std::size_t id = column_index(data, "instance_id");
  const std::size_t n = column_index(data, "n");
  const std::size_t z = column_index(data, "z");
  const std::size_t t = column_index(data, "t");
  const std::size_t seed = column_index(data, "seed");
  std::map<Method, std::size_t> method_cols;
  for (Method m : kAllMethods) method_cols[m] = column_index(data, to_string(m));
  std::vector<ExperimentRecord> out;
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    ExperimentRecord rec;
    rec.instance_id = parse_unsigned(data, r, id);
    rec.n = static_cast<int>(parse_unsigned(data, r, n));
    rec.z = parse_real(data, r, z);
    rec.t = parse_real(data, r, t);
    rec.seed = parse_unsigned(data, r, seed);
    for (const auto& [m, c] : method_cols) rec.log_bounds[m] = parse_real(data, r, c);
    out.push_back(std::move(rec));
  }
  return out;
}

Table sweep_table(std::span<const SweepEntry> entries, std::size_t assets) {
  Table t;
  t.columns.emplace_back("tau");
  for (std::size_t i = 1; i <= assets; ++i) t.columns.push_back("alpha_" + std::to_string(i));
  t.columns.emplace_back("phi_bound");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& e : entries) {
    std::vector<Cell> row{e.tau};
    for (std::size_t i = 0; i < assets; ++i) {
      row.emplace_back(e.result ? e.result->weights.at(i) : nan);
    }
    row.emplace_back(e.result ? e.result->phi_bound : nan);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table allocation_table(const AllocationResult& result) {
  SweepEntry entry{result.tau, result, {}};
  Table t = sweep_table({&entry, 1}, result.weights.size());
  for (std::size_t i = 0; i < result.lambdas.size(); ++i) {
    t.columns.push_back("lambda_" + std::to_string(i + 1));
    t.rows.front().emplace_back(result.lambdas[i]);
  }
  return t;
}

Table validation_table(std::span<const ValidationRow> rows) {
  Table t;
  t.columns = {"instance_id", "n", "z", "t", "method", "bound", "estimate", "std_error",
               "violated"};
  for (const auto& r : rows) {
    t.rows.push_back({r.instance_id, static_cast<std::uint64_t>(r.n), r.z, r.t,
                      std::string(to_string(r.method)), r.bound, r.estimate, r.std_error,
                      r.violated});
  }
  return t;
}

}  // namespace conbound::io
