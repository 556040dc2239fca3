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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "conbound/classical.hpp"
#include "conbound/error.hpp"
#include "conbound/experiments.hpp"

namespace conbound::io {
namespace {

CsvData csv(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

std::string render(const Table& table, Format format) {
  std::ostringstream out;
  write(out, table, format);
  return out.str();
}

TEST(CsvReadTest, SkipsCommentsAndTrims) {
  const auto data = csv("# portfolio\n name , mu,sigma,floor\n\na, 30 ,25,25\n# x\nb,100,20,5\n");
  EXPECT_EQ(data.header, (std::vector<std::string>{"name", "mu", "sigma", "floor"}));
  ASSERT_EQ(data.rows.size(), 2u);
  EXPECT_EQ(data.lines, (std::vector<int>{4, 6}));
  const auto invs = parse_investments(data);
  EXPECT_EQ(invs[0].name, "a");
  EXPECT_EQ(invs[0].mu, 30.0);
  EXPECT_EQ(invs[1].floor, 5.0);
  EXPECT_TRUE(is_investment_header(data.header));
}

TEST(CsvReadTest, ErrorsCarryLineNumbers) {
  try {
    csv("name,mu,sigma,floor\na,1,2,0\nb,1,2\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  try {
    parse_investments(csv("name,mu,sigma,floor\na,1,2,0\nb,1,oops,0\n"));
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 3);
    EXPECT_NE(std::string(e.what()).find("oops"), std::string::npos);
  }
  EXPECT_THROW(csv(""), ParseError);
  EXPECT_THROW(csv("# only a comment\n"), ParseError);
  EXPECT_THROW(parse_investments(csv("name,mu,sigma\na,1,2\n")), ParseError);
  EXPECT_THROW(parse_variables(csv("mu,sigma,bound,side\n0,1,2,sideways\n")), ParseError);
  EXPECT_THROW(parse_investments(csv("name,mu,sigma,floor\n,1,2,0\n")), ParseError);
  EXPECT_THROW(read_csv_file("/nonexistent/dir/file.csv"), IoError);
}

TEST(CsvReadTest, Variables) {
  const auto vars = parse_variables(csv("mu,sigma,bound,side\n0,0.5,1,ceiling\n2,1,-1,FLOOR\n"));
  ASSERT_EQ(vars.size(), 2u);
  EXPECT_EQ(vars[0], (VariableSpec{0.0, 0.5, 1.0, BoundSide::Ceiling}));
  EXPECT_EQ(vars[1], (VariableSpec{2.0, 1.0, -1.0, BoundSide::Floor}));
  EXPECT_FALSE(is_investment_header(csv("mu,sigma,bound,side\n").header));
}

TEST(CsvReadTest, ParseReal) {
  const auto data = csv("a,b,c,d,e\n1e-3,+2.5,-inf,nan,0x1\n");
  EXPECT_EQ(parse_real(data, 0, 0), 1e-3);
  EXPECT_EQ(parse_real(data, 0, 1), 2.5);
  EXPECT_EQ(parse_real(data, 0, 2), -INFINITY);
  EXPECT_TRUE(std::isnan(parse_real(data, 0, 3)));
  EXPECT_THROW(parse_real(data, 0, 4), ParseError);
}

TEST(RoundTripTest, ExperimentTable) {
  const auto records = heterogeneous_trials(5, 2.0, 50, 42);
  const auto text = render(experiment_table(records), Format::Csv);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "instance_id,n,z,t,seed,hoeffding,bennett,bernstein,refined");
  const auto back = parse_experiment_table(csv(text));
  EXPECT_EQ(back, records);
}

TEST(RoundTripTest, BoundTable) {
  const std::vector<VariableSpec> vars = {{0.0, 0.5, 1.0, BoundSide::Ceiling},
                                          {1.0, 0.3, 2.5, BoundSide::Ceiling}};
  std::vector<BoundResult> results;
  for (Method m : {Method::Refined, Method::Bennett, Method::Bernstein}) {
    results.push_back(upper_tail(m, vars, 0.37));
  }
  results.push_back(BoundResult::degenerate_zero(Method::Hoeffding));
  const auto back = parse_bound_table(csv(render(bound_table(results), Format::Csv)));
  ASSERT_EQ(back.size(), results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    EXPECT_EQ(back[i].method, results[i].method);
    EXPECT_EQ(back[i].probability, results[i].probability);
    EXPECT_EQ(back[i].log_probability, results[i].log_probability);
    EXPECT_EQ(back[i].raw_log_bound, results[i].raw_log_bound);
    EXPECT_EQ(back[i].lambda, results[i].lambda);
    EXPECT_EQ(back[i].degenerate, results[i].degenerate);
  }
}

TEST(WriteTest, JsonPreservesColumnOrderAndNulls) {
  Table t;
  t.columns = {"zeta", "alpha", "flag"};
  t.rows.push_back({1.5, Cell(std::monostate{}), true});
  t.rows.push_back({std::nan(""), std::string("x"), false});
  const auto json = render(t, Format::Json);
  EXPECT_LT(json.find("zeta"), json.find("alpha"));
  EXPECT_NE(json.find("null"), std::string::npos);
  EXPECT_NE(json.find("true"), std::string::npos);
  EXPECT_EQ(json.find("nan"), std::string::npos);
}

TEST(WriteTest, CsvAndTableLayouts) {
  Table t;
  t.columns = {"name", "value"};
  t.rows.push_back({std::string("a"), 0.1});
  t.rows.push_back({std::string("bb"), std::uint64_t{7}});
  EXPECT_EQ(render(t, Format::Csv), "name,value\na,0.10000000000000001\nbb,7\n");
  const auto table = render(t, Format::Table);
  EXPECT_NE(table.find("0.1"), std::string::npos);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 3);
  EXPECT_EQ(parse_format("json"), Format::Json);
  EXPECT_THROW(parse_format("xml"), DomainError);
}

TEST(WriteTest, SweepMarksFailedPoints) {
  SweepEntry ok{0.1, AllocationResult{{0.25, 0.75}, {1.0, 3.0}, 0.5, std::log(0.5), 0.1}, ""};
  SweepEntry bad{0.9, std::nullopt, "tau out of range"};
  const std::vector<SweepEntry> entries = {ok, bad};
  const auto data = csv(render(sweep_table(entries, 2), Format::Csv));
  EXPECT_EQ(data.header, (std::vector<std::string>{"tau", "alpha_1", "alpha_2", "phi_bound"}));
  EXPECT_EQ(parse_real(data, 0, 2), 0.75);
  EXPECT_TRUE(std::isnan(parse_real(data, 1, 1)));
}

}  // namespace
}  // namespace conbound::io
