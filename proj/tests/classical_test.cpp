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
#include "conbound/classical.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "conbound/error.hpp"
#include "conbound/rng.hpp"
#include "oracles.hpp"

namespace conbound {
namespace {

// The portfolio toy example mirrored into an upper-tail problem:
// payoffs (mu, sigma, floor) = (30, 25, 25) and (100, 20, 5), deviation 28.
const std::vector<VariableSpec> kToyReflected = {
    {-30.0, 25.0, -25.0, BoundSide::Ceiling},
    {-100.0, 20.0, -5.0, BoundSide::Ceiling},
};
const std::vector<VariableSpec> kToyFloor = {
    {30.0, 25.0, 25.0, BoundSide::Floor},
    {100.0, 20.0, 5.0, BoundSide::Floor},
};

std::vector<VariableSpec> random_ceiling_vars(CounterRng& rng, int n) {
  std::vector<VariableSpec> vars;
  for (int i = 0; i < n; ++i) {
    const double mu = -5.0 + 10.0 * rng.uniform();
    const double s = 0.01 + 3.0 * rng.uniform();
    const double sigma = 0.01 + 2.0 * rng.uniform();
    vars.push_back({mu, sigma, mu + s, BoundSide::Ceiling});
  }
  return vars;
}

double max_spread(const std::vector<VariableSpec>& vars) {
  double s = 0.0;
  for (const auto& v : vars) s = std::max(s, v.spread());
  return s;
}

TEST(HoeffdingTest, ToyExample) {
  const std::vector<RangeSpec> ranges = {{25.0, 75.0}, {5.0, 100.0}};
  const auto r = hoeffding_upper(ranges, 28.0);
  EXPECT_NEAR(r.probability, 0.581, 0.005);
  EXPECT_NEAR(r.probability, 0.58030105895298712, 1e-14);  // mpmath
  EXPECT_EQ(r.method, Method::Hoeffding);
  EXPECT_FALSE(r.lambda.has_value());
}

TEST(HoeffdingTest, ZeroDeviationAndSingleVariable) {
  const std::vector<RangeSpec> ranges = {{-3.0, 2.0}, {0.0, 9.0}};
  EXPECT_EQ(hoeffding_upper(ranges, 0.0).probability, 1.0);
  const RangeSpec unit{0.0, 1.0};
  EXPECT_NEAR(hoeffding_upper({&unit, 1}, 0.5).probability, std::exp(-0.5), 1e-15);
}

TEST(HoeffdingTest, DegenerateAndInvalidInput) {
  const std::vector<RangeSpec> points = {{1.0, 1.0}, {2.0, 2.0}};
  const auto r = hoeffding_upper(points, 0.1);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.probability, 0.0);
  EXPECT_EQ(hoeffding_upper(points, 0.0).probability, 1.0);
  EXPECT_THROW(hoeffding_upper({}, 0.1), DomainError);
  const RangeSpec inverted{1.0, 0.0};
  EXPECT_THROW(hoeffding_upper({&inverted, 1}, 0.1), DomainError);
  const RangeSpec unit{0.0, 1.0};
  EXPECT_THROW(hoeffding_upper({&unit, 1}, -0.1), DomainError);
  EXPECT_THROW(hoeffding_upper({&unit, 1}, std::nan("")), DomainError);
}

TEST(BennettTest, RateFunctions) {
  EXPECT_EQ(bennett_h(0.0), 0.0);
  EXPECT_NEAR(bennett_h(2.0), 3.0 * std::log(3.0) - 2.0, 1e-15);
  EXPECT_NEAR(bernstein_g(2.0), 1.2, 1e-15);
  for (double x : {0.0999, 0.1, 0.1001, 0.5, 3.0, 1e3}) {
    EXPECT_NEAR(bennett_h(x), oracle::h_literal(x), 1e-13 * oracle::h_literal(x)) << x;
  }
  // Series branch where the literal formula has cancelled away.
  const double x = 1e-8;
  EXPECT_NEAR(bennett_h(x), x * x / 2.0 - x * x * x / 6.0, 1e-30);
  for (double y : {1e-6, 1e-3, 0.05, 1.0, 10.0}) EXPECT_GE(bennett_h(y), bernstein_g(y));
}

TEST(BennettTest, ToyExample) {
  const auto r = bennett_upper(kToyReflected, 28.0);
  EXPECT_NEAR(r.probability, 0.501, 0.005);
  EXPECT_NEAR(r.probability, 0.50049221854896040, 1e-14);  // mpmath
}

TEST(BennettTest, SingleVariable) {
  const VariableSpec v{0.0, 0.5, 1.0, BoundSide::Ceiling};
  const auto r = bennett_upper({&v, 1}, 0.5);
  EXPECT_NEAR(r.probability, std::exp(-0.25 * oracle::h_literal(2.0)), 1e-15);
  EXPECT_NEAR(r.probability, 0.72327973965681676, 1e-15);
  EXPECT_EQ(bennett_upper({&v, 1}, 0.0).probability, 1.0);
}

TEST(BernsteinTest, ToyExampleAndSingleVariable) {
  const auto r = bernstein_upper(kToyReflected, 28.0);
  EXPECT_NEAR(r.probability, 0.572, 0.005);
  EXPECT_NEAR(r.probability, 0.57101857919301569, 1e-14);  // mpmath
  const VariableSpec v{0.0, 0.5, 1.0, BoundSide::Ceiling};
  EXPECT_NEAR(bernstein_upper({&v, 1}, 0.5).probability, std::exp(-0.3), 1e-15);
  EXPECT_EQ(bernstein_upper({&v, 1}, 0.0).probability, 1.0);
}

TEST(BennettTest, DegenerateVariance) {
  const std::vector<VariableSpec> flat = {{0.0, 0.0, 1.0, BoundSide::Ceiling},
                                          {1.0, 0.0, 1.5, BoundSide::Ceiling}};
  EXPECT_TRUE(bennett_upper(flat, 0.2).degenerate);
  EXPECT_EQ(bennett_upper(flat, 0.2).probability, 0.0);
  EXPECT_EQ(bernstein_upper(flat, 0.0).probability, 1.0);
  const VariableSpec pinned{1.0, 0.3, 1.0, BoundSide::Ceiling};
  EXPECT_THROW(bennett_upper({&pinned, 1}, 0.2), DegenerateInputError);
}

TEST(BennettTest, RejectsWrongSideAndBadSpecs) {
  EXPECT_THROW(bennett_upper(kToyFloor, 1.0), DomainError);
  EXPECT_THROW(bennett_upper({}, 1.0), DomainError);
  const VariableSpec above{2.0, 1.0, 1.0, BoundSide::Ceiling};
  EXPECT_THROW(bennett_upper({&above, 1}, 0.1), DomainError);
  const VariableSpec negative{0.0, -1.0, 1.0, BoundSide::Ceiling};
  EXPECT_THROW(bernstein_upper({&negative, 1}, 0.1), DomainError);
}

TEST(ReflectTest, Examples) {
  EXPECT_EQ(reflect(VariableSpec{30.0, 25.0, 25.0, BoundSide::Floor}),
            (VariableSpec{-30.0, 25.0, -25.0, BoundSide::Ceiling}));
  EXPECT_EQ(reflect(VariableSpec{0.0, 1.0, 2.0, BoundSide::Ceiling}),
            (VariableSpec{0.0, 1.0, -2.0, BoundSide::Floor}));
  EXPECT_EQ(reflect(kToyFloor), kToyReflected);
}

TEST(ReflectTest, Involution) {
  CounterRng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const VariableSpec v{rng.normal(), rng.uniform(), rng.normal(),
                         rng.uniform() < 0.5 ? BoundSide::Floor : BoundSide::Ceiling};
    ASSERT_EQ(reflect(reflect(v)), v);
  }
}

TEST(LowerTailTest, EqualsUpperTailOfReflection) {
  CounterRng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const auto up = random_ceiling_vars(rng, 1 + i % 7);
    const auto down = reflect(up);
    double s_bar = 0.0;
    for (const auto& v : up) s_bar += v.spread() / static_cast<double>(up.size());
    const double t = s_bar * (0.01 + 0.98 * rng.uniform());
    for (Method m : {Method::Bennett, Method::Bernstein, Method::Refined}) {
      const auto a = lower_tail(m, down, t);
      const auto b = upper_tail(m, up, t);
      ASSERT_EQ(a.raw_log_bound, b.raw_log_bound);
      ASSERT_EQ(a.lambda, b.lambda);
    }
  }
}

TEST(LowerTailTest, ToyExample) {
  EXPECT_NEAR(lower_tail(Method::Bennett, kToyFloor, 28.0).probability, 0.501, 0.005);
  EXPECT_NEAR(lower_tail(Method::Bernstein, kToyFloor, 28.0).probability, 0.572, 0.005);
  EXPECT_NEAR(lower_tail(Method::Refined, kToyFloor, 28.0).probability, 0.391, 0.005);
}

TEST(LowerTailTest, DispatchErrors) {
  EXPECT_THROW(lower_tail(Method::Bennett, kToyReflected, 1.0), DomainError);
  EXPECT_THROW(lower_tail(Method::Hoeffding, kToyFloor, 1.0), DomainError);
  EXPECT_THROW(upper_tail(Method::Hoeffding, kToyReflected, 1.0), DomainError);
  const std::vector<VariableSpec> mixed = {kToyReflected[0], kToyFloor[1]};
  EXPECT_THROW(upper_tail(Method::Bennett, mixed, 1.0), DomainError);
  EXPECT_EQ(upper_tail(Method::Refined, kToyReflected, 0.0).probability, 1.0);
}

TEST(ClassicalPropertyTest, BennettNeverLooserThanBernstein) {
  CounterRng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const auto vars = random_ceiling_vars(rng, 1 + i % 10);
    const double t = max_spread(vars) * (1e-6 + (1.0 - 2e-6) * rng.uniform());
    const auto bennett = bennett_upper(vars, t);
    const auto bernstein = bernstein_upper(vars, t);
    ASSERT_LE(bennett.log_probability, bernstein.log_probability + 1e-12);
    for (const auto& r : {bennett, bernstein}) {
      ASSERT_GE(r.probability, 0.0);
      ASSERT_LE(r.probability, 1.0);
      ASSERT_LE(r.log_probability, 0.0);
    }
  }
}

TEST(ClassicalPropertyTest, NonIncreasingInT) {
  CounterRng rng(6);
  for (int i = 0; i < 200; ++i) {
    const auto vars = random_ceiling_vars(rng, 1 + i % 5);
    std::vector<RangeSpec> ranges;
    for (const auto& v : vars) ranges.push_back({v.mu - 3.0 * v.sigma, v.bound_value});
    const double s = max_spread(vars);
    double prev[3] = {1.0, 1.0, 1.0};
    for (int k = 0; k <= 100; ++k) {
      const double t = s * k / 100.0;
      const double now[3] = {hoeffding_upper(ranges, t).log_probability,
                             bennett_upper(vars, t).log_probability,
                             bernstein_upper(vars, t).log_probability};
      for (int m = 0; m < 3; ++m) {
        ASSERT_LE(now[m], prev[m]);
        prev[m] = now[m];
      }
    }
  }
}

TEST(ClassicalPropertyTest, ScaleEquivariance) {
  CounterRng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto vars = random_ceiling_vars(rng, 1 + i % 6);
    std::vector<RangeSpec> ranges;
    for (const auto& v : vars) ranges.push_back({v.mu - 2.0 * v.sigma, v.bound_value});
    const double t = max_spread(vars) * rng.uniform();
    const double c = std::exp(-5.0 + 10.0 * rng.uniform());
    auto scaled = vars;
    for (auto& v : scaled) {
      v.mu *= c;
      v.sigma *= c;
      v.bound_value *= c;
    }
    auto scaled_ranges = ranges;
    for (auto& r : scaled_ranges) {
      r.lo *= c;
      r.hi *= c;
    }
    auto close = [](double a, double b) {
      return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)) + 1e-300;
    };
    ASSERT_TRUE(close(bennett_upper(vars, t).raw_log_bound,
                      bennett_upper(scaled, c * t).raw_log_bound));
    ASSERT_TRUE(close(bernstein_upper(vars, t).raw_log_bound,
                      bernstein_upper(scaled, c * t).raw_log_bound));
    ASSERT_TRUE(close(hoeffding_upper(ranges, t).raw_log_bound,
                      hoeffding_upper(scaled_ranges, c * t).raw_log_bound));
  }
}

}  // namespace
}  // namespace conbound
