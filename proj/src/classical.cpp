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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conbound/error.hpp"

namespace conbound {
namespace {

void check_t(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    std::ostringstream msg;
    msg << "deviation t must be finite and >= 0, got " << t;
    throw DomainError(msg.str());
  }
}

void check_ceiling(std::span<const VariableSpec> vars) {
  if (vars.empty()) throw DomainError("at least one variable is required");
  for (const auto& v : vars) {
    v.validate();
    if (v.bound_side != BoundSide::Ceiling) {
      throw DomainError(
          "upper-tail bounds need ceiling-sided variables; reflect floor-sided "
          "variables first");
    }
  }
}

// Shared kernel of Bennett and Bernstein: exp(-n v/s^2 f(t s / v)).
template <typename Rate>
BoundResult variance_bound(Method method, std::span<const VariableSpec> vars, double t,
                           Rate rate) {
  check_ceiling(vars);
  check_t(t);
  const double n = static_cast<double>(vars.size());
  double s = 0.0;
  double var_sum = 0.0;
  for (const auto& v : vars) {
    s = std::max(s, v.spread());
    var_sum += v.sigma * v.sigma;
  }
  const double v = var_sum / n;
  if (t == 0.0) return BoundResult::from_log(method, 0.0);
  if (s == 0.0 && v > 0.0) {
    // X_i <= mu_i with mean mu_i forces X_i = mu_i, so sigma must vanish.
    throw DegenerateInputError(
        "every variable sits at its ceiling yet has positive variance");
  }
  if (v == 0.0 || s == 0.0) return BoundResult::degenerate_zero(method);
  return BoundResult::from_log(method, -n * (v / (s * s)) * rate(t * s / v));
}

}  // namespace

double bennett_h(double x) {
  if (x < 0.1 && x > -0.1) {
    // sum_{k>=2} (-1)^k x^k / (k (k - 1))
    double term = x * x;
    double sum = 0.0;
    for (int k = 2; k < 24; ++k) {
      sum += term / (k * (k - 1.0));
      term *= -x;
    }
    return sum;
  }
  return (1.0 + x) * std::log1p(x) - x;
}

double bernstein_g(double x) { return 3.0 * x * x / (2.0 * x + 6.0); }

BoundResult hoeffding_upper(std::span<const RangeSpec> ranges, double t) {
  if (ranges.empty()) throw DomainError("at least one range is required");
  for (const auto& r : ranges) r.validate();
  check_t(t);
  if (t == 0.0) return BoundResult::from_log(Method::Hoeffding, 0.0);
  double width2 = 0.0;
  for (const auto& r : ranges) width2 += (r.hi - r.lo) * (r.hi - r.lo);
  if (width2 == 0.0) return BoundResult::degenerate_zero(Method::Hoeffding);
  const double n = static_cast<double>(ranges.size());
  return BoundResult::from_log(Method::Hoeffding, -2.0 * n * n * t * t / width2);
}

BoundResult bennett_upper(std::span<const VariableSpec> vars, double t) {
  return variance_bound(Method::Bennett, vars, t, bennett_h);
}

BoundResult bernstein_upper(std::span<const VariableSpec> vars, double t) {
  return variance_bound(Method::Bernstein, vars, t, bernstein_g);
}

BoundResult upper_tail(Method method, std::span<const VariableSpec> vars, double t,
                       const RefinedOptions& opts) {
  switch (method) {
    case Method::Bennett: return bennett_upper(vars, t);
    case Method::Bernstein: return bernstein_upper(vars, t);
    case Method::Refined:
      if (t == 0.0) {
        check_ceiling(vars);
        return BoundResult::from_log(Method::Refined, 0.0, 0.0);
      }
      return refined_upper(vars, t, opts);
    case Method::Hoeffding: break;
  }
  throw DomainError("Hoeffding's bound needs two-sided ranges, not one-sided specs");
}

BoundResult lower_tail(Method method, std::span<const VariableSpec> vars, double t,
                       const RefinedOptions& opts) {
  for (const auto& v : vars) {
    if (v.bound_side != BoundSide::Floor) {
      throw DomainError("lower-tail bounds need floor-sided variables");
    }
  }
  const auto reflected = reflect(vars);
  return upper_tail(method, reflected, t, opts);
}

}  // namespace conbound
