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
#ifndef CONBOUND_TYPES_HPP_
#define CONBOUND_TYPES_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conbound {

enum class BoundSide { Ceiling, Floor };

/// Known summary of one random variable: its mean, standard deviation and a
/// one-sided almost-sure bound (X <= bound_value for Ceiling, X >= bound_value
/// for Floor).
struct VariableSpec {
  double mu = 0.0;
  double sigma = 0.0;
  double bound_value = 0.0;
  BoundSide bound_side = BoundSide::Ceiling;

  /// Throws DomainError on non-finite fields, negative sigma, or a mean that
  /// lies on the wrong side of the bound.
  void validate() const;

  /// Distance from the mean to the bound (M - mu or mu - L); never negative
  /// for a valid spec.
  double spread() const noexcept {
    return bound_side == BoundSide::Ceiling ? bound_value - mu : mu - bound_value;
  }

  friend bool operator==(const VariableSpec&, const VariableSpec&) = default;
};

/// Two-sided support [lo, hi].
struct RangeSpec {
  double lo = 0.0;
  double hi = 0.0;

  void validate() const;
};

enum class Method { Hoeffding, Bennett, Bernstein, Refined };

inline constexpr Method kAllMethods[] = {Method::Hoeffding, Method::Bennett,
                                         Method::Bernstein, Method::Refined};

std::string_view to_string(Method m);
std::string_view to_string(BoundSide side);

/// Case-insensitive lookup; throws DomainError on an unknown name.
Method parse_method(std::string_view name);
BoundSide parse_side(std::string_view name);

/// A computed tail bound.
///
/// log_probability = min(0, raw_log_bound) and probability =
/// min(1, exp(raw_log_bound)). A degenerate result (zero spread or zero
/// variance at t > 0) carries raw_log_bound = -inf and probability 0.
struct BoundResult {
  Method method = Method::Hoeffding;
  double log_probability = 0.0;
  double probability = 1.0;
  std::optional<double> lambda;
  double raw_log_bound = 0.0;
  bool degenerate = false;

  static BoundResult from_log(Method method, double raw_log,
                              std::optional<double> lambda = std::nullopt);
  static BoundResult degenerate_zero(Method method);
};

/// Maps X -> -X: (mu, sigma, b, side) -> (-mu, sigma, -b, opposite side).
VariableSpec reflect(const VariableSpec& v);
std::vector<VariableSpec> reflect(std::span<const VariableSpec> vars);

}  // namespace conbound

#endif  // CONBOUND_TYPES_HPP_
