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
#ifndef CONBOUND_REFINED_HPP_
#define CONBOUND_REFINED_HPP_

#include <span>
#include <vector>

#include "conbound/lambertw.hpp"
#include "conbound/types.hpp"

namespace conbound {

/// Above this value of lambda * s the MGF majorant switches to its
/// exponent-dominant form.
inline constexpr double kMgfDirectLimit = 700.0;

struct RefinedOptions {
  /// After the closed-form multiplier, run a golden-section search over
  /// [0, 10 lambda*] and keep the smaller bound.
  bool polish = false;
  WConfig w;
};

/// Per-variable spreads and variances of an upper-tail problem together with
/// the deviation t. Invariants: equal non-empty lists, every s_i > 0 and
/// sigma_i^2 > 0, and 0 < t < s_bar.
class RefinedContext {
 public:
  /// Throws DomainError (DegenerateInputError for a zero variance) when an
  /// invariant fails.
  RefinedContext(std::vector<double> s_list, std::vector<double> sigma2_list, double t);

  /// Builds the context from ceiling-sided variables.
  static RefinedContext from_ceiling(std::span<const VariableSpec> vars, double t);

  std::span<const double> s_list() const noexcept { return s_; }
  std::span<const double> sigma2_list() const noexcept { return sigma2_; }
  double s_bar() const noexcept { return s_bar_; }
  double t() const noexcept { return t_; }
  std::size_t size() const noexcept { return s_.size(); }

  /// t_i = t s_i / s_bar, the share of the total deviation given to variable i.
  double t_share(std::size_t i) const noexcept { return t_ * (s_[i] / s_bar_); }

 private:
  std::vector<double> s_;
  std::vector<double> sigma2_;
  double s_bar_;
  double t_;
};

/// ln[(sigma2 / s^2)(e^{lambda s} - 1 - lambda s) + 1], accurate for small
/// lambda s and finite for arbitrarily large lambda s.
double mgf_majorant_log(double s, double sigma2, double lambda);

/// Log of B(lambda) = e^{-lambda n t} prod_i majorant_i(lambda). A valid log
/// upper bound on the tail probability for every lambda >= 0.
double b_lambda_log(const RefinedContext& ctx, double lambda);

/// Closed-form minimiser over lambda of
///   ln[(sigma2 / s^2)(e^{lambda s} - 1 - lambda s) + 1] - lambda t_i,
/// evaluated through W(exp(.)) so that the exponential is never formed.
/// Requires 0 < t_i < s and sigma2 > 0.
double lambda_star_single(double s, double sigma2, double t_i, const WConfig& cfg = {});

/// Curvature cap s^2 / (1 - exp(-s^2 / sigma2)) bounding the second
/// derivative of a single term in lambda.
double curvature_cap(double s, double sigma2);

/// Curvature-weighted average of the per-variable minimisers at t_i = t s_i / s_bar.
double lambda_star_combined(const RefinedContext& ctx, const WConfig& cfg = {});

/// Refined upper-tail bound for ceiling-sided variables, 0 < t < s_bar.
BoundResult refined_upper(std::span<const VariableSpec> vars, double t,
                          const RefinedOptions& opts = {});

/// Refined lower-tail bound for floor-sided variables; refined_upper on the
/// reflected variables.
BoundResult refined_lower(std::span<const VariableSpec> vars, double t,
                          const RefinedOptions& opts = {});

}  // namespace conbound

#endif  // CONBOUND_REFINED_HPP_
