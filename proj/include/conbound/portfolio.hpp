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
#ifndef CONBOUND_PORTFOLIO_HPP_
#define CONBOUND_PORTFOLIO_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conbound/lambertw.hpp"
#include "conbound/refined.hpp"
#include "conbound/types.hpp"

namespace conbound {

/// An asset with known expected payoff, payoff deviation and payoff floor,
/// all in currency units.
struct Investment {
  std::string name;
  double mu = 0.0;
  double sigma = 0.0;
  double floor = 0.0;

  /// Throws DomainError unless all fields are finite, sigma > 0 and floor <= mu.
  void validate() const;

  /// Floor-sided view used by the lower-tail bounds.
  VariableSpec as_floor_spec() const { return {mu, sigma, floor, BoundSide::Floor}; }

  /// Most optimistic ceiling consistent with sigma <= (M - L) / 2:
  /// max(L + 2 sigma, mu).
  double imputed_ceiling() const;
};

/// Two-sided range for Hoeffding built from a one-sided spec by imputing the
/// most optimistic opposite bound allowed by sigma <= (M - L) / 2: a floor L
/// gets ceiling max(L + 2 sigma, mu) and a ceiling M gets floor
/// min(M - 2 sigma, mu).
RangeSpec optimistic_range(const VariableSpec& v);

struct AllocationResult {
  std::vector<double> weights;
  std::vector<double> lambdas;
  /// Upper bound on the underperformance probability, clamped to [0, 1].
  double phi_bound = 1.0;
  /// Unclamped log of the product bound.
  double log_phi = 0.0;
  double tau = 0.0;
};

struct TauInterval {
  double lo;  // max_i L_i
  double hi;  // min_i mu_i
};

/// Open interval (max_i L_i, min_i mu_i) of per-asset targets that allocate accepts.
TauInterval admissible_tau(std::span<const Investment> investments);

/// Bound on Pr(sum_i X_i <= total_threshold) by the chosen method, applied to
/// the average payoff falling t = (sum mu_i - total_threshold) / n below its
/// mean. Hoeffding uses the imputed ceilings.
BoundResult underperformance_bound(std::span<const Investment> investments,
                                   double total_threshold, Method method,
                                   const RefinedOptions& opts = {});

/// Multiplier minimising asset i's factor of the product bound at target tau,
/// L < tau < mu.
double allocation_lambda(const Investment& inv, double tau, const WConfig& cfg = {});

/// Budget proportions alpha_i = lambda_i / sum_j lambda_j and the product
/// bound on Pr(sum_i alpha_i X_i <= tau).
AllocationResult allocate(std::span<const Investment> investments, double tau,
                          const WConfig& cfg = {});

/// Allocation for a tolerated deviation t in (0, min_i (mu_i - L_i)) instead
/// of a target: every asset is minimised at t_i = t. The reported tau is the
/// effective target sum_i alpha_i mu_i - t.
AllocationResult allocate_for_deviation(std::span<const Investment> investments, double t,
                                        const WConfig& cfg = {});

struct SweepEntry {
  double tau = 0.0;
  std::optional<AllocationResult> result;
  std::string error;
};

/// One entry per grid point in input order. Invalid points carry an error
/// message instead of aborting the sweep.
std::vector<SweepEntry> allocation_sweep(std::span<const Investment> investments,
                                         std::span<const double> tau_grid,
                                         const WConfig& cfg = {});

/// `points` targets spaced uniformly across the admissible interval, offset
/// half a step from both open ends.
std::vector<double> default_tau_grid(std::span<const Investment> investments, int points);

}  // namespace conbound

#endif  // CONBOUND_PORTFOLIO_HPP_
