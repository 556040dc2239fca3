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
#ifndef CONBOUND_EXPERIMENTS_HPP_
#define CONBOUND_EXPERIMENTS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conbound/refined.hpp"
#include "conbound/types.hpp"

namespace conbound {

/// One synthetic instance and the clamped log-bounds of all four methods.
struct ExperimentRecord {
  std::uint64_t instance_id = 0;
  int n = 1;
  double z = 1.0;
  double t = 0.0;
  std::map<Method, double> log_bounds;
  std::uint64_t seed = 0;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

struct HomogeneousEntry {
  double t = 0.0;
  std::optional<ExperimentRecord> record;
  std::string error;
};

/// `points` deviations uniform on (0, 1 - mu), half a step from both ends.
std::vector<double> default_t_grid(double mu, int points = 200);

/// Single variable with ceiling M = 1 (and floor L = -1 for Hoeffding).
/// Requires -1 < mu < 1 and 0 < sigma <= 1; grid points outside (0, 1 - mu)
/// become error entries.
std::vector<HomogeneousEntry> homogeneous_sweep(double mu, double sigma,
                                                std::span<const double> t_grid,
                                                const RefinedOptions& opts = {});

/// A random heterogeneous problem: ranges feed Hoeffding, ceiling specs feed
/// the variance-aware bounds.
struct HeterogeneousInstance {
  std::vector<RangeSpec> ranges;
  std::vector<VariableSpec> vars;
  double t = 0.0;
};

/// Draws M_i = |N(0,1)|, L_i = -|N(0,1)|, mu_i ~ U[L_i, M_i],
/// sigma_i ~ U[0, (M_i - L_i) / (2z)] and t = U * s_bar. Draws with
/// sigma_i = 0, mu_i = M_i or t = 0 are rejected (at most 1000 times).
HeterogeneousInstance draw_heterogeneous_instance(int n, double z, std::uint64_t seed);

/// Clamped log-bounds of all four methods on an instance.
std::map<Method, double> instance_log_bounds(const HeterogeneousInstance& inst,
                                             const RefinedOptions& opts = {});

/// `trials` independent instances; record k uses derive_seed(seed, k).
/// Output is ordered by instance id whatever the thread count.
std::vector<ExperimentRecord> heterogeneous_trials(int n, double z, int trials,
                                                   std::uint64_t seed,
                                                   const RefinedOptions& opts = {},
                                                   unsigned threads = 1);

/// Fraction of records in which the refined log-bound is strictly below each
/// other method's.
std::map<Method, double> refined_win_rates(std::span<const ExperimentRecord> records);

/// Two-atom law with the given mean, variance and ceiling: mass p_hi at
/// mu + s and 1 - p_hi at mu - sigma^2 / s, s = M - mu.
struct TwoPointDistribution {
  double hi = 0.0;
  double lo = 0.0;
  double p_hi = 0.0;

  double mean() const noexcept { return p_hi * hi + (1.0 - p_hi) * lo; }
  double variance() const noexcept;
};

TwoPointDistribution make_two_point(double mu, double sigma, double ceiling);

struct TailEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Estimates Pr(mean_i (X_i - mu_i) >= t) with every X_i drawn from its
/// two-point law. Needs trials >= 1000.
TailEstimate monte_carlo_tail(std::span<const VariableSpec> vars, double t, int trials,
                              std::uint64_t seed);

struct ValidationConfig {
  int instances = 100;
  int trials = 100000;
  int n_max = 10;
  std::vector<double> z_values = {1.0, 2.0, 10.0, 100.0};
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0: hardware concurrency
  RefinedOptions refined;
};

struct ValidationRow {
  std::uint64_t instance_id = 0;
  int n = 1;
  double z = 1.0;
  double t = 0.0;
  Method method = Method::Refined;
  double bound = 1.0;
  double estimate = 0.0;
  double std_error = 0.0;
  bool violated = false;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  int violations = 0;
};

/// Checks every method's bound against a Monte Carlo estimate on the
/// extremal two-point laws of random heterogeneous instances. A violation is
/// estimate > bound + 3 std_error. Hoeffding is checked on the support
/// actually sampled, [min(L_i, mu_i - sigma_i^2 / s_i), M_i].
ValidationReport validate_bounds(const ValidationConfig& cfg);

}  // namespace conbound

#endif  // CONBOUND_EXPERIMENTS_HPP_
