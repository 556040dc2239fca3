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
#include "conbound/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "conbound/classical.hpp"
#include "conbound/error.hpp"
#include "conbound/rng.hpp"

namespace conbound {
namespace {

constexpr int kMaxRejections = 1000;

// Runs body(i) for i in [0, count) on up to `threads` workers. The first
// exception is rethrown after all workers stop.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

ExperimentRecord make_record(std::uint64_t id, int n, double z, double t,
                             std::map<Method, double> bounds, std::uint64_t seed) {
  ExperimentRecord r;
  r.instance_id = id;
  r.n = n;
  r.z = z;
  r.t = t;
  r.log_bounds = std::move(bounds);
  r.seed = seed;
  return r;
}

}  // namespace

std::vector<double> default_t_grid(double mu, int points) {
  if (!(mu < 1.0)) throw DomainError("homogeneous sweeps need mu < 1 = M");
  std::vector<double> grid;
  if (points <= 0) return grid;
  grid.reserve(static_cast<std::size_t>(points));
  const double step = (1.0 - mu) / points;
  for (int k = 0; k < points; ++k) grid.push_back((k + 0.5) * step);
  return grid;
}

std::vector<HomogeneousEntry> homogeneous_sweep(double mu, double sigma,
                                                std::span<const double> t_grid,
                                                const RefinedOptions& opts) {
  if (!(mu > -1.0 && mu < 1.0)) {
    throw DomainError("homogeneous sweeps need -1 < mu < 1 (L = -1, M = 1)");
  }
  if (!(sigma > 0.0 && sigma <= 1.0)) {
    throw DomainError("homogeneous sweeps need 0 < sigma <= (M - L) / 2 = 1");
  }
  const VariableSpec spec{mu, sigma, 1.0, BoundSide::Ceiling};
  const RangeSpec range{-1.0, 1.0};
  std::vector<HomogeneousEntry> out;
  out.reserve(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    HomogeneousEntry entry;
    entry.t = t_grid[k];
    if (!(entry.t > 0.0 && entry.t < 1.0 - mu)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "t = " << entry.t << " outside (0, " << 1.0 - mu << ")";
      entry.error = msg.str();
    } else {
      try {
        std::map<Method, double> bounds;
        bounds[Method::Hoeffding] = hoeffding_upper({&range, 1}, entry.t).log_probability;
        bounds[Method::Bennett] = bennett_upper({&spec, 1}, entry.t).log_probability;
        bounds[Method::Bernstein] = bernstein_upper({&spec, 1}, entry.t).log_probability;
        bounds[Method::Refined] = refined_upper({&spec, 1}, entry.t, opts).log_probability;
        entry.record = make_record(k, 1, 1.0, entry.t, std::move(bounds), 0);
      } catch (const Error& e) {
        entry.error = e.what();
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

HeterogeneousInstance draw_heterogeneous_instance(int n, double z, std::uint64_t seed) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(z >= 1.0) || !std::isfinite(z)) throw DomainError("z must be finite and >= 1");
  CounterRng rng(seed);
  HeterogeneousInstance inst;
  inst.ranges.reserve(static_cast<std::size_t>(n));
  inst.vars.reserve(static_cast<std::size_t>(n));
  int rejections = 0;
  auto reject = [&] {
    if (++rejections > kMaxRejections) {
      throw Error("heterogeneous instance generator exceeded its rejection budget");
    }
  };
  double s_sum = 0.0;
  while (static_cast<int>(inst.vars.size()) < n) {
    const double hi = std::abs(rng.normal());
    const double lo = -std::abs(rng.normal());
    const double mu = lo + (hi - lo) * rng.uniform();
    const double sigma = rng.uniform() * (hi - lo) / (2.0 * z);
    if (sigma <= 0.0 || hi - mu <= 0.0) {
      reject();
      continue;
    }
    inst.ranges.push_back({lo, hi});
    inst.vars.push_back({mu, sigma, hi, BoundSide::Ceiling});
    s_sum += hi - mu;
  }
  const double s_bar = s_sum / n;
  do {
    inst.t = rng.uniform() * s_bar;
    if (inst.t > 0.0 && inst.t < s_bar) break;
    reject();
  } while (true);
  return inst;
}

std::map<Method, double> instance_log_bounds(const HeterogeneousInstance& inst,
                                             const RefinedOptions& opts) {
  std::map<Method, double> bounds;
  bounds[Method::Hoeffding] = hoeffding_upper(inst.ranges, inst.t).log_probability;
  bounds[Method::Bennett] = bennett_upper(inst.vars, inst.t).log_probability;
  bounds[Method::Bernstein] = bernstein_upper(inst.vars, inst.t).log_probability;
  bounds[Method::Refined] = refined_upper(inst.vars, inst.t, opts).log_probability;
  return bounds;
}

std::vector<ExperimentRecord> heterogeneous_trials(int n, double z, int trials,
                                                   std::uint64_t seed,
                                                   const RefinedOptions& opts,
                                                   unsigned threads) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  std::vector<ExperimentRecord> out(static_cast<std::size_t>(trials));
  parallel_for(out.size(), threads, [&](std::size_t k) {
    const std::uint64_t trial_seed = derive_seed(seed, k);
    const auto inst = draw_heterogeneous_instance(n, z, trial_seed);
    out[k] = make_record(k, n, z, inst.t, instance_log_bounds(inst, opts), trial_seed);
  });
  return out;
}

std::map<Method, double> refined_win_rates(std::span<const ExperimentRecord> records) {
  std::map<Method, double> rates;
  for (Method m : kAllMethods) {
    if (m == Method::Refined) continue;
    std::size_t wins = 0;
    for (const auto& r : records) {
      if (r.log_bounds.at(Method::Refined) < r.log_bounds.at(m)) ++wins;
    }
    rates[m] = records.empty() ? 0.0 : static_cast<double>(wins) / records.size();
  }
  return rates;
}

double TwoPointDistribution::variance() const noexcept {
  const double m = mean();
  return p_hi * (hi - m) * (hi - m) + (1.0 - p_hi) * (lo - m) * (lo - m);
}

TwoPointDistribution make_two_point(double mu, double sigma, double ceiling) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(ceiling)) {
    throw DomainError("two-point law parameters must be finite");
  }
  if (!(sigma > 0.0)) throw DomainError("two-point law needs sigma > 0");
  if (!(ceiling > mu)) throw DomainError("two-point law needs ceiling > mu");
  const double s = ceiling - mu;
  const double var = sigma * sigma;
  return {ceiling, mu - var / s, var / (var + s * s)};
}

TailEstimate monte_carlo_tail(std::span<const VariableSpec> vars, double t, int trials,
                              std::uint64_t seed) {
  if (trials < 1000) throw DomainError("monte_carlo_tail needs at least 1000 trials");
  if (vars.empty()) throw DomainError("at least one variable is required");
  const std::size_t n = vars.size();
  std::vector<double> up(n);
  std::vector<double> down(n);
  std::vector<double> p_hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    vars[i].validate();
    if (vars[i].bound_side != BoundSide::Ceiling) {
      throw DomainError("monte_carlo_tail needs ceiling-sided variables");
    }
    const auto law = make_two_point(vars[i].mu, vars[i].sigma, vars[i].bound_value);
    up[i] = law.hi - vars[i].mu;
    down[i] = law.lo - vars[i].mu;
    p_hi[i] = law.p_hi;
  }
  const double threshold = static_cast<double>(n) * t;
  CounterRng rng(seed);
  std::int64_t hits = 0;
  for (int k = 0; k < trials; ++k) {
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) dev += rng.uniform() < p_hi[i] ? up[i] : down[i];
    if (dev >= threshold) ++hits;
  }
  const double p = static_cast<double>(hits) / trials;
  return {p, std::sqrt(p * (1.0 - p) / trials)};
}

ValidationReport validate_bounds(const ValidationConfig& cfg) {
  if (cfg.instances < 1) throw DomainError("validation needs at least one instance");
  if (cfg.n_max < 1) throw DomainError("validation needs n_max >= 1");
  if (cfg.z_values.empty()) throw DomainError("validation needs at least one z value");
  const std::size_t per_instance = std::size(kAllMethods);
  std::vector<ValidationRow> rows(static_cast<std::size_t>(cfg.instances) * per_instance);
  parallel_for(static_cast<std::size_t>(cfg.instances), cfg.threads, [&](std::size_t k) {
    const std::uint64_t instance_seed = derive_seed(cfg.seed, k);
    CounterRng shape(derive_seed(instance_seed, 0));
    const int n = 1 + static_cast<int>(shape() % static_cast<std::uint64_t>(cfg.n_max));
    const double z = cfg.z_values[k % cfg.z_values.size()];
    auto inst = draw_heterogeneous_instance(n, z, derive_seed(instance_seed, 1));
    // Hoeffding must see the support of the law that is actually sampled.
    for (std::size_t i = 0; i < inst.vars.size(); ++i) {
      const auto& v = inst.vars[i];
      const auto law = make_two_point(v.mu, v.sigma, v.bound_value);
      inst.ranges[i].lo = std::min(inst.ranges[i].lo, law.lo);
    }
    const auto bounds = instance_log_bounds(inst, cfg.refined);
    const auto tail =
        monte_carlo_tail(inst.vars, inst.t, cfg.trials, derive_seed(instance_seed, 2));
    for (std::size_t m = 0; m < per_instance; ++m) {
      ValidationRow& row = rows[k * per_instance + m];
      row.instance_id = k;
      row.n = n;
      row.z = z;
      row.t = inst.t;
      row.method = kAllMethods[m];
      row.bound = std::exp(bounds.at(row.method));
      row.estimate = tail.estimate;
      row.std_error = tail.std_error;
      row.violated = tail.estimate > row.bound + 3.0 * tail.std_error;
    }
  });
  ValidationReport report;
  report.rows = std::move(rows);
  for (const auto& row : report.rows) report.violations += row.violated ? 1 : 0;
  return report;
}

}  // namespace conbound
