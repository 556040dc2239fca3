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
#include "conbound/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "conbound/classical.hpp"
#include "conbound/error.hpp"

namespace conbound {
namespace {

void check_portfolio(std::span<const Investment> investments) {
  if (investments.empty()) throw DomainError("at least one investment is required");
  for (const auto& inv : investments) inv.validate();
}

// log of asset i's factor e^{-lambda t_i} (gamma (e^{lambda s} - 1 - lambda s) + 1).
double factor_log(const Investment& inv, double lambda, double t_i) {
  const double s = inv.mu - inv.floor;
  return mgf_majorant_log(s, inv.sigma * inv.sigma, lambda) - lambda * t_i;
}

AllocationResult normalise(std::vector<double> lambdas, double log_phi, double tau) {
  double total = 0.0;
  for (double l : lambdas) total += l;
  if (!(total > 0.0)) {
    throw DegenerateInputError("every allocation multiplier is zero; weights are undefined");
  }
  AllocationResult out;
  out.weights.reserve(lambdas.size());
  for (double l : lambdas) out.weights.push_back(l / total);
  out.lambdas = std::move(lambdas);
  out.log_phi = log_phi;
  out.phi_bound = std::clamp(std::exp(log_phi), 0.0, 1.0);
  out.tau = tau;
  return out;
}

}  // namespace

void Investment::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(floor)) {
    throw DomainError("investment '" + name + "' has a non-finite field");
  }
  if (!(sigma > 0.0)) throw DomainError("investment '" + name + "' needs sigma > 0");
  if (floor > mu) throw DomainError("investment '" + name + "' has floor above its mean");
}

double Investment::imputed_ceiling() const { return optimistic_range(as_floor_spec()).hi; }

RangeSpec optimistic_range(const VariableSpec& v) {
  v.validate();
  if (v.bound_side == BoundSide::Floor) {
    return {v.bound_value, std::max(v.bound_value + 2.0 * v.sigma, v.mu)};
  }
  return {std::min(v.bound_value - 2.0 * v.sigma, v.mu), v.bound_value};
}

TauInterval admissible_tau(std::span<const Investment> investments) {
  check_portfolio(investments);
  TauInterval iv{-std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity()};
  for (const auto& inv : investments) {
    iv.lo = std::max(iv.lo, inv.floor);
    iv.hi = std::min(iv.hi, inv.mu);
  }
  return iv;
}

BoundResult underperformance_bound(std::span<const Investment> investments,
                                   double total_threshold, Method method,
                                   const RefinedOptions& opts) {
  check_portfolio(investments);
  const double n = static_cast<double>(investments.size());
  double mu_total = 0.0;
  double floor_total = 0.0;
  for (const auto& inv : investments) {
    mu_total += inv.mu;
    floor_total += inv.floor;
  }
  const double t = (mu_total - total_threshold) / n;
  if (!std::isfinite(t) || t < 0.0 ||
      (method == Method::Refined && total_threshold <= floor_total)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "total threshold " << total_threshold << " outside the admissible interval ("
        << floor_total << ", " << mu_total << ")";
    throw DomainError(msg.str());
  }
  if (method == Method::Hoeffding) {
    std::vector<RangeSpec> ranges;
    ranges.reserve(investments.size());
    for (const auto& inv : investments) ranges.push_back(optimistic_range(inv.as_floor_spec()));
    return hoeffding_upper(ranges, t);
  }
  std::vector<VariableSpec> vars;
  vars.reserve(investments.size());
  for (const auto& inv : investments) vars.push_back(inv.as_floor_spec());
  return lower_tail(method, vars, t, opts);
}

double allocation_lambda(const Investment& inv, double tau, const WConfig& cfg) {
  inv.validate();
  if (!(tau > inv.floor && tau < inv.mu)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "target tau = " << tau << " outside (" << inv.floor << ", " << inv.mu
        << ") for investment '" << inv.name << "'";
    throw DomainError(msg.str());
  }
  return lambda_star_single(inv.mu - inv.floor, inv.sigma * inv.sigma, inv.mu - tau, cfg);
}

AllocationResult allocate(std::span<const Investment> investments, double tau,
                          const WConfig& cfg) {
  const auto iv = admissible_tau(investments);
  if (!(tau > iv.lo && tau < iv.hi)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "target tau = " << tau << " outside the admissible interval (" << iv.lo << ", "
        << iv.hi << ")";
    throw DomainError(msg.str());
  }
  std::vector<double> lambdas;
  lambdas.reserve(investments.size());
  double log_phi = 0.0;
  for (const auto& inv : investments) {
    const double lambda = allocation_lambda(inv, tau, cfg);
    lambdas.push_back(lambda);
    log_phi += factor_log(inv, lambda, inv.mu - tau);
  }
  return normalise(std::move(lambdas), log_phi, tau);
}

AllocationResult allocate_for_deviation(std::span<const Investment> investments, double t,
                                        const WConfig& cfg) {
  check_portfolio(investments);
  double max_t = std::numeric_limits<double>::infinity();
  for (const auto& inv : investments) max_t = std::min(max_t, inv.mu - inv.floor);
  if (!(t > 0.0 && t < max_t)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "deviation t = " << t << " outside the admissible interval (0, " << max_t << ")";
    throw DomainError(msg.str());
  }
  std::vector<double> lambdas;
  lambdas.reserve(investments.size());
  double log_phi = 0.0;
  for (const auto& inv : investments) {
    const double lambda =
        lambda_star_single(inv.mu - inv.floor, inv.sigma * inv.sigma, t, cfg);
    lambdas.push_back(lambda);
    log_phi += factor_log(inv, lambda, t);
  }
  auto out = normalise(std::move(lambdas), log_phi, 0.0);
  double expected = 0.0;
  for (std::size_t i = 0; i < investments.size(); ++i) {
    expected += out.weights[i] * investments[i].mu;
  }
  out.tau = expected - t;
  return out;
}

std::vector<SweepEntry> allocation_sweep(std::span<const Investment> investments,
                                         std::span<const double> tau_grid,
                                         const WConfig& cfg) {
  std::vector<SweepEntry> out;
  out.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    SweepEntry entry;
    entry.tau = tau;
    try {
      entry.result = allocate(investments, tau, cfg);
    } catch (const Error& e) {
      entry.error = e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<double> default_tau_grid(std::span<const Investment> investments, int points) {
  const auto iv = admissible_tau(investments);
  if (!(iv.lo < iv.hi)) {
    std::ostringstream msg;
    msg << "admissible target interval (" << iv.lo << ", " << iv.hi << ") is empty";
    throw DomainError(msg.str());
  }
  std::vector<double> grid;
  if (points <= 0) return grid;
  grid.reserve(static_cast<std::size_t>(points));
  const double step = (iv.hi - iv.lo) / points;
  for (int k = 0; k < points; ++k) grid.push_back(iv.lo + (k + 0.5) * step);
  return grid;
}

}  // namespace conbound
