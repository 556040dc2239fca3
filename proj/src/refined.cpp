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
#include "conbound/refined.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "conbound/error.hpp"

namespace conbound {
namespace {

// e^u - 1 - u without cancellation for small u >= 0.
double expm1_minus_u(double u) {
  if (u < 0.5) {
    double term = u * u / 2.0;
    double sum = 0.0;
    for (int k = 3; k < 30 && term != 0.0; ++k) {
      sum += term;
      term *= u / k;
    }
    return sum;
  }
  return std::expm1(u) - u;
}

void check_lambda(double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    std::ostringstream msg;
    msg << "lambda must be finite and >= 0, got " << lambda;
    throw DomainError(msg.str());
  }
}

double golden_section_min(const RefinedContext& ctx, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double tol = 1e-10 * (1.0 + hi);
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = b_lambda_log(ctx, c);
  double fd = b_lambda_log(ctx, d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = b_lambda_log(ctx, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = b_lambda_log(ctx, d);
    }
  }
  return fc < fd ? c : d;
}

}  // namespace

RefinedContext::RefinedContext(std::vector<double> s_list, std::vector<double> sigma2_list,
                               double t)
    : s_(std::move(s_list)), sigma2_(std::move(sigma2_list)), s_bar_(0.0), t_(t) {
  if (s_.empty() || s_.size() != sigma2_.size()) {
    throw DomainError("spread and variance lists must be non-empty and equally long");
  }
  for (std::size_t i = 0; i < s_.size(); ++i) {
    if (!std::isfinite(sigma2_[i]) || sigma2_[i] < 0.0) {
      throw DomainError("variances must be finite and non-negative");
    }
    if (sigma2_[i] == 0.0) {
      throw DegenerateInputError(
          "the refined bound needs sigma_i > 0 for every variable; clamp a zero "
          "sigma_i to 1e-9 * s_i before calling");
    }
    if (!std::isfinite(s_[i]) || s_[i] <= 0.0) {
      throw DomainError("every spread s_i must be finite and > 0");
    }
  }
  // Mean as an offset from the first entry, so identical spreads give s_bar == s_0.
  double offset = 0.0;
  for (double s : s_) offset += s - s_[0];
  s_bar_ = s_[0] + offset / static_cast<double>(s_.size());
  if (!std::isfinite(t_) || t_ <= 0.0 || t_ >= s_bar_) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "deviation t = " << t_ << " outside the admissible interval (0, " << s_bar_
        << ")";
    throw DomainError(msg.str());
  }
}

RefinedContext RefinedContext::from_ceiling(std::span<const VariableSpec> vars, double t) {
  if (vars.empty()) throw DomainError("at least one variable is required");
  std::vector<double> s;
  std::vector<double> sigma2;
  s.reserve(vars.size());
  sigma2.reserve(vars.size());
  for (const auto& v : vars) {
    v.validate();
    if (v.bound_side != BoundSide::Ceiling) {
      throw DomainError("the refined upper-tail bound needs ceiling-sided variables");
    }
    s.push_back(v.spread());
    sigma2.push_back(v.sigma * v.sigma);
  }
  return RefinedContext(std::move(s), std::move(sigma2), t);
}

double mgf_majorant_log(double s, double sigma2, double lambda) {
  if (!std::isfinite(s) || s <= 0.0) throw DomainError("spread s must be finite and > 0");
  if (!std::isfinite(sigma2) || sigma2 < 0.0) {
    throw DomainError("variance must be finite and >= 0");
  }
  check_lambda(lambda);
  const double gamma = sigma2 / (s * s);
  const double u = lambda * s;
  if (u <= kMgfDirectLimit) return std::log1p(gamma * expm1_minus_u(u));
  // ln(gamma (e^u - 1 - u) + 1) = u + ln(gamma (1 - (1 + u) e^-u) + e^-u)
  const double tail = std::exp(-u);
  return u + std::log(gamma * (1.0 - (1.0 + u) * tail) + tail);
}

double b_lambda_log(const RefinedContext& ctx, double lambda) {
  check_lambda(lambda);
  double sum = -lambda * static_cast<double>(ctx.size()) * ctx.t();
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    sum += mgf_majorant_log(ctx.s_list()[i], ctx.sigma2_list()[i], lambda);
  }
  return sum;
}

double lambda_star_single(double s, double sigma2, double t_i, const WConfig& cfg) {
  if (!std::isfinite(s) || s <= 0.0) throw DomainError("spread s must be finite and > 0");
  if (!std::isfinite(sigma2) || sigma2 <= 0.0) {
    throw DomainError("variance must be finite and > 0");
  }
  if (!std::isfinite(t_i) || t_i <= 0.0 || t_i >= s) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "t_i = " << t_i << " outside the admissible interval (0, " << s << ")";
    throw DomainError(msg.str());
  }
  const double log_ratio = std::log((s - t_i) / t_i);
  const double exponent = s / t_i + s * s / sigma2 - 1.0 + log_ratio;
  const double w = lambert_w_exp(exponent, cfg);
  // 1/t + s/sigma2 - 1/s - W/s, rewritten with W + ln W = exponent so that
  // the two large terms never cancel.
  return std::max(0.0, (std::log(w) - log_ratio) / s);
}

double curvature_cap(double s, double sigma2) {
  return s * s / -std::expm1(-(s * s) / sigma2);
}

double lambda_star_combined(const RefinedContext& ctx, const WConfig& cfg) {
  const auto s = ctx.s_list();
  const auto sigma2 = ctx.sigma2_list();
  const double first = lambda_star_single(s[0], sigma2[0], ctx.t_share(0), cfg);
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    const double weight = curvature_cap(s[i], sigma2[i]);
    const double lambda_i =
        i == 0 ? first : lambda_star_single(s[i], sigma2[i], ctx.t_share(i), cfg);
    weighted += weight * (lambda_i - first);
    total += weight;
  }
  return std::max(0.0, first + weighted / total);
}

BoundResult refined_upper(std::span<const VariableSpec> vars, double t,
                          const RefinedOptions& opts) {
  const auto ctx = RefinedContext::from_ceiling(vars, t);
  double lambda = lambda_star_combined(ctx, opts.w);
  double value = b_lambda_log(ctx, lambda);
  if (opts.polish) {
    const double hi = lambda > 0.0 ? 10.0 * lambda : 10.0 / ctx.s_bar();
    const double candidate = golden_section_min(ctx, 0.0, hi);
    const double candidate_value = b_lambda_log(ctx, candidate);
    if (candidate_value < value) {
      lambda = candidate;
      value = candidate_value;
    }
  }
  return BoundResult::from_log(Method::Refined, value, lambda);
}

BoundResult refined_lower(std::span<const VariableSpec> vars, double t,
                          const RefinedOptions& opts) {
  for (const auto& v : vars) {
    if (v.bound_side != BoundSide::Floor) {
      throw DomainError("the refined lower-tail bound needs floor-sided variables");
    }
  }
  const auto reflected = reflect(vars);
  return refined_upper(reflected, t, opts);
}

}  // namespace conbound
