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
#include "conbound/lambertw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "conbound/error.hpp"

namespace conbound {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// log(DBL_MIN): below it W(exp(x)) ~ exp(x) is subnormal or zero.
const double kUnderflowExp = std::log(std::numeric_limits<double>::min());

// Bisection on w * exp(w) - x over [0, log1p(x)].
double bisect_direct(double x) {
  double lo = 0.0;
  double hi = std::log1p(x);
  for (int i = 0; i < 4096; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mid * std::exp(mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(lo * std::exp(lo) - x) <= std::abs(hi * std::exp(hi) - x) ? lo
                                                                            : hi;
}

// Bisection on w + ln(w) = x. For x >= 1 the root lies in [x - ln x, x]; for
// x < 1 we bisect u = ln(w) over [x - 1, x] so that tiny roots stay resolvable.
double bisect_exp(double x) {
  if (x >= 1.0) {
    double lo = x - std::log(x);
    double hi = x;
    for (int i = 0; i < 4096; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (mid + std::log(mid) < x) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return std::abs(lo + std::log(lo) - x) <= std::abs(hi + std::log(hi) - x)
               ? lo
               : hi;
  }
  double lo = x - 1.0;
  double hi = x;
  for (int i = 0; i < 4096; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (std::exp(mid) + mid < x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

[[noreturn]] void fail(const char* name, double x, double w, double residual,
                       int iterations) {
  std::ostringstream msg;
  msg.precision(17);
  msg << name << "(" << x << ") did not converge in " << iterations
      << " iterations (last iterate " << w << ", residual " << residual << ")";
  throw IterationError(msg.str(), w, residual);
}

}  // namespace

void WConfig::validate() const {
  if (!(relative_tolerance > 0.0) || !std::isfinite(relative_tolerance)) {
    throw DomainError("Lambert W relative_tolerance must be a positive number");
  }
  if (max_iterations < 1) {
    throw DomainError("Lambert W max_iterations must be at least 1");
  }
}

double lambert_w(double x, const WConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(x) || x < 0.0) {
    std::ostringstream msg;
    msg << "lambert_w requires a finite x >= 0, got " << x;
    throw DomainError(msg.str());
  }
  if (x == 0.0) return 0.0;

  const double target = cfg.relative_tolerance * x;
  const double loose = cfg.relative_tolerance * std::max(x, 1.0);
  double w = std::log1p(x);
  double residual = w * std::exp(w) - x;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (std::abs(residual) <= target) return w;
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double denom = (w + 1.0) * ew - (w + 2.0) * (f / (2.0 * w + 2.0));
    const double next = w - f / denom;
    if (!std::isfinite(next) || next < 0.0) {
      return bisect_direct(x);
    }
    const bool stalled = std::abs(next - w) <= 4.0 * kEps * std::abs(w);
    w = next;
    residual = w * std::exp(w) - x;
    if (stalled) return std::abs(residual) <= loose ? w : bisect_direct(x);
  }
  if (std::abs(residual) <= target) return w;
  fail("lambert_w", x, w, residual, cfg.max_iterations);
}

double lambert_w_exp(double x, const WConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(x)) {
    std::ostringstream msg;
    msg << "lambert_w_exp requires a finite x, got " << x;
    throw DomainError(msg.str());
  }
  if (x < kUnderflowExp) {
    std::ostringstream msg;
    msg << "lambert_w_exp(" << x << ") underflows; x must be >= " << kUnderflowExp;
    throw DomainError(msg.str());
  }

  const double tol = cfg.relative_tolerance * std::max(std::abs(x), 1.0);
  double w = x >= 0.0 ? x : 1.0;
  double residual = w + std::log(w) - x;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (std::abs(residual) <= tol) return w;
    double next;
    if (x >= 0.0) {
      const double f = w - std::exp(x - w);
      next = w - f / (w + 1.0 - (w + 2.0) * (f / (2.0 * w + 2.0)));
    } else {
      const double e = std::exp(w - x);
      const double f = w * e - 1.0;
      next = w - f / ((w + 1.0) * e - (w + 2.0) * (f / (2.0 * w + 2.0)));
    }
    if (!std::isfinite(next) || next <= 0.0 || next == w) {
      return bisect_exp(x);
    }
    w = next;
    residual = w + std::log(w) - x;
  }
  if (std::abs(residual) <= tol) return w;
  fail("lambert_w_exp", x, w, residual, cfg.max_iterations);
}

}  // namespace conbound
