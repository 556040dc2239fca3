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
#ifndef CONBOUND_LAMBERTW_HPP_
#define CONBOUND_LAMBERTW_HPP_

namespace conbound {

/// Stopping controls for the Lambert W iterations.
struct WConfig {
  double relative_tolerance = 1e-12;
  int max_iterations = 100;

  /// Throws DomainError unless relative_tolerance > 0 and max_iterations >= 1.
  void validate() const;
};

/// Principal branch W(x) for x >= 0, the solution of w * exp(w) = x.
///
/// Runs the Halley-type update from w0 = log1p(x) until
/// |w e^w - x| <= relative_tolerance * x. An iterate that turns negative or
/// non-finite hands the problem to bisection on [0, log1p(x)].
///
/// Throws DomainError for negative or non-finite x and IterationError when
/// max_iterations is exhausted.
double lambert_w(double x, const WConfig& cfg = {});

/// W(exp(x)) for any finite x, without ever forming exp(x).
///
/// Solves w + ln(w) = x. For x >= 0 the iteration starts at w = x and for
/// x < 0 at w = 1; it stops once |w + ln w - x| <= relative_tolerance *
/// max(|x|, 1). x below log(DBL_MIN) ~ -708.4 is rejected with DomainError
/// because the result would no longer be a normal double.
double lambert_w_exp(double x, const WConfig& cfg = {});

}  // namespace conbound

#endif  // CONBOUND_LAMBERTW_HPP_
