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
#ifndef CONBOUND_CLASSICAL_HPP_
#define CONBOUND_CLASSICAL_HPP_

#include <span>

#include "conbound/refined.hpp"
#include "conbound/types.hpp"

namespace conbound {

/// h(x) = (1 + x) ln(1 + x) - x, series-evaluated near zero.
double bennett_h(double x);

/// g(x) = 3x^2 / (2x + 6).
double bernstein_g(double x);

/// exp(-2 n^2 t^2 / sum (hi - lo)^2). All-degenerate ranges at t > 0 give a
/// flagged zero-probability result.
BoundResult hoeffding_upper(std::span<const RangeSpec> ranges, double t);

/// exp(-n (v / s^2) h(t s / v)) with s = max_i (M_i - mu_i) and
/// v = mean sigma_i^2. Requires ceiling-sided variables.
BoundResult bennett_upper(std::span<const VariableSpec> vars, double t);

/// As bennett_upper with g in place of h.
BoundResult bernstein_upper(std::span<const VariableSpec> vars, double t);

/// Upper-tail bound for ceiling-sided variables by any variance-aware method.
///
/// Hoeffding needs a two-sided range and is rejected with DomainError. At
/// t = 0 the refined method returns the trivial bound 1 (lambda = 0).
BoundResult upper_tail(Method method, std::span<const VariableSpec> vars, double t,
                       const RefinedOptions& opts = {});

/// Lower-tail bound for floor-sided variables: upper_tail on reflect(vars).
BoundResult lower_tail(Method method, std::span<const VariableSpec> vars, double t,
                       const RefinedOptions& opts = {});

}  // namespace conbound

#endif  // CONBOUND_CLASSICAL_HPP_
