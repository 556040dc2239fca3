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
#include "conbound/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "conbound/error.hpp"

namespace conbound {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

void VariableSpec::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(bound_value)) {
    throw DomainError("variable spec fields must be finite");
  }
  if (sigma < 0.0) {
    throw DomainError("variable spec sigma must be non-negative");
  }
  if (spread() < 0.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "mean " << mu << " lies outside its "
        << (bound_side == BoundSide::Ceiling ? "ceiling " : "floor ")
        << bound_value;
    throw DomainError(msg.str());
  }
}

void RangeSpec::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    std::ostringstream msg;
    msg << "invalid range [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Hoeffding: return "hoeffding";
    case Method::Bennett: return "bennett";
    case Method::Bernstein: return "bernstein";
    case Method::Refined: return "refined";
  }
  return "unknown";
}

std::string_view to_string(BoundSide side) {
  return side == BoundSide::Ceiling ? "ceiling" : "floor";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (iequals(name, to_string(m))) return m;
  }
  throw DomainError("unknown method '" + std::string(name) + "'");
}

BoundSide parse_side(std::string_view name) {
  if (iequals(name, "ceiling")) return BoundSide::Ceiling;
  if (iequals(name, "floor")) return BoundSide::Floor;
  throw DomainError("unknown bound side '" + std::string(name) +
                    "' (expected ceiling or floor)");
}

BoundResult BoundResult::from_log(Method method, double raw_log,
                                  std::optional<double> lambda) {
  BoundResult r;
  r.method = method;
  r.raw_log_bound = raw_log;
  r.log_probability = std::min(0.0, raw_log);
  r.probability = std::min(1.0, std::exp(raw_log));
  r.lambda = lambda;
  return r;
}

BoundResult BoundResult::degenerate_zero(Method method) {
  BoundResult r;
  r.method = method;
  r.raw_log_bound = -std::numeric_limits<double>::infinity();
  r.log_probability = r.raw_log_bound;
  r.probability = 0.0;
  r.degenerate = true;
  return r;
}

VariableSpec reflect(const VariableSpec& v) {
  return {-v.mu, v.sigma, -v.bound_value,
          v.bound_side == BoundSide::Ceiling ? BoundSide::Floor : BoundSide::Ceiling};
}

std::vector<VariableSpec> reflect(std::span<const VariableSpec> vars) {
  std::vector<VariableSpec> out;
  out.reserve(vars.size());
  for (const auto& v : vars) out.push_back(reflect(v));
  return out;
}

}  // namespace conbound
