/*
Copyright 2026 The procmap Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

// Worst-case weight cascades: every split hands one child the largest weight
// the imbalance bound allows, all the way down the hierarchy.

#include "procmap/rational.hpp"
#include "procmap/topology.hpp"

namespace procmap::testing {

/// Heaviest final block when every level uses the unmodified eps.
inline Rational naive_cascade(const Hierarchy& h, Weight total, const Rational& eps) {
  Rational w(total);
  for (int d = h.levels(); d >= 1; --d) w = (1 + eps) * w / Rational(h.arity(d));
  return w;
}

/// Heaviest final block with adaptive eps' and no rounding.
inline Rational adaptive_cascade_exact(const Hierarchy& h, Weight total, const Rational& eps) {
  Rational w(total);
  for (int d = h.levels(); d >= 1; --d) {
    const auto e = adaptive_epsilon(eps, h.num_pes(), Rational(total), h.prefix(d), w, d);
    w = (1 + e.value) * w / Rational(h.arity(d));
  }
  return w;
}

/// Heaviest final block with adaptive eps' and integral block caps
/// ceil((1 + eps') * w / a) at every level.
inline Weight adaptive_cascade_ceiling(const Hierarchy& h, Weight total, const Rational& eps) {
  Weight w = total;
  for (int d = h.levels(); d >= 1; --d) {
    const auto e = adaptive_epsilon(eps, h.num_pes(), total, h.prefix(d), w, d);
    w = ceil_to_int((1 + e.value) * Rational(w) / Rational(h.arity(d)));
  }
  return w;
}

}  // namespace procmap::testing
