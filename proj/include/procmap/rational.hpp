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

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace procmap {

/// Exact rational used for imbalance parameters and balance bounds.
using Rational = boost::multiprecision::cpp_rational;

/// Parses a non-negative decimal such as "0.03", "1", ".5" or "2.5e-2" exactly.
Rational parse_decimal(std::string_view text);

/// Exact value of the shortest decimal that round-trips to `value`, so 0.1
/// becomes 1/10 rather than the nearest binary fraction.
Rational rational_from_double(double value);

std::int64_t ceil_to_int(const Rational& r);
std::int64_t floor_to_int(const Rational& r);
double to_double(const Rational& r);
std::string to_string(const Rational& r);

/// Largest q = m / 2^48 with q^degree <= base (base >= 0, degree >= 1).
Rational root_lower_bound(const Rational& base, int degree);

}  // namespace procmap
