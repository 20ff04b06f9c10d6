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

#include "procmap/rational.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "procmap/error.hpp"

namespace procmap {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(int exp) {
  cpp_int r = 1;
  for (int i = 0; i < exp; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  const auto bad = [&] { fail(ErrorCode::kParse, "invalid decimal '" + std::string(text) + "'"); };
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) bad();

  cpp_int mantissa = 0;
  int frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c >= '0' && c <= '9') {
      mantissa = mantissa * 10 + (c - '0');
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) bad();
  int exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') bad();
    ++i;
    const auto* first = s.data() + i;
    const auto* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last) bad();
  }
  const int scale = exponent - frac_digits;
  if (scale >= 0) return Rational(mantissa * pow10(scale));
  return Rational(mantissa, pow10(-scale));
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value) || value < 0) {
    fail(ErrorCode::kInvalidArgument, "expected a finite non-negative number");
  }
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) fail(ErrorCode::kInternal, "cannot format double");
  return parse_decimal(std::string_view(buffer, ptr - buffer));
}

std::int64_t floor_to_int(const Rational& r) {
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  cpp_int q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q.convert_to<std::int64_t>();
}

std::int64_t ceil_to_int(const Rational& r) {
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  cpp_int q = num / den;
  if (num > 0 && q * den != num) q += 1;
  return q.convert_to<std::int64_t>();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) { return r.str(); }

Rational root_lower_bound(const Rational& base, int degree) {
  if (degree < 1) fail(ErrorCode::kInvalidArgument, "root degree must be >= 1");
  if (base < 0) fail(ErrorCode::kInvalidArgument, "root of a negative number");
  if (degree == 1) return base;
  constexpr std::int64_t kScale = std::int64_t{1} << 48;
  const double approx = std::pow(to_double(base), 1.0 / degree);
  cpp_int steps(std::floor(approx * static_cast<double>(kScale)));
  const auto power = [&](const cpp_int& s) {
    Rational q(s, cpp_int(kScale));
    Rational p = 1;
    for (int i = 0; i < degree; ++i) p *= q;
    return p;
  };
  while (steps > 0 && power(steps) > base) --steps;
  while (power(steps + 1) <= base) ++steps;
  return Rational(steps, cpp_int(kScale));
}

}  // namespace procmap
