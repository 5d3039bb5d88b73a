// Copyright 2026 The flowsched Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/rational.hpp>

#include "flowsched/error.hpp"

namespace flowsched {

// Continuous schedule time. Denominators stay tiny (they come from dividing
// integer sizes by the speed factor), so a fixed-width rational suffices.
using Time = boost::rational<std::int64_t>;

// Arbitrary-precision rational used by the exact simplex.
using Exact = boost::multiprecision::mpq_rational;

inline double to_double(const Time& t) {
  return static_cast<double>(t.numerator()) /
         static_cast<double>(t.denominator());
}

inline double to_double(const Exact& q) { return q.convert_to<double>(); }

// Smallest integer >= t.
inline std::int64_t ceil_time(const Time& t) {
  std::int64_t q = t.numerator() / t.denominator();
  if (t.numerator() % t.denominator() != 0 && t.numerator() > 0) ++q;
  return q;
}

inline std::int64_t floor_time(const Time& t) {
  std::int64_t q = t.numerator() / t.denominator();
  if (t.numerator() % t.denominator() != 0 && t.numerator() < 0) --q;
  return q;
}

// "7/6" or "3" for integral values.
inline std::string format_time(const Time& t) {
  if (t.denominator() == 1) return std::to_string(t.numerator());
  return std::to_string(t.numerator()) + "/" + std::to_string(t.denominator());
}

inline Time parse_time(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw Error(ErrorCode::kParseError, "empty rational component");
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(std::string(s), &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad rational '" + std::string(text) + "'");
    }
    if (used != s.size()) {
      throw Error(ErrorCode::kParseError, "bad rational '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Time(parse_int(text));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::kParseError, "zero denominator");
  return Time(parse_int(text.substr(0, slash)), den);
}

inline Exact to_exact(const Time& t) {
  return Exact(t.numerator()) / Exact(t.denominator());
}

}  // namespace flowsched
