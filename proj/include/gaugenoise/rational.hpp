// Copyright 2026 The gaugenoise Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace gaugenoise {

/// Exact protection-sequence coefficients.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// "n/d" or "n"; throws ValidationError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Builds c_j = numerators[j] / denominator.
std::vector<Rational> rational_sequence(const std::vector<std::int64_t>& numerators,
                                        std::int64_t denominator);

}  // namespace gaugenoise
