// Copyright 2026 The frobkp Authors
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

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace frobkp {

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Accepts "p", "p/q" and "-p/q".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Rational pow(const Rational& base, int exponent);

// Exact q-th root when `x` is a perfect q-th power. Even q yields the positive root.
std::optional<Rational> exact_root(const Rational& x, unsigned q);

// Gamma(x) / Gamma(x + p + 1) = 1 / (x (x+1) ... (x+p)) for p >= 0.
Rational gamma_ratio(const Rational& x, int p);

// (2p)!! = 2^p p!
Rational even_double_factorial(int p);

Rational abs(const Rational& q);

}  // namespace frobkp
