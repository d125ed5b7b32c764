// Copyright 2026 The entreg Authors.
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

#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace entreg {

// Exact arithmetic carrier. GMP keeps values canonical (reduced, positive
// denominator), which is exactly the invariant the rest of the library
// relies on.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

// Parses "p", "p/q" or a plain decimal such as "0.8" into an exact rational.
Rat parse_rat(const std::string& text);

// "p" when the denominator is 1, otherwise "p/q".
std::string rat_string(const Rat& value);

// Scales a rational vector to the unique primitive integer vector pointing
// in the same direction (entry gcd 1). The zero vector stays zero. The sign
// is preserved; callers that need a sign-normalized key flip it themselves.
std::vector<Int> primitive_integer(const std::vector<Rat>& v);

std::vector<Rat> to_rat_vector(const std::vector<Int>& v);

}  // namespace entreg
