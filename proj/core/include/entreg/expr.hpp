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

#include <initializer_list>
#include <string>
#include <vector>

#include "entreg/polymatroid.hpp"

namespace entreg {

// Linear combination of information measures over a fixed ground set.
struct InfoExpr {
  enum class Kind { Entropy, CondEntropy, MutualInfo, CondMutualInfo, Ingleton };

  struct Term {
    Rat coeff;
    Kind kind;
    // Entropy: a; CondEntropy: a given c; MutualInfo: a, b;
    // CondMutualInfo: a, b given c; Ingleton: four singletons a, b, c, d.
    Mask a = 0, b = 0, c = 0, d = 0;
  };

  GroundSet ground;
  std::vector<Term> terms;

  explicit InfoExpr(GroundSet g) : ground(std::move(g)) {}

  InfoExpr& h(Mask a, Rat coeff = Rat(1));
  InfoExpr& h_given(Mask a, Mask c, Rat coeff = Rat(1));
  InfoExpr& i(Mask a, Mask b, Rat coeff = Rat(1));
  InfoExpr& i_given(Mask a, Mask b, Mask c, Rat coeff = Rat(1));
  // -I(a,b) + I(a,b|c) + I(a,b|d) + I(c,d) with singleton arguments.
  InfoExpr& ingleton(int a, int b, int c, int d, Rat coeff = Rat(1));
};

// Exact value of the expression on a rank vector, f(emptyset) = 0 applied.
Rat eval(const InfoExpr& expr, const Polymatroid& f);
double eval(const InfoExpr& expr, const std::vector<double>& h);

// Functional F with F . x = eval(expr, x) for every rank vector x.
LinearFunctional to_functional(const InfoExpr& expr, const GroundSet& ground);

// Parses a linear combination such as
//   "[a,b,c,d] + (a,b|c) + (a,c|b) + (b,c|a)"
//   "H(a|b) - 2 I(a,b) + 4/5 (a,b|c)"
// Sets are concatenated labels; '|' separates the conditioning set;
// coefficients are integers, fractions or decimals.
InfoExpr parse_expr(const std::string& text, const GroundSet& ground);

std::string expr_string(const InfoExpr& expr);

}  // namespace entreg
