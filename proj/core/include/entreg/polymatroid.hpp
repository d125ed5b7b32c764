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

#include <optional>
#include <string>
#include <vector>

#include "entreg/ground.hpp"
#include "entreg/rational.hpp"

namespace entreg {

// Rank vector over the non-empty subsets of a ground set. A Polymatroid
// value may hold any rank vector; validity is what is_polymatroid checks,
// it is never assumed.
struct Polymatroid {
  GroundSet ground;
  std::vector<Rat> rank;  // index mask-1, size 2^n - 1

  Polymatroid() = default;
  explicit Polymatroid(GroundSet g)
      : ground(std::move(g)), rank(ground.full(), Rat(0)) {}

  Rat& at(Mask m) { return rank[m - 1]; }
  const Rat& at(Mask m) const { return rank[m - 1]; }

  // f(emptyset) = 0 by convention.
  Rat value(Mask m) const { return m == 0 ? Rat(0) : rank[m - 1]; }

  // f(A || B) = f(AB) - f(B)
  Rat cond(Mask a, Mask b) const { return value(a | b) - value(b); }

  // f(A, B || C) = f(AC) + f(BC) - f(C) - f(ABC)
  Rat cmi(Mask a, Mask b, Mask c) const {
    return value(a | c) + value(b | c) - value(c) - value(a | b | c);
  }

  bool operator==(const Polymatroid& o) const {
    return ground == o.ground && rank == o.rank;
  }
};

// Coefficient vector of a linear inequality sum coeff(A) * x(A) >= 0.
struct LinearFunctional {
  GroundSet ground;
  std::vector<Rat> coeff;  // index mask-1

  LinearFunctional() = default;
  explicit LinearFunctional(GroundSet g)
      : ground(std::move(g)), coeff(ground.full(), Rat(0)) {}

  Rat& at(Mask m) { return coeff[m - 1]; }
  const Rat& at(Mask m) const { return coeff[m - 1]; }
  void add(Mask m, const Rat& c) {
    if (m != 0) coeff[m - 1] += c;
  }

  Rat apply(const Polymatroid& f) const;
  Rat apply(const std::vector<Rat>& x) const;
  double apply(const std::vector<double>& x) const;

  bool is_zero() const;

  bool operator==(const LinearFunctional& o) const {
    return ground == o.ground && coeff == o.coeff;
  }
};

// One basic Shannon inequality with enough structure kept around for
// provenance tags and for the S(X,Y||D) bookkeeping of the maximum entropy
// method.
struct ShannonInstance {
  LinearFunctional fn;
  bool monotone = false;  // true: x(N) - x(N\i) >= 0, false: submodular
  int i = -1;             // monotone instance element
  int a = -1, b = -1;     // submodular instance pair, a < b
  Mask k = 0;             // submodular conditioning set
  std::string name;       // "mono(i)" or "sub(a,b|K)"
};

// The n monotonicity instances followed by the C(n,2)*2^(n-2) submodularity
// instances ordered by (a, b) then K mask. Requires n >= 2.
std::vector<ShannonInstance> shannon_instances(const GroundSet& ground);
std::vector<LinearFunctional> shannon_basic(const GroundSet& ground);

struct PolyCheck {
  bool ok = false;
  std::optional<LinearFunctional> violated;
};

// True iff every basic Shannon inequality evaluates >= 0 on f; otherwise
// reports one violated functional.
PolyCheck is_polymatroid(const Polymatroid& f);

// Indicator vector of J intersecting A: rank(A) = 1 iff A meets J.
Polymatroid r_vector(const GroundSet& ground, Mask j);

// rank(J) = min{|J|, 2}; n >= 2.
Polymatroid u_vector(const GroundSet& ground);

// rank(J) = 4 when J equals the given pair, min{4, |J|+1} otherwise;
// requires a ground of four elements and a 2-element pair.
Polymatroid vamos_vector(const GroundSet& ground, Mask pair);

// Monotonicity functional s_i: +1 at N, -1 at N\i.
LinearFunctional s_functional(const GroundSet& ground, int i);

struct BalanceResult {
  LinearFunctional balanced;
  std::vector<Rat> mu;       // per element, mu_i = e . r_i
  bool has_negative = false;  // some mu_i < 0: e cannot be a valid inequality
};

// Splits e as balanced part plus sum mu_i s_i (exact reconstruction).
BalanceResult balance(const LinearFunctional& e);

// Scalar product e . r_i, the total coefficient mass of subsets containing i.
Rat r_dot(const LinearFunctional& e, int i);

bool is_balanced(const LinearFunctional& e);

// Total permutation as an index map: perm[i] is the image of element i.
using Permutation = std::vector<int>;

Mask apply_to_mask(const Permutation& perm, Mask m);
Permutation inverse(const Permutation& perm);
bool is_total_permutation(const Permutation& perm, int n);

// result(sigma(A)) = input(A), i.e. result(A) = input(sigma^-1(A)).
Polymatroid apply_permutation(const Polymatroid& f, const Permutation& sigma);
LinearFunctional apply_permutation(const LinearFunctional& e, const Permutation& sigma);

// Primitive integer form of the coefficients with the sign flipped so the
// lexicographically first non-zero entry is positive. Only a comparison key
// for set dedup; it does not preserve inequality semantics.
std::vector<Int> dedup_key(const LinearFunctional& e);

// Primitive integer form keeping the sign (the canonical ray direction).
std::vector<Int> ray_canonical(const std::vector<Rat>& v);

}  // namespace entreg
