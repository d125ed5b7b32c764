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

#include "entreg/polymatroid.hpp"

namespace entreg {

// Partition of the ground elements into labeled blocks; the factor of a
// polymatroid collapses each block to one element named by the block's
// representative.
struct EquivalenceRelation {
  struct Block {
    std::vector<int> members;  // element indices, ascending
    std::string rep;
  };
  std::vector<Block> blocks;

  static EquivalenceRelation identity(const GroundSet& ground);
  // Starts from the identity relation and merges the named groups; each
  // group is (representative label, labels to merge).
  static EquivalenceRelation merging(
      const GroundSet& ground,
      const std::vector<std::pair<std::string, std::vector<std::string>>>& groups);

  void validate(const GroundSet& ground) const;
};

// Restriction to the members of M (g(A) = f(A) for A inside M).
Polymatroid restrict_to(const Polymatroid& f, Mask m);

// Deleting K = restricting to the complement.
Polymatroid delete_elements(const Polymatroid& f, Mask k);

// Contraction: ground N\K, result(A) = f(AK) - f(K). K proper and non-empty.
Polymatroid contract(const Polymatroid& f, Mask k);

Polymatroid factor(const Polymatroid& f, const EquivalenceRelation& rel);

// Coordinatewise sum; same ground required.
Polymatroid sum(const Polymatroid& f, const Polymatroid& g);

// Direct sum over disjoint label sets: (f+g)(A) = f(A inter N) + g(A inter M).
Polymatroid direct_sum(const Polymatroid& f, const Polymatroid& g);

Polymatroid scale(const Rat& lambda, const Polymatroid& f);

// Adds a twin of element a: f*(A) = f(A), f*(a'A) = f(aA).
Polymatroid parallel_extend(const Polymatroid& f, int a, const std::string& newlabel);

// f - f(z || N\z) r_z.
Polymatroid tighten_at(const Polymatroid& f, int z);

// Tightening at every element; order independent.
Polymatroid tighten(const Polymatroid& f);

struct ModularDecomposition {
  Polymatroid tight;
  std::vector<Rat> lambda;  // per element, f(z || N\z)
};

// f = tight + sum lambda_z r_z with lambda_z >= 0; errors when some
// lambda_z is negative (f is then not a polymatroid).
ModularDecomposition modular_decomposition(const Polymatroid& f);

// One-point extension f'(Az') = min{f(A) + alpha, f(AZ)}; alpha >= 0.
Polymatroid principal_extension(const Polymatroid& f, Mask z, const Rat& alpha,
                                const std::string& newlabel);

// Generalized Ahlswede-Korner map A -> min{f(A), alpha + f(A || Z)}.
Polymatroid gak(const Polymatroid& f, Mask z, const Rat& alpha);

// Splits element a into a0, a1 with ranks alpha0 + alpha1 = f(a); the factor
// merging a0, a1 back is isomorphic to f.
Polymatroid split(const Polymatroid& f, int a, const Rat& alpha0, const Rat& alpha1);

// Splits every singleton of integer rank r >= 2 into r unit-rank elements
// named label_1..label_r, left to right, until the result is a matroid.
Polymatroid helgason_expand(const Polymatroid& f);

// The equivalence relation that merges helgason_expand's split groups back.
EquivalenceRelation helgason_merge_relation(const Polymatroid& f);

bool is_flat(const Polymatroid& f, Mask a);

// Union of A with every x outside it satisfying f(Ax) = f(A); saturated to
// a fixed point.
Mask closure_of(const Polymatroid& f, Mask a);

// f(A) + f(B) == f(AB) + f(A inter B), with f(emptyset) = 0.
bool is_modular_pair(const Polymatroid& f, Mask a, Mask b);

}  // namespace entreg
