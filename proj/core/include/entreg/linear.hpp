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

#include <cstdint>
#include <string>
#include <vector>

#include "entreg/polymatroid.hpp"

namespace entreg {

// Vector arrangement over a prime field GF(p): one list of linearly
// independent vectors per ground element. rank(A) is the GF(p) rank of the
// union of the lists.
struct LinearRep {
  std::uint32_t p = 2;  // prime
  int dim = 0;
  GroundSet ground;
  std::vector<std::vector<std::vector<std::uint32_t>>> vectors;  // [element][k][dim]

  // Checks primality, entry ranges and per-element independence.
  void validate() const;
};

LinearRep make_rep(std::uint32_t p, int dim, GroundSet ground);

// GF(p) rank of the vectors of all elements of A.
int rank_of(const LinearRep& rep, Mask a);

Polymatroid to_polymatroid(const LinearRep& rep);

// Extends the representation by `newlabel` carrying a basis of
// span(V_A) intersect span(V_B): the new element z has rank(Az) = rank(A),
// rank(Bz) = rank(B) and rank(z) = rank(A) + rank(B) - rank(AB).
LinearRep common_info_extend(const LinearRep& rep, Mask a, Mask b,
                             const std::string& newlabel);

// Adds `newlabel` with alpha random vectors from span(V_Z), accepted only
// when the resulting ranks match min{f(A)+alpha, f(AZ)} for every A
// (verified exhaustively). Deterministic given the seed; throws after
// `max_retries` failures with advice to raise p.
LinearRep generic_principal_extension(const LinearRep& rep, Mask z, int alpha,
                                      const std::string& newlabel,
                                      std::uint64_t seed, int max_retries = 64);

// Mirror construction: a representation on A' + N whose polymatroid is an
// A-copy of to_polymatroid(rep) over D. The base is rewritten on
// coordinates adapted to span(V_D); copies replace the complement
// components by a primed duplicate block. Copy labels get a ' suffix.
LinearRep linear_copy(const LinearRep& rep, Mask a, Mask d);

// The six Ingleton values of a 4-element polymatroid: splits {a,b|c,d},
// {a,c|b,d}, {a,d|b,c} and the swapped orientations.
std::vector<Rat> ingleton_all(const Polymatroid& f);

}  // namespace entreg
