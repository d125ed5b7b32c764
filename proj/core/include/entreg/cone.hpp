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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entreg/lp.hpp"
#include "entreg/polymatroid.hpp"

namespace entreg {

struct ConeLimits {
  // 0 = unlimited. Exceeding a cap throws ResourceCapError so blow-ups fail
  // loudly instead of looking like hangs.
  std::size_t max_rays = 0;
  double timeout_seconds = 0;
  int jobs = 1;
};

class ResourceCapError : public std::runtime_error {
 public:
  explicit ResourceCapError(const std::string& w) : std::runtime_error(w) {}
};

// Extremal rays of {x : eq . x = 0, ineq . x >= 0} as primitive integer
// vectors, sorted lexicographically. Exact double description: equalities
// first, then inequalities inserted one at a time (sorted by number of
// non-zeros, ties by input order), adjacent pairs combined. Adjacency is
// the algebraic rank test on the commonly tight constraint set.
struct DDResult {
  std::vector<std::vector<Int>> rays;
  // Non-empty iff the cone is not pointed; basis of the lineality space.
  std::vector<std::vector<Rat>> lineality;
};

DDResult dd_cone(int dim, const std::vector<std::vector<Rat>>& equalities,
                 const std::vector<std::vector<Rat>>& inequalities,
                 const ConeLimits& limits = {});

// Ray list over the non-empty subsets of a ground set.
struct RayList {
  GroundSet ground;
  std::vector<std::vector<Int>> rays;  // dim 2^n - 1 each, sorted

  LinearFunctional functional(size_t i) const;
};

// Rays of the cone cut out by the given functionals. Reports the lineality
// dimension via GroundError when the cone is not pointed.
RayList dd_rays(const std::vector<LinearFunctional>& inequalities,
                const std::vector<LinearFunctional>& equalities = {},
                const ConeLimits& limits = {});

// Extremal rays of the Shannon cone Gamma_n.
RayList gamma_rays(const GroundSet& ground, const ConeLimits& limits = {});

// The consequence cone Q = { h P : h Q = 0, h >= 0 } of a constraint system
// whose columns are split into main (x) and auxiliary (y) variables. Rows
// with an all-zero auxiliary part are removed beforehand and their main
// parts appended to the candidate pool; the pooled candidates are reduced
// to an irredundant set by pairwise implication checks.
struct ConsequenceOptions {
  ConeLimits limits;
  // Include the main ground's Shannon inequalities in the redundancy check
  // (a candidate implied by the others plus Shannon is dropped).
  bool redundancy_against_shannon = false;
  const GroundSet* main_ground = nullptr;  // needed for the Shannon rows
};

struct ConsequenceResult {
  std::vector<LinearFunctional> rays;  // over the main ground
  std::size_t h_rays = 0;              // rays of the multiplier cone
  std::size_t dropped_zero = 0;        // h-rays with zero image
};

ConsequenceResult consequence_cone(const ConstraintSystem& sys,
                                   const GroundSet& main_ground,
                                   const ConsequenceOptions& opts = {});

// Removes the rays implied by the ground's basic Shannon inequalities.
std::vector<LinearFunctional> filter_shannon(const std::vector<LinearFunctional>& rays,
                                             const GroundSet& ground);

// One canonical representative per orbit under the group generated by the
// given total permutations, with orbit sizes. The representative is the
// lexicographically least image.
struct OrbitClasses {
  std::vector<std::vector<Int>> representatives;
  std::vector<std::size_t> orbit_sizes;
};

OrbitClasses orbit_dedup(const RayList& rays,
                         const std::vector<Permutation>& generators);

}  // namespace entreg
