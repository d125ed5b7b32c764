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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entreg/lp.hpp"
#include "entreg/ops.hpp"
#include "entreg/polymatroid.hpp"

namespace entreg {

// Injective map on a subset of element indices; image(i) < 0 means i is
// outside the domain.
struct PartialPermutation {
  std::vector<int> image;

  int domain_size() const;
  bool in_domain(int i) const { return i < static_cast<int>(image.size()) && image[i] >= 0; }
  Mask domain_mask() const;
  // Defined only for masks inside the domain.
  Mask map_mask(Mask m) const;
  bool maps(Mask m) const { return (m & ~domain_mask()) == 0; }
  void validate(int n) const;
};

// One copy step on the current ground: mirror the elements of `copied`
// over `over`, naming each mirror (element index -> fresh label).
struct CopyStep {
  Mask copied = 0;
  Mask over = 0;
  std::vector<std::pair<int, std::string>> naming;
};

struct CopyFlags {
  bool full_copy_expansion = false;  // widen each step to a full copy
  // Identify variables along the canonical map of full-copy steps (harmless
  // for full copies; the average of a copy and its mirror is a symmetric
  // copy). For partial copies this is a strictly stronger assumption and
  // stays off unless symmetric_acopy is set.
  bool use_canonical_symmetry = true;
  bool symmetric_acopy = false;
  bool inherit_symmetries = true;
  bool balanced = false;  // submodularity rows only
};

struct CopySequence {
  GroundSet ground0;
  std::vector<CopyStep> steps;
  CopyFlags flags;
  // Extra inequality rows stated on the ground after the given step.
  std::vector<std::pair<int, LinearFunctional>> extra_inequalities;
};

// The LP view of an (iterated) copy instance. Variables are classes of
// subsets of the final ground: subsets identified by the step isomorphisms
// and symmetry orbits share one variable; the conditional-independence
// equalities eliminate further variables by substitution. Rows are the
// basic Shannon inequalities of the final ground rewritten over what is
// left, plus any extra inequalities.
struct CopySystem {
  GroundSet final_ground;
  GroundSet main_ground;
  ConstraintSystem sys;              // main variables first
  std::vector<PartialPermutation> symmetries;
  std::size_t num_classes = 0;       // variable classes among the 2^n - 1 masks
  std::size_t free_vars = 0;         // classes that survive CI substitution
  std::size_t eliminated_iso = 0;    // merges from step isomorphisms alone
  std::size_t eliminated_ci = 0;     // substitutions from independence
  // mask -> variable index of its class representative, or -1 when the
  // mask's value is a substituted combination.
  std::vector<int> class_var;
};

CopySystem build_copy_system(const CopySequence& seq);

// Pins the main variables to the target's ranks: rows become affine
// constraints over the remaining free variables plus one pin row per main
// class (so certificates can cite them).
ConstraintSystem substitute_target(const CopySystem& cs, const Polymatroid& target);

enum class AdvisoryKind {
  AlwaysUseless,      // |D| = 1 or |D| = |N|-1: a polymatroid copy always exists
  UselessForTarget,   // D modular in the target: explicit copy construction
  ParallelSuffices,   // target has f(A||D) = 0: parallel extension works
  EnlargeOverSet,     // closure of D adds elements outside A; copy over the flat
};

struct Advisory {
  AdvisoryKind kind;
  std::string message;
  Mask suggested = 0;  // for EnlargeOverSet
};

std::vector<Advisory> precheck(const CopyStep& step, const GroundSet& ground,
                               const Polymatroid* target = nullptr);

// Constructs a concrete polymatroid copy in the precondition cases
// (modular D including |D| = 1, |D| = |N|-1, or f(A||D) = 0) and verifies
// every copy clause. Throws when no precondition applies.
Polymatroid explicit_copy(const Polymatroid& f, const CopyStep& step);

// Clause-by-clause check that fstar is an A-copy of f over D with the
// mirror elements given by `naming` (original element index -> label in
// fstar's ground).
struct CopyCheck {
  bool extends = false;      // (i)
  bool isomorphic = false;   // (ii)
  bool independent = false;  // (iii)
  bool polymatroid = false;
  bool ok() const { return extends && isomorphic && independent && polymatroid; }
};
CopyCheck check_copy(const Polymatroid& fstar, const Polymatroid& f, Mask a, Mask d,
                     const std::vector<std::pair<int, std::string>>& naming);

// ---------------------------------------------------------------------------
// Maximum entropy method
// ---------------------------------------------------------------------------

// A 3-partition <X, Y || D> of the ground set; X and Y non-empty.
struct ThreePartition {
  Mask x = 0, y = 0, d = 0;
};

// Instance given by the family of fixed marginals (masks) and/or by the
// independence partitions; closed under the Galois connection before use.
struct MaxeSpec {
  GroundSet ground;
  std::vector<Mask> family;
  std::vector<ThreePartition> partitions;
};

// F := P-perp where P := F-perp: the family becomes downward closed, the
// partition list becomes every separating 3-partition.
MaxeSpec maxe_closure(const MaxeSpec& spec);

// Variables: subsets in the closed family are main, the rest auxiliary.
// Rows: all submodularity instances; the instances in some S(X,Y||D) are
// forced to zero and enter as equalities.
ConstraintSystem build_maxe_system(const MaxeSpec& spec);

// ---------------------------------------------------------------------------
// Generalized maximum entropy method
// ---------------------------------------------------------------------------

struct GmaxeSpec {
  GroundSet big;           // M
  GroundSet small;         // N
  std::vector<int> phi;    // element of M -> element of N (surjective)
  std::vector<Mask> transversals;  // subsets of M mapping bijectively onto N

  void validate() const;
  bool is_sunflower() const;  // pairwise intersections equal, petals disjoint
};

// Variables over subsets of M; subsets of a transversal are glued to the
// main variables over N via phi; the S(X,Y||D) rows of every separating
// 3-partition enter as equalities.
ConstraintSystem build_gmaxe_system(const GmaxeSpec& spec);

// Enumerates the separating 3-partitions of M.
std::vector<ThreePartition> separating_partitions(const GmaxeSpec& spec);

struct No4Result {
  bool useless = false;
  // For a supplied 4-element target with the Vamos shape: the explicit
  // polymatroid witnessing that the instance imposes nothing new, all
  // embedding clauses verified.
  std::optional<Polymatroid> witness;
};

// |N| = 4 test: when every separating 3-partition has |D| >= 3 the instance
// is useless for every polymatroid target.
No4Result no4_check(const GmaxeSpec& spec, const Polymatroid* target = nullptr);

// ---------------------------------------------------------------------------
// Ahlswede-Korner method
// ---------------------------------------------------------------------------

// Partial rank map: value per subset when defined.
struct PartialRankMap {
  GroundSet ground;
  std::vector<std::optional<Rat>> value;  // index mask-1

  bool defined(Mask m) const { return value[m - 1].has_value(); }
  const Rat& at(Mask m) const { return *value[m - 1]; }
};

struct Ak2Result {
  PartialRankMap map;
  // Derivation gadget: main variables x_S carry f, auxiliary variables the
  // transformed function; Shannon holds on the transformed side and the
  // pinned values tie the two together. Usable directly with implies().
  ConstraintSystem gadget;
};

// N partitioned as X + Y + {z}: the transformed function keeps f off z and
// drops f(z || Y) on subsets z in A inside Yz.
Ak2Result ak2_apply(const Polymatroid& f, Mask x, Mask y, int z);

// Same with a set Z: defined off Z (value f(A)) and on A inside YZ (value
// min{f(A), f(AZ) - f(Z||Y)}).
PartialRankMap akz_apply(const Polymatroid& f, Mask x, Mask y, Mask z);

// The ak2 gadget for a generic (not target-specific) ground: variables over
// subsets of the ground, suitable for proving inequalities via implies.
ConstraintSystem ak2_gadget(const GroundSet& ground, Mask x, Mask y, int z);

}  // namespace entreg
