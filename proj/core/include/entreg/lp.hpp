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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entreg/polymatroid.hpp"

namespace entreg {

enum class Relation { GEQ0, EQ0 };

// Sparse linear form over variable indices, kept sorted by index.
struct SparseRow {
  std::vector<std::pair<int, Rat>> terms;

  void add(int var, const Rat& c);
  Rat get(int var) const;
  Rat dot(const std::vector<Rat>& x) const;
  bool empty() const { return terms.empty(); }
  void scale(const Rat& s);
  // this += s * other
  void add_scaled(const SparseRow& other, const Rat& s);
};

// One constraint: coeffs . x + constant >= 0 (GEQ0) or == 0 (EQ0).
// Tags carry provenance so certificates read as checkable proofs.
struct LinRow {
  SparseRow coeffs;
  Rat constant = Rat(0);
  Relation rel = Relation::GEQ0;
  std::string tag;
};

struct ConstraintSystem {
  std::vector<std::string> vars;
  int num_main = 0;  // vars[0..num_main) are the main (x) columns
  std::vector<LinRow> rows;

  int var_index(const std::string& name) const;
  int add_var(const std::string& name);
  void add_row(SparseRow coeffs, Relation rel, std::string tag, Rat constant = Rat(0));

 private:
  std::map<std::string, int> index_;
};

// Non-negative multipliers on GEQ0 rows (unrestricted on EQ0 rows) whose
// row combination reproduces a target exactly, or derives 0 >= positive.
struct FarkasCertificate {
  std::vector<std::pair<std::string, Rat>> multipliers;  // only non-zero ones
};

enum class LpStatus { Feasible, Infeasible, Unbounded };

struct FeasibilityResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rat> point;        // per sys variable, when feasible
  FarkasCertificate certificate;  // when infeasible
};

// Exact feasibility of the system. Homogeneous systems should be
// normalized by a caller-supplied row such as "target <= -1"; the engine
// itself adds no epsilon.
FeasibilityResult solve_feasibility(const ConstraintSystem& sys);

// Minimizes objective . x over the system. Status Unbounded is reported
// distinctly; when feasible, `point` attains `value`.
struct OptimizeResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rat> point;
  Rat value = Rat(0);
  FarkasCertificate certificate;  // when infeasible
};
OptimizeResult minimize(const ConstraintSystem& sys, const SparseRow& objective);

struct ImpliesResult {
  bool yes = false;
  FarkasCertificate certificate;    // when yes: sum mult*row == target
  std::vector<Rat> counterexample;  // when no: satisfies the system, target < 0
};

// Is target . x >= 0 a consequence of the (homogeneous) system? Exact both
// ways: a reproducing certificate or a rational counterexample point.
ImpliesResult implies(const ConstraintSystem& sys, const SparseRow& target);

// Certificate re-verification by exact recomputation.
bool verify_infeasibility(const ConstraintSystem& sys, const FarkasCertificate& cert);
bool verify_implication(const ConstraintSystem& sys, const SparseRow& target,
                        const FarkasCertificate& cert);

// Writes e as a non-negative combination of basic inequalities. The default
// basis is shannon_basic(ground); pass a subset (e.g. submodularity
// instances only) to restrict. Minimizes the total weight, which recovers
// minimal-multiplicity integer decompositions when they exist.
struct DecomposeResult {
  bool ok = false;
  std::vector<std::pair<std::string, Rat>> weights;  // basis tag -> weight > 0
  Rat total = Rat(0);
};
DecomposeResult shannon_decompose(
    const LinearFunctional& e, const GroundSet& ground,
    const std::vector<ShannonInstance>* basis = nullptr);

// ---- helpers shared by derive/cone ----

// Builds a system whose variables are the non-empty subsets of the ground:
// var name = subset name, ordering by mask. All of shannon_basic as GEQ0
// rows, optionally submodularity only.
ConstraintSystem shannon_system(const GroundSet& ground, bool submodular_only = false);

// Functional -> sparse row over a subset-variable system (vars must be the
// subset names of e's ground, mask order).
SparseRow functional_row(const LinearFunctional& e);

// As functional_row, but looks variables up by subset name (with an
// optional prefix); for systems whose main variables are not in plain mask
// order. Throws when a needed variable is missing.
SparseRow functional_row_named(const LinearFunctional& e, const ConstraintSystem& sys,
                               const std::string& prefix = "");

// Sparse row over subset variables back to a functional.
LinearFunctional row_functional(const SparseRow& row, const GroundSet& ground);

}  // namespace entreg
