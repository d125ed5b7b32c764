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
#include <vector>

#include "entreg/linear.hpp"
#include "entreg/polymatroid.hpp"

namespace entreg {

// Probabilities and entropies live in float64; all polyhedral work stays in
// exact rationals elsewhere. Default tolerances: 1e-12 for mass checks,
// 1e-9 for profile assertions.
struct DistTolerances {
  double mass = 1e-12;
  double profile = 1e-9;
};

// Dense joint probability table over per-element alphabets. Cell index is
// mixed radix with element 0 fastest.
struct JointDistribution {
  GroundSet ground;
  std::vector<int> alphabet;   // per element, >= 1
  std::vector<double> mass;    // size = product of alphabet sizes

  std::size_t cells() const { return mass.size(); }
  std::size_t index_of(const std::vector<int>& tuple) const;
  std::vector<int> tuple_of(std::size_t index) const;

  // Throws unless masses are non-negative and sum to 1 within tolerance.
  void validate(double tol = 1e-12) const;
};

JointDistribution make_distribution(GroundSet ground, std::vector<int> alphabet);

// Marginal entropies in bits, h[mask-1] = H(A).
struct EntropyProfile {
  GroundSet ground;
  std::vector<double> h;

  double value(Mask m) const { return m == 0 ? 0.0 : h[m - 1]; }
  double cond(Mask a, Mask b) const { return value(a | b) - value(b); }
  double cmi(Mask a, Mask b, Mask c) const {
    return value(a | c) + value(b | c) - value(c) - value(a | b | c);
  }
};

// Marginals are accumulated by exact mass summation in fixed cell order
// before the log, so profiles are bit-reproducible.
EntropyProfile profile(const JointDistribution& d);

// Largest violation of the basic Shannon inequalities on the profile
// (>= -tol everywhere for honest distributions).
double profile_shannon_slack(const EntropyProfile& p);

JointDistribution marginal(const JointDistribution& d, Mask a);

// Same ground: cellwise product distribution; profiles add.
JointDistribution independent_join(const JointDistribution& d,
                                   const JointDistribution& e);

// n i.i.d. copies; profile scales by n. Refuses tables above `max_cells`.
JointDistribution tensor_power(const JointDistribution& d, int n,
                               std::size_t max_cells = std::size_t(1) << 24);

struct ConditionalSlice {
  double weight;
  JointDistribution slice;  // on N\K
};
struct Conditioned {
  std::vector<ConditionalSlice> slices;  // zero-probability slices skipped
  EntropyProfile averaged;               // weighted average of slice profiles
};

// Conditioning on K: each slice is the conditional distribution given one
// value of K; the averaged profile equals the contraction of the profile.
Conditioned condition_on(const JointDistribution& d, Mask k);

// Adds a fresh shared symbol z: with probability p behave like d, with
// probability 1-p every variable shows z. profile = p*profile(d) + h(p)*r_N.
JointDistribution dilute(const JointDistribution& d, double p);

// Finite group as an explicit multiplication table (row g, column h ->
// g*h). Associativity is checked exhaustively for order <= 64.
struct FiniteGroup {
  int order = 0;
  std::vector<int> table;  // order x order
  int identity = 0;

  int mul(int g, int h) const { return table[g * order + h]; }
  void validate() const;

  static FiniteGroup cyclic(int n);
  static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);
};

// Choose g in G uniformly, set each variable to the left coset g*G_i.
// Quasi-uniform with H(A) = log2(|G| / |intersection of G_i, i in A|).
JointDistribution from_groups(const FiniteGroup& g, const GroundSet& ground,
                              const std::vector<std::vector<int>>& subgroups);

// Uniform x in GF(p)^d; variable i shows the scalar products with its
// vectors. Profile = log2(p) * rank function.
JointDistribution from_linear_rep(const LinearRep& rep,
                                  std::size_t max_cells = std::size_t(1) << 24);

// Every marginal uniform on its support (within tol).
bool is_quasi_uniform(const JointDistribution& d, double tol = 1e-12);

// Named constructions.
JointDistribution mod_n_sum(int n);      // a+b+c = 0 mod n, profile (log2 n) u
JointDistribution ringing_bells();       // a=max(c,d), b=min(c,d)
JointDistribution constant_dist(const GroundSet& ground);
JointDistribution uniform_bits(int k);   // k independent fair bits
// Uniform a, b on Z_3 and c in {a+b, a+b+1} by a fair coin: pairwise
// independent with H(abc) = 1 + 2 log2(3), the profile whose tightening is
// (log2(3) - 1) u. (Writing c as "a+b or a-b" collapses the coin when b=0
// and loses 1/3 bit from the joint entropy.)
JointDistribution mod3_pm();
// One private bit for each of a, b, d plus one bit shared by all four.
JointDistribution ak2_vamos_witness();

// Float-side tightening of a profile: h - sum h(z||N\z) r_z.
EntropyProfile tighten_profile(const EntropyProfile& p);

}  // namespace entreg
