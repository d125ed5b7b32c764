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

#include "entreg/polymatroid.hpp"

#include <algorithm>

namespace entreg {

Rat LinearFunctional::apply(const Polymatroid& f) const {
  return apply(f.rank);
}

Rat LinearFunctional::apply(const std::vector<Rat>& x) const {
  Rat acc(0);
  for (size_t i = 0; i < coeff.size(); ++i)
    if (coeff[i] != 0) acc += coeff[i] * x[i];
  return acc;
}

double LinearFunctional::apply(const std::vector<double>& x) const {
  double acc = 0;
  for (size_t i = 0; i < coeff.size(); ++i)
    if (coeff[i] != 0) acc += coeff[i].convert_to<double>() * x[i];
  return acc;
}

bool LinearFunctional::is_zero() const {
  return std::all_of(coeff.begin(), coeff.end(), [](const Rat& c) { return c == 0; });
}

std::vector<ShannonInstance> shannon_instances(const GroundSet& ground) {
  const int n = ground.size();
  if (n < 2) throw GroundError("need at least two elements");
  const Mask full = ground.full();
  std::vector<ShannonInstance> out;

  for (int i = 0; i < n; ++i) {
    ShannonInstance ins;
    ins.fn = LinearFunctional(ground);
    ins.fn.add(full, Rat(1));
    ins.fn.add(full ^ ground.singleton(i), Rat(-1));
    ins.monotone = true;
    ins.i = i;
    ins.name = "mono(" + ground.label(i) + ")";
    out.push_back(std::move(ins));
  }

  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Mask ab = ground.singleton(a) | ground.singleton(b);
      const Mask rest = full ^ ab;
      // K masks in increasing order, including the empty set.
      for (Mask k = 0;; k = (k - rest) & rest) {
        ShannonInstance ins;
        ins.fn = LinearFunctional(ground);
        ins.fn.add(ground.singleton(a) | k, Rat(1));
        ins.fn.add(ground.singleton(b) | k, Rat(1));
        ins.fn.add(k, Rat(-1));  // no-op when K is empty
        ins.fn.add(ab | k, Rat(-1));
        ins.a = a;
        ins.b = b;
        ins.k = k;
        ins.name = "sub(" + ground.label(a) + "," + ground.label(b) +
                   (k ? "|" + ground.subset_name(k) : "") + ")";
        out.push_back(std::move(ins));
        if (k == rest) break;
      }
    }
  }
  return out;
}

std::vector<LinearFunctional> shannon_basic(const GroundSet& ground) {
  std::vector<LinearFunctional> out;
  for (auto& ins : shannon_instances(ground)) out.push_back(std::move(ins.fn));
  return out;
}

PolyCheck is_polymatroid(const Polymatroid& f) {
  for (auto& ins : shannon_instances(f.ground)) {
    if (ins.fn.apply(f) < 0) return PolyCheck{false, std::move(ins.fn)};
  }
  return PolyCheck{true, std::nullopt};
}

Polymatroid r_vector(const GroundSet& ground, Mask j) {
  if (j == 0) throw GroundError("r_vector needs a non-empty J");
  Polymatroid f(ground);
  for (Mask m = 1; m <= ground.full(); ++m)
    f.at(m) = (m & j) ? Rat(1) : Rat(0);
  return f;
}

Polymatroid u_vector(const GroundSet& ground) {
  if (ground.size() < 2) throw GroundError("u_vector needs n >= 2");
  Polymatroid f(ground);
  for (Mask m = 1; m <= ground.full(); ++m)
    f.at(m) = Rat(std::min(popcount(m), 2));
  return f;
}

Polymatroid vamos_vector(const GroundSet& ground, Mask pair) {
  if (ground.size() != 4) throw GroundError("vamos_vector needs exactly 4 elements");
  if (popcount(pair) != 2) throw GroundError("vamos_vector needs a 2-element pair");
  Polymatroid f(ground);
  for (Mask m = 1; m <= ground.full(); ++m)
    f.at(m) = (m == pair) ? Rat(4) : Rat(std::min(4, popcount(m) + 1));
  return f;
}

LinearFunctional s_functional(const GroundSet& ground, int i) {
  LinearFunctional e(ground);
  e.add(ground.full(), Rat(1));
  e.add(ground.full() ^ ground.singleton(i), Rat(-1));
  return e;
}

Rat r_dot(const LinearFunctional& e, int i) {
  Rat acc(0);
  const Mask bit = e.ground.singleton(i);
  for (Mask m = 1; m <= e.ground.full(); ++m)
    if (m & bit) acc += e.at(m);
  return acc;
}

bool is_balanced(const LinearFunctional& e) {
  for (int i = 0; i < e.ground.size(); ++i)
    if (r_dot(e, i) != 0) return false;
  return true;
}

BalanceResult balance(const LinearFunctional& e) {
  BalanceResult res;
  res.balanced = e;
  res.mu.resize(e.ground.size());
  for (int i = 0; i < e.ground.size(); ++i) {
    res.mu[i] = r_dot(e, i);
    if (res.mu[i] < 0) res.has_negative = true;
    if (res.mu[i] != 0) {
      res.balanced.add(e.ground.full(), -res.mu[i]);
      res.balanced.add(e.ground.full() ^ e.ground.singleton(i), res.mu[i]);
    }
  }
  return res;
}

Mask apply_to_mask(const Permutation& perm, Mask m) {
  Mask out = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    if (m & (Mask(1) << i)) out |= Mask(1) << perm[i];
  return out;
}

Permutation inverse(const Permutation& perm) {
  Permutation inv(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

bool is_total_permutation(const Permutation& perm, int n) {
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Polymatroid apply_permutation(const Polymatroid& f, const Permutation& sigma) {
  if (!is_total_permutation(sigma, f.ground.size()))
    throw GroundError("apply_permutation needs a total permutation");
  Polymatroid out(f.ground);
  for (Mask m = 1; m <= f.ground.full(); ++m)
    out.at(apply_to_mask(sigma, m)) = f.at(m);
  return out;
}

LinearFunctional apply_permutation(const LinearFunctional& e, const Permutation& sigma) {
  if (!is_total_permutation(sigma, e.ground.size()))
    throw GroundError("apply_permutation needs a total permutation");
  LinearFunctional out(e.ground);
  for (Mask m = 1; m <= e.ground.full(); ++m)
    out.at(apply_to_mask(sigma, m)) = e.at(m);
  return out;
}

std::vector<Int> ray_canonical(const std::vector<Rat>& v) {
  return primitive_integer(v);
}

std::vector<Int> dedup_key(const LinearFunctional& e) {
  std::vector<Int> key = primitive_integer(e.coeff);
  for (const Int& x : key) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : key) y = -y;
    break;
  }
  return key;
}

}  // namespace entreg
