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

#include "entreg/ops.hpp"

#include <algorithm>
#include <map>

namespace entreg {

namespace {

// Maps each element index of `sub` to its index in `ground`.
std::vector<int> embedding(const GroundSet& sub, const GroundSet& ground) {
  std::vector<int> idx(sub.size());
  for (int i = 0; i < sub.size(); ++i) {
    idx[i] = ground.index_of(sub.label(i));
    if (idx[i] < 0) throw GroundError("label '" + sub.label(i) + "' not in ground");
  }
  return idx;
}

}  // namespace

EquivalenceRelation EquivalenceRelation::identity(const GroundSet& ground) {
  EquivalenceRelation rel;
  for (int i = 0; i < ground.size(); ++i)
    rel.blocks.push_back({{i}, ground.label(i)});
  return rel;
}

EquivalenceRelation EquivalenceRelation::merging(
    const GroundSet& ground,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& groups) {
  std::vector<int> owner(ground.size(), -1);
  EquivalenceRelation rel;
  for (const auto& [rep, labels] : groups) {
    Block blk;
    blk.rep = rep;
    for (const auto& l : labels) {
      int i = ground.index_of(l);
      if (i < 0) throw GroundError("merging: unknown label '" + l + "'");
      if (owner[i] >= 0) throw GroundError("merging: label '" + l + "' used twice");
      owner[i] = static_cast<int>(rel.blocks.size());
      blk.members.push_back(i);
    }
    std::sort(blk.members.begin(), blk.members.end());
    rel.blocks.push_back(std::move(blk));
  }
  for (int i = 0; i < ground.size(); ++i)
    if (owner[i] < 0) rel.blocks.push_back({{i}, ground.label(i)});
  rel.validate(ground);
  return rel;
}

void EquivalenceRelation::validate(const GroundSet& ground) const {
  std::vector<bool> seen(ground.size(), false);
  for (const auto& blk : blocks) {
    if (blk.members.empty()) throw GroundError("equivalence relation: empty block");
    for (int i : blk.members) {
      if (i < 0 || i >= ground.size() || seen[i])
        throw GroundError("equivalence relation: blocks must partition the ground");
      seen[i] = true;
    }
  }
  for (bool s : seen)
    if (!s) throw GroundError("equivalence relation: blocks must cover the ground");
}

Polymatroid restrict_to(const Polymatroid& f, Mask m) {
  if (m == 0) throw GroundError("restrict: empty subset");
  GroundSet sub = f.ground.restricted(m);
  // Map sub element j to its bit in the original ground.
  std::vector<Mask> bit(sub.size());
  {
    int j = 0;
    for (int i = 0; i < f.ground.size(); ++i)
      if (m & f.ground.singleton(i)) bit[j++] = f.ground.singleton(i);
  }
  Polymatroid g(sub);
  for (Mask s = 1; s <= sub.full(); ++s) {
    Mask orig = 0;
    for (int j = 0; j < sub.size(); ++j)
      if (s & sub.singleton(j)) orig |= bit[j];
    g.at(s) = f.at(orig);
  }
  return g;
}

Polymatroid delete_elements(const Polymatroid& f, Mask k) {
  Mask m = f.ground.full() ^ (k & f.ground.full());
  return restrict_to(f, m);
}

Polymatroid contract(const Polymatroid& f, Mask k) {
  if (k == 0) throw GroundError("contract: empty K");
  if (k == f.ground.full()) throw GroundError("contract: K must be proper");
  GroundSet sub = f.ground.restricted(f.ground.full() ^ k);
  std::vector<Mask> bit(sub.size());
  {
    int j = 0;
    for (int i = 0; i < f.ground.size(); ++i)
      if (!(k & f.ground.singleton(i))) bit[j++] = f.ground.singleton(i);
  }
  Polymatroid g(sub);
  const Rat fk = f.at(k);
  for (Mask s = 1; s <= sub.full(); ++s) {
    Mask orig = k;
    for (int j = 0; j < sub.size(); ++j)
      if (s & sub.singleton(j)) orig |= bit[j];
    g.at(s) = f.at(orig) - fk;
  }
  return g;
}

Polymatroid factor(const Polymatroid& f, const EquivalenceRelation& rel) {
  rel.validate(f.ground);
  std::vector<std::string> labels;
  std::vector<Mask> block_mask;
  for (const auto& blk : rel.blocks) {
    labels.push_back(blk.rep);
    Mask m = 0;
    for (int i : blk.members) m |= f.ground.singleton(i);
    block_mask.push_back(m);
  }
  GroundSet sub{labels};
  Polymatroid g(sub);
  for (Mask s = 1; s <= sub.full(); ++s) {
    Mask orig = 0;
    for (size_t j = 0; j < block_mask.size(); ++j)
      if (s & sub.singleton(static_cast<int>(j))) orig |= block_mask[j];
    g.at(s) = f.at(orig);
  }
  return g;
}

Polymatroid sum(const Polymatroid& f, const Polymatroid& g) {
  if (f.ground != g.ground) throw GroundError("sum: ground mismatch");
  Polymatroid h(f.ground);
  for (Mask m = 1; m <= f.ground.full(); ++m) h.at(m) = f.at(m) + g.at(m);
  return h;
}

Polymatroid direct_sum(const Polymatroid& f, const Polymatroid& g) {
  if (!f.ground.disjoint_labels(g.ground))
    throw GroundError("direct_sum: label collision");
  std::vector<std::string> labels = f.ground.labels();
  for (const auto& l : g.ground.labels()) labels.push_back(l);
  GroundSet ground{labels};
  const int nf = f.ground.size();
  Polymatroid h(ground);
  for (Mask m = 1; m <= ground.full(); ++m) {
    Mask mf = m & f.ground.full();
    Mask mg = m >> nf;
    h.at(m) = f.value(mf) + g.value(mg);
  }
  return h;
}

Polymatroid scale(const Rat& lambda, const Polymatroid& f) {
  if (lambda < 0) throw GroundError("scale: negative factor");
  Polymatroid h(f.ground);
  for (Mask m = 1; m <= f.ground.full(); ++m) h.at(m) = lambda * f.at(m);
  return h;
}

Polymatroid parallel_extend(const Polymatroid& f, int a, const std::string& newlabel) {
  GroundSet ground = f.ground.extended(newlabel);
  const Mask old_full = f.ground.full();
  const Mask abit = f.ground.singleton(a);
  const Mask nbit = ground.singleton(ground.size() - 1);
  Polymatroid h(ground);
  for (Mask m = 1; m <= old_full; ++m) h.at(m) = f.at(m);
  for (Mask m = 0; m <= old_full; ++m) h.at(m | nbit) = f.at(m | abit);
  return h;
}

Polymatroid tighten_at(const Polymatroid& f, int z) {
  const Mask zbit = f.ground.singleton(z);
  const Rat lambda = f.at(f.ground.full()) - f.value(f.ground.full() ^ zbit);
  Polymatroid h = f;
  for (Mask m = 1; m <= f.ground.full(); ++m)
    if (m & zbit) h.at(m) -= lambda;
  return h;
}

Polymatroid tighten(const Polymatroid& f) {
  Polymatroid h = f;
  for (int z = 0; z < f.ground.size(); ++z) h = tighten_at(h, z);
  return h;
}

ModularDecomposition modular_decomposition(const Polymatroid& f) {
  ModularDecomposition out;
  out.lambda.resize(f.ground.size());
  for (int z = 0; z < f.ground.size(); ++z) {
    out.lambda[z] =
        f.at(f.ground.full()) - f.value(f.ground.full() ^ f.ground.singleton(z));
    if (out.lambda[z] < 0)
      throw GroundError("modular_decomposition: negative private info at '" +
                        f.ground.label(z) + "' (not a polymatroid)");
  }
  out.tight = tighten(f);
  return out;
}

Polymatroid principal_extension(const Polymatroid& f, Mask z, const Rat& alpha,
                                const std::string& newlabel) {
  if (z == 0) throw GroundError("principal_extension: empty Z");
  if (alpha < 0) throw GroundError("principal_extension: negative alpha");
  GroundSet ground = f.ground.extended(newlabel);
  const Mask old_full = f.ground.full();
  const Mask nbit = ground.singleton(ground.size() - 1);
  Polymatroid h(ground);
  for (Mask m = 1; m <= old_full; ++m) h.at(m) = f.at(m);
  for (Mask m = 0; m <= old_full; ++m) {
    Rat lo = f.value(m) + alpha;
    Rat hi = f.value(m | z);
    h.at(m | nbit) = std::min(lo, hi);
  }
  return h;
}

Polymatroid gak(const Polymatroid& f, Mask z, const Rat& alpha) {
  if (alpha < 0) throw GroundError("gak: negative alpha");
  Polymatroid h(f.ground);
  for (Mask m = 1; m <= f.ground.full(); ++m) {
    Rat other = alpha + f.value(m | z) - f.value(z);
    h.at(m) = std::min(f.at(m), other);
  }
  return h;
}

Polymatroid split(const Polymatroid& f, int a, const Rat& alpha0, const Rat& alpha1) {
  if (alpha0 < 0 || alpha1 < 0) throw GroundError("split: negative part");
  if (alpha0 + alpha1 != f.at(f.ground.singleton(a)))
    throw GroundError("split: parts must add up to f(a)");
  const std::string& base = f.ground.label(a);
  Polymatroid h = principal_extension(f, f.ground.singleton(a), alpha0, base + "0");
  h = principal_extension(h, h.ground.singleton(a), alpha1, base + "1");
  return delete_elements(h, h.ground.singleton(a));
}

namespace {

// r principal extensions along `a` by 1 each, then delete a. Produces unit
// rank elements label_1..label_r whose union replays f(Aa).
Polymatroid split_into_units(const Polymatroid& f, int a, long r) {
  const std::string& base = f.ground.label(a);
  Polymatroid h = f;
  for (long i = 1; i <= r; ++i) {
    int ai = h.ground.index_of(base);
    h = principal_extension(h, h.ground.singleton(ai), Rat(1),
                            base + "_" + std::to_string(i));
  }
  return delete_elements(h, h.ground.singleton(h.ground.index_of(base)));
}

}  // namespace

Polymatroid helgason_expand(const Polymatroid& f) {
  for (Mask m = 1; m <= f.ground.full(); ++m)
    if (denominator(f.at(m)) != 1)
      throw GroundError("helgason_expand: ranks must be integers");
  Polymatroid h = f;
  for (int i = 0; i < f.ground.size(); ++i) {
    const std::string label = f.ground.label(i);
    int cur = h.ground.index_of(label);
    Rat r = h.at(h.ground.singleton(cur));
    if (r >= 2) h = split_into_units(h, cur, numerator(r).convert_to<long>());
  }
  return h;
}

EquivalenceRelation helgason_merge_relation(const Polymatroid& f) {
  Polymatroid h = helgason_expand(f);
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  for (int i = 0; i < f.ground.size(); ++i) {
    const std::string& label = f.ground.label(i);
    if (h.ground.has_label(label)) continue;  // not split
    std::vector<std::string> members;
    for (int j = 0; j < h.ground.size(); ++j) {
      const std::string& l = h.ground.label(j);
      if (l.size() > label.size() && l.compare(0, label.size(), label) == 0 &&
          l[label.size()] == '_')
        members.push_back(l);
    }
    groups.push_back({label, members});
  }
  return EquivalenceRelation::merging(h.ground, groups);
}

bool is_flat(const Polymatroid& f, Mask a) {
  for (int x = 0; x < f.ground.size(); ++x) {
    Mask xb = f.ground.singleton(x);
    if ((a & xb) == 0 && f.at(a | xb) <= f.value(a)) return false;
  }
  return true;
}

Mask closure_of(const Polymatroid& f, Mask a) {
  Mask cl = a;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int x = 0; x < f.ground.size(); ++x) {
      Mask xb = f.ground.singleton(x);
      if ((cl & xb) == 0 && f.at(cl | xb) == f.value(cl)) {
        cl |= xb;
        grew = true;
      }
    }
  }
  return cl;
}

bool is_modular_pair(const Polymatroid& f, Mask a, Mask b) {
  return f.value(a) + f.value(b) == f.value(a | b) + f.value(a & b);
}

}  // namespace entreg
