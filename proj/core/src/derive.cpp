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

#include "entreg/derive.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

namespace entreg {

int PartialPermutation::domain_size() const {
  int c = 0;
  for (int v : image)
    if (v >= 0) ++c;
  return c;
}

Mask PartialPermutation::domain_mask() const {
  Mask m = 0;
  for (size_t i = 0; i < image.size(); ++i)
    if (image[i] >= 0) m |= Mask(1) << i;
  return m;
}

Mask PartialPermutation::map_mask(Mask m) const {
  Mask out = 0;
  for (size_t i = 0; i < image.size(); ++i)
    if (m & (Mask(1) << i)) {
      if (image[i] < 0) throw GroundError("partial permutation: mask outside domain");
      out |= Mask(1) << image[i];
    }
  return out;
}

void PartialPermutation::validate(int n) const {
  if (static_cast<int>(image.size()) != n)
    throw GroundError("partial permutation: wrong length");
  std::vector<bool> seen(n, false);
  for (int v : image) {
    if (v < -1 || v >= n) throw GroundError("partial permutation: index out of range");
    if (v >= 0) {
      if (seen[v]) throw GroundError("partial permutation: not injective");
      seen[v] = true;
    }
  }
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Smaller index becomes the root. Returns true when a merge happened.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

std::string auto_copy_label(const std::string& base, const GroundSet& taken) {
  std::string label = base + "'";
  while (taken.has_label(label)) label += "'";
  return label;
}

}  // namespace

CopySystem build_copy_system(const CopySequence& seq) {
  if (seq.steps.empty()) throw GroundError("copy sequence: no steps");

  // Resolve grounds, naming and per-step data first.
  struct StepData {
    Mask copied = 0, over = 0;       // on the input ground of the step
    Mask mirror = 0;                 // fresh elements, on the output ground
    std::vector<int> mirror_of;      // element index -> mirror index (or -1)
    PartialPermutation canonical;    // on the output ground
    bool full = false;
    bool symmetric = false;          // canonical map assumed to be a symmetry
  };

  std::vector<GroundSet> grounds{seq.ground0};
  std::vector<StepData> steps;
  for (size_t s = 0; s < seq.steps.size(); ++s) {
    const GroundSet& g = grounds.back();
    CopyStep step = seq.steps[s];
    if (step.over == 0) throw GroundError("copy step: empty over set");
    if ((step.over | step.copied) > g.full())
      throw GroundError("copy step: subsets outside the current ground");
    if (seq.flags.full_copy_expansion) step.copied = g.full() ^ step.over;
    if (step.copied == 0) throw GroundError("copy step: empty copied set");
    if (step.copied & step.over) throw GroundError("copy step: copied meets over");

    StepData data;
    data.copied = step.copied;
    data.over = step.over;
    data.full = (step.copied | step.over) == g.full();
    data.symmetric =
        data.full ? seq.flags.use_canonical_symmetry : seq.flags.symmetric_acopy;

    std::map<int, std::string> names(step.naming.begin(), step.naming.end());
    GroundSet next = g;
    data.mirror_of.assign(g.size(), -1);
    for (int i = 0; i < g.size(); ++i) {
      if (!(step.copied & g.singleton(i))) continue;
      std::string label;
      if (auto it = names.find(i); it != names.end())
        label = it->second;
      else
        label = auto_copy_label(g.label(i), next);
      data.mirror_of[i] = next.size();
      next = next.extended(label);
    }
    for (int i = 0; i < g.size(); ++i)
      if (data.mirror_of[i] >= 0)
        data.mirror |= Mask(1) << data.mirror_of[i];

    // Canonical map: swaps copied elements with mirrors, fixes the over set.
    data.canonical.image.assign(next.size(), -1);
    for (int i = 0; i < g.size(); ++i) {
      if (data.mirror_of[i] >= 0) {
        data.canonical.image[i] = data.mirror_of[i];
        data.canonical.image[data.mirror_of[i]] = i;
      } else if (step.over & g.singleton(i)) {
        data.canonical.image[i] = i;
      } else if (data.full) {
        data.canonical.image[i] = i;  // unreachable for genuine full copies
      }
    }
    steps.push_back(std::move(data));
    grounds.push_back(std::move(next));
  }

  const GroundSet& final_ground = grounds.back();
  const int n = final_ground.size();
  const Mask full = final_ground.full();

  // Inherited symmetries per Proposition-3 closure. A prior symmetry sigma
  // with sigma(D) = D extends by sigma*(mirror(x)) = mirror(sigma(x)).
  std::vector<PartialPermutation> syms;
  for (size_t s = 0; s < steps.size(); ++s) {
    const StepData& st = steps[s];
    const int next_n = grounds[s + 1].size();
    std::vector<PartialPermutation> next_syms;
    if (seq.flags.inherit_symmetries) {
      for (const auto& sigma : syms) {
        // sigma must fix the over set setwise.
        if ((st.over & ~sigma.domain_mask()) != 0) continue;
        if (sigma.map_mask(st.over) != st.over) continue;
        PartialPermutation ext;
        ext.image.assign(next_n, -1);
        for (size_t i = 0; i < sigma.image.size(); ++i)
          if (sigma.image[i] >= 0) ext.image[i] = sigma.image[i];
        for (int i = 0; i < static_cast<int>(sigma.image.size()); ++i) {
          if (st.mirror_of[i] < 0 || sigma.image[i] < 0) continue;
          if (st.mirror_of[sigma.image[i]] < 0) continue;
          ext.image[st.mirror_of[i]] = st.mirror_of[sigma.image[i]];
        }
        ext.validate(next_n);
        next_syms.push_back(std::move(ext));
      }
    }
    if (st.symmetric) {
      PartialPermutation canon = st.canonical;
      canon.image.resize(next_n, -1);
      next_syms.push_back(std::move(canon));
    }
    syms = std::move(next_syms);
    // Pad to the final ground length as we go.
  }
  for (auto& sigma : syms) sigma.image.resize(n, -1);

  // --- variable classes -----------------------------------------------------
  UnionFind uf(static_cast<size_t>(full) + 1);

  size_t eliminated_iso = 0;
  for (size_t s = 0; s < steps.size(); ++s) {
    const StepData& st = steps[s];
    // Isomorphism merges: J inside copied+over meeting copied.
    Mask ad = st.copied | st.over;
    for (Mask j = ad; j != 0; j = (j - 1) & ad) {
      if ((j & st.copied) == 0) continue;
      Mask img = 0;
      for (int i = 0; i < static_cast<int>(st.mirror_of.size()); ++i)
        if (j & (Mask(1) << i))
          img |= (st.mirror_of[i] >= 0) ? (Mask(1) << st.mirror_of[i]) : (Mask(1) << i);
      if (uf.unite(static_cast<int>(j), static_cast<int>(img))) ++eliminated_iso;
    }
  }
  // Symmetry orbit merges.
  for (const auto& sigma : syms) {
    const Mask dom = sigma.domain_mask();
    for (Mask m = 1; m <= full; ++m) {
      if ((m & ~dom) != 0) continue;
      uf.unite(static_cast<int>(m), static_cast<int>(sigma.map_mask(m)));
    }
  }

  // Class bookkeeping.
  std::vector<int> root_of(static_cast<size_t>(full) + 1, -1);
  std::vector<Mask> class_min(static_cast<size_t>(full) + 1, 0);
  for (Mask m = 1; m <= full; ++m) {
    int r = uf.find(static_cast<int>(m));
    if (class_min[r] == 0) class_min[r] = m;
    root_of[m] = r;
  }

  // --- conditional independence substitutions --------------------------------
  // Identity list per step: value(J'KD) = value(J'D) + value(KD) - value(D).
  struct Identity {
    Mask target;
    Mask a, b, c;  // value(target) = value(a) + value(b) - value(c)
    std::string tag;
  };
  std::vector<Identity> identities;
  for (size_t s = 0; s < steps.size(); ++s) {
    const StepData& st = steps[s];
    const Mask e = grounds[s].full() ^ st.over;
    for (Mask jp = st.mirror; jp != 0; jp = (jp - 1) & st.mirror) {
      for (Mask k = e; k != 0; k = (k - 1) & e) {
        Identity id;
        id.target = jp | k | st.over;
        id.a = jp | st.over;
        id.b = k | st.over;
        id.c = st.over;
        id.tag = "ci(step " + std::to_string(s + 1) + ": " +
                 final_ground.subset_name(jp) + "," + final_ground.subset_name(k) +
                 "|" + final_ground.subset_name(st.over) + ")";
        identities.push_back(std::move(id));
      }
    }
  }

  // Choose at most one substitution per class; a class containing a main
  // mask stays free.
  const Mask main_full = seq.ground0.full();
  std::vector<bool> class_has_main(static_cast<size_t>(full) + 1, false);
  for (Mask m = 1; m <= main_full; ++m) class_has_main[root_of[m]] = true;

  std::map<int, const Identity*> subst;  // class root -> identity
  std::vector<const Identity*> row_identities;
  for (const auto& id : identities) {
    int r = root_of[id.target];
    if (!class_has_main[r] && subst.find(r) == subst.end())
      subst[r] = &id;
    else
      row_identities.push_back(&id);
  }

  // Resolve each class to a sparse expression over free classes; cycles
  // (possible in principle through symmetry merges) demote the class to a
  // free variable and its identity to an equality row.
  enum class RState { Untouched, InProgress, Done };
  std::vector<RState> rstate(static_cast<size_t>(full) + 1, RState::Untouched);
  std::map<int, std::vector<std::pair<int, Rat>>> resolved;  // root -> expr
  std::vector<const Identity*> demoted;

  std::function<const std::vector<std::pair<int, Rat>>&(int)> resolve =
      [&](int root) -> const std::vector<std::pair<int, Rat>>& {
    auto it = resolved.find(root);
    if (it != resolved.end() && rstate[root] == RState::Done) return it->second;
    if (rstate[root] == RState::InProgress) {
      // Cycle: make it free.
      auto iter = subst.find(root);
      if (iter != subst.end()) {
        demoted.push_back(iter->second);
        subst.erase(iter);
      }
      resolved[root] = {{root, Rat(1)}};
      rstate[root] = RState::Done;
      return resolved[root];
    }
    rstate[root] = RState::InProgress;
    auto iter = subst.find(root);
    std::vector<std::pair<int, Rat>> expr;
    if (iter == subst.end()) {
      expr = {{root, Rat(1)}};
    } else {
      const Identity& id = *iter->second;
      auto acc = [&](Mask m, int sign) {
        for (const auto& [v, c] : resolve(root_of[m])) {
          bool found = false;
          for (auto& [w, cc] : expr)
            if (w == v) {
              cc += c * sign;
              found = true;
              break;
            }
          if (!found) expr.push_back({v, c * sign});
        }
      };
      acc(id.a, 1);
      acc(id.b, 1);
      acc(id.c, -1);
      expr.erase(std::remove_if(expr.begin(), expr.end(),
                                [](const auto& t) { return t.second == 0; }),
                 expr.end());
    }
    if (rstate[root] == RState::Done) return resolved[root];  // demoted inside
    resolved[root] = std::move(expr);
    rstate[root] = RState::Done;
    return resolved[root];
  };
  for (Mask m = 1; m <= full; ++m)
    if (root_of[m] == static_cast<int>(m)) resolve(static_cast<int>(m));

  // --- variable numbering -----------------------------------------------------
  CopySystem cs;
  cs.final_ground = final_ground;
  cs.main_ground = seq.ground0;
  cs.symmetries = syms;
  cs.eliminated_iso = eliminated_iso;

  std::set<int> roots;
  for (Mask m = 1; m <= full; ++m) roots.insert(root_of[m]);
  cs.num_classes = roots.size();

  // Main classes first, ordered by their main mask; each main class must
  // contain exactly one main mask, otherwise main variables cease to be
  // independent coordinates.
  std::map<int, Mask> main_mask_of;
  for (Mask m = 1; m <= main_full; ++m) {
    auto [it, fresh] = main_mask_of.emplace(root_of[m], m);
    if (!fresh)
      throw GroundError("copy system: two main subsets fell into one class (" +
                        seq.ground0.subset_name(it->second) + ", " +
                        seq.ground0.subset_name(m) + ")");
  }
  std::vector<int> var_of_root(static_cast<size_t>(full) + 1, -1);
  for (Mask m = 1; m <= main_full; ++m) {
    int id = cs.sys.add_var(final_ground.subset_name(m));
    var_of_root[root_of[m]] = id;
  }
  cs.sys.num_main = static_cast<int>(cs.sys.vars.size());
  for (int r : roots) {
    if (var_of_root[r] >= 0) continue;     // main
    if (subst.count(r)) continue;          // substituted away
    var_of_root[r] = cs.sys.add_var(final_ground.subset_name(class_min[r]));
  }
  cs.free_vars = cs.sys.vars.size();
  cs.eliminated_ci = subst.size();

  cs.class_var.assign(static_cast<size_t>(full) + 1, -1);
  for (Mask m = 1; m <= full; ++m) cs.class_var[m] = var_of_root[root_of[m]];

  auto mask_expr = [&](Mask m) -> SparseRow {
    SparseRow row;
    for (const auto& [root, c] : resolved.at(root_of[m])) {
      int var = var_of_root[root];
      if (var < 0) throw GroundError("internal: unresolved class variable");
      row.add(var, c);
    }
    return row;
  };

  // --- rows -------------------------------------------------------------------
  std::set<std::vector<std::pair<int, Rat>>> seen_rows;
  auto add_ineq_row = [&](const LinearFunctional& fn, const std::string& tag) {
    SparseRow row;
    for (Mask m = 1; m <= full; ++m) {
      const Rat& c = fn.at(m);
      if (c != 0) row.add_scaled(mask_expr(m), c);
    }
    if (row.empty()) return;
    std::vector<Int> prim = primitive_integer([&] {
      std::vector<Rat> v;
      v.reserve(row.terms.size());
      for (auto& [w, c] : row.terms) v.push_back(c);
      return v;
    }());
    SparseRow norm;
    for (size_t i = 0; i < row.terms.size(); ++i)
      norm.add(row.terms[i].first, Rat(prim[i]));
    if (!seen_rows.insert(norm.terms).second) return;  // duplicate row
    cs.sys.add_row(std::move(norm), Relation::GEQ0, tag);
  };

  for (const auto& ins : shannon_instances(final_ground)) {
    if (seq.flags.balanced && ins.monotone) continue;
    add_ineq_row(ins.fn, ins.name);
  }
  for (const auto& [idx, fn] : seq.extra_inequalities) {
    if (idx < 0 || idx >= static_cast<int>(steps.size()))
      throw GroundError("extra inequality: bad step index");
    if (fn.ground != grounds[idx + 1])
      throw GroundError("extra inequality: ground mismatch at step " +
                        std::to_string(idx + 1));
    SparseRow row;
    for (Mask m = 1; m <= fn.ground.full(); ++m)
      if (fn.at(m) != 0) row.add_scaled(mask_expr(m), fn.at(m));
    if (!row.empty())
      cs.sys.add_row(std::move(row), Relation::GEQ0,
                     "extra(step " + std::to_string(idx + 1) + ")");
  }
  // Independence identities that were not used as eliminations become
  // equality rows; most resolve to 0 = 0 and are dropped.
  auto add_identity_row = [&](const Identity& id) {
    SparseRow row = mask_expr(id.target);
    row.add_scaled(mask_expr(id.a), Rat(-1));
    row.add_scaled(mask_expr(id.b), Rat(-1));
    row.add_scaled(mask_expr(id.c), Rat(1));
    if (row.empty()) return;
    cs.sys.add_row(std::move(row), Relation::EQ0, id.tag);
  };
  for (const Identity* id : row_identities) add_identity_row(*id);
  for (const Identity* id : demoted) add_identity_row(*id);

  // --- symmetry validation ------------------------------------------------
  // Every generator must map every independence identity whose masks lie in
  // its domain to another identity of the system.
  {
    std::set<std::array<Mask, 4>> idset;
    for (const auto& id : identities) idset.insert({id.target, id.a, id.b, id.c});
    for (const auto& sigma : syms) {
      const Mask dom = sigma.domain_mask();
      for (const auto& id : identities) {
        if ((id.target | id.a | id.b | id.c) & ~dom) continue;
        std::array<Mask, 4> img{sigma.map_mask(id.target), sigma.map_mask(id.a),
                                sigma.map_mask(id.b), sigma.map_mask(id.c)};
        if (!idset.count(img))
          throw GroundError("copy system: symmetry fails to preserve the "
                            "independence constraints");
      }
    }
  }
  return cs;
}

ConstraintSystem substitute_target(const CopySystem& cs, const Polymatroid& target) {
  if (target.ground != cs.main_ground)
    throw GroundError("substitute_target: target ground mismatch");
  ConstraintSystem sys = cs.sys;
  for (Mask m = 1; m <= cs.main_ground.full(); ++m) {
    int var = cs.class_var[m];
    if (var < 0 || var >= sys.num_main) continue;
    SparseRow row;
    row.add(var, Rat(1));
    sys.add_row(std::move(row), Relation::EQ0,
                "pin(" + cs.main_ground.subset_name(m) + ")", Rat(-target.at(m)));
  }
  return sys;
}

std::vector<Advisory> precheck(const CopyStep& step, const GroundSet& ground,
                               const Polymatroid* target) {
  std::vector<Advisory> out;
  const int dsize = popcount(step.over);
  if (dsize == 1 || dsize == ground.size() - 1)
    out.push_back({AdvisoryKind::AlwaysUseless,
                   "a polymatroid copy exists for every polymatroid (|D| = " +
                       std::to_string(dsize) + ")",
                   0});
  if (target != nullptr) {
    Rat singles(0);
    for (int i = 0; i < ground.size(); ++i)
      if (step.over & ground.singleton(i)) singles += target->at(ground.singleton(i));
    if (target->at(step.over) == singles)
      out.push_back({AdvisoryKind::UselessForTarget,
                     "D is modular in the target; an explicit copy exists", 0});
    if (target->cond(step.copied, step.over) == 0)
      out.push_back({AdvisoryKind::ParallelSuffices,
                     "target has f(A||D) = 0; parallel extension is a copy", 0});
    Mask cl = closure_of(*target, step.over);
    if (cl & ~(step.over | step.copied)) {
      Mask suggested = step.over | (cl & ~step.copied);
      out.push_back({AdvisoryKind::EnlargeOverSet,
                     "closure of D adds elements outside A; copy over " +
                         ground.subset_name(suggested) + " instead",
                     suggested});
    }
  }
  return out;
}

CopyCheck check_copy(const Polymatroid& fstar, const Polymatroid& f, Mask a, Mask d,
                     const std::vector<std::pair<int, std::string>>& naming) {
  CopyCheck out;
  const GroundSet& g = f.ground;
  const GroundSet& gs = fstar.ground;
  // Embedding of f's elements and the mirror of A.
  std::vector<int> emb(g.size()), mirror(g.size(), -1);
  for (int i = 0; i < g.size(); ++i) {
    emb[i] = gs.index_of(g.label(i));
    if (emb[i] < 0) throw GroundError("check_copy: ground not embedded");
  }
  for (const auto& [i, label] : naming) {
    mirror[i] = gs.index_of(label);
    if (mirror[i] < 0) throw GroundError("check_copy: missing mirror label " + label);
  }
  for (int i = 0; i < g.size(); ++i)
    if ((a & g.singleton(i)) && mirror[i] < 0)
      throw GroundError("check_copy: naming must cover every copied element");
  auto lift = [&](Mask m) {
    Mask out_m = 0;
    for (int i = 0; i < g.size(); ++i)
      if (m & g.singleton(i)) out_m |= gs.singleton(emb[i]);
    return out_m;
  };
  auto lift_mirrored = [&](Mask m) {  // mirrors the A-part, lifts the rest
    Mask out_m = 0;
    for (int i = 0; i < g.size(); ++i)
      if (m & g.singleton(i))
        out_m |= gs.singleton((a & g.singleton(i)) ? mirror[i] : emb[i]);
    return out_m;
  };

  out.extends = true;
  for (Mask m = 1; m <= g.full(); ++m)
    if (fstar.at(lift(m)) != f.at(m)) {
      out.extends = false;
      break;
    }
  out.isomorphic = true;
  const Mask ad = a | d;
  for (Mask j = ad; j != 0; j = (j - 1) & ad)
    if (fstar.at(lift(j)) != fstar.at(lift_mirrored(j))) {
      out.isomorphic = false;
      break;
    }
  Mask aprime = 0;
  for (int i = 0; i < g.size(); ++i)
    if ((a & g.singleton(i)) && mirror[i] >= 0) aprime |= gs.singleton(mirror[i]);
  out.independent =
      fstar.at(aprime | lift(g.full())) == f.cond(a, d) + f.at(g.full());
  out.polymatroid = is_polymatroid(fstar).ok;
  return out;
}

Polymatroid explicit_copy(const Polymatroid& f, const CopyStep& step) {
  const GroundSet& g = f.ground;
  const Mask a = step.copied, d = step.over;
  if (a == 0 || d == 0 || (a & d))
    throw GroundError("explicit_copy: need disjoint non-empty A and D");
  std::map<int, std::string> names(step.naming.begin(), step.naming.end());
  auto label_for = [&](int i, const GroundSet& taken) {
    auto it = names.find(i);
    return it != names.end() ? it->second : auto_copy_label(g.label(i), taken);
  };

  Polymatroid fstar;
  // Case 1: A already determined by D; parallel extensions suffice.
  if (f.cond(a, d) == 0) {
    fstar = f;
    for (int i = 0; i < g.size(); ++i)
      if (a & g.singleton(i)) {
        int cur = fstar.ground.index_of(g.label(i));
        fstar = parallel_extend(fstar, cur, label_for(i, fstar.ground));
      }
  } else {
    Rat singles(0);
    for (int i = 0; i < g.size(); ++i)
      if (d & g.singleton(i)) singles += f.at(g.singleton(i));
    if (f.at(d) == singles) {
      // Case 2: modular (independent) over set. Full copy by
      //   f*(I pi(J) K) = min over K <= L <= D of f(IL) + f(JL) - f(L),
      // restricted afterwards to the requested mirrors.
      const Mask e = g.full() ^ d;
      GroundSet ground = g;
      std::vector<int> mirror(g.size(), -1);
      for (int i = 0; i < g.size(); ++i)
        if (e & g.singleton(i)) {
          mirror[i] = ground.size();
          ground = ground.extended((a & g.singleton(i))
                                       ? label_for(i, ground)
                                       : auto_copy_label(g.label(i) + "~", ground));
        }
      Polymatroid fc(ground);
      for (Mask m = 1; m <= ground.full(); ++m) {
        Mask i_part = m & e;
        Mask k_part = m & d;
        Mask j_part = 0;
        for (int i = 0; i < g.size(); ++i)
          if (mirror[i] >= 0 && (m & (Mask(1) << mirror[i]))) j_part |= g.singleton(i);
        bool first = true;
        Rat best(0);
        for (Mask l = d;; l = (l - 1) & d) {
          if ((l & k_part) == k_part) {
            Rat val = f.value(i_part | l) + f.value(j_part | l) - f.value(l);
            if (first || val < best) {
              best = val;
              first = false;
            }
          }
          if (l == 0) break;
        }
        fc.at(m) = best;
      }
      // Drop the mirrors of E \ A.
      Mask drop = 0;
      for (int i = 0; i < g.size(); ++i)
        if (mirror[i] >= 0 && !(a & g.singleton(i)))
          drop |= Mask(1) << mirror[i];
      fstar = drop ? delete_elements(fc, drop) : fc;
    } else if (popcount(d) == g.size() - 1 && popcount(a) == 1) {
      // Case 3: copy a single element over everything else: tighten there,
      // duplicate, and add the private information back to both twins.
      const int ai = __builtin_ctz(a);
      const Rat lambda = f.cond(a, d);
      Polymatroid down = tighten_at(f, ai);
      Polymatroid ext = parallel_extend(down, ai, label_for(ai, g));
      const Mask abit = ext.ground.singleton(ai);
      const Mask pbit = ext.ground.singleton(ext.ground.size() - 1);
      fstar = ext;
      for (Mask m = 1; m <= ext.ground.full(); ++m) {
        if (m & abit) fstar.at(m) += lambda;
        if (m & pbit) fstar.at(m) += lambda;
      }
    } else {
      throw GroundError("explicit_copy: no constructive precondition applies");
    }
  }

  // Mirrors were appended after g's labels in element order.
  std::vector<std::pair<int, std::string>> naming;
  {
    int next_mirror = g.size();
    for (int i = 0; i < g.size(); ++i)
      if (a & g.singleton(i))
        naming.push_back({i, fstar.ground.label(next_mirror++)});
  }
  CopyCheck check = check_copy(fstar, f, a, d, naming);
  if (!check.ok())
    throw GroundError("explicit_copy: construction failed verification");
  return fstar;
}

// ---------------------------------------------------------------------------
// MAXE
// ---------------------------------------------------------------------------

namespace {

bool separates(const ThreePartition& p, const std::vector<Mask>& family) {
  for (Mask f : family)
    if ((f & p.x) && (f & p.y)) return false;
  return true;
}

std::vector<ThreePartition> all_separating(const GroundSet& g,
                                           const std::vector<Mask>& family) {
  const int n = g.size();
  std::vector<ThreePartition> out;
  // Ternary assignment of elements to X / Y / D; canonical with min(X) < min(Y).
  std::vector<int> part(n, 0);
  while (true) {
    Mask x = 0, y = 0, d = 0;
    for (int i = 0; i < n; ++i) {
      if (part[i] == 0)
        x |= g.singleton(i);
      else if (part[i] == 1)
        y |= g.singleton(i);
      else
        d |= g.singleton(i);
    }
    if (x && y && (x & -x) < (y & -y)) {
      ThreePartition p{x, y, d};
      if (separates(p, family)) out.push_back(p);
    }
    int i = 0;
    while (i < n && ++part[i] == 3) part[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace

MaxeSpec maxe_closure(const MaxeSpec& spec) {
  MaxeSpec out;
  out.ground = spec.ground;
  std::vector<Mask> family = spec.family;
  if (family.empty()) {
    // F := P-perp: subsets not crossing any given partition.
    for (Mask m = 1; m <= spec.ground.full(); ++m) {
      bool ok = true;
      for (const auto& p : spec.partitions)
        if ((m & p.x) && (m & p.y)) {
          ok = false;
          break;
        }
      if (ok) family.push_back(m);
    }
  }
  out.partitions = all_separating(spec.ground, family);
  for (const auto& p : spec.partitions) {
    (void)p;
  }
  // Close the family: P-perp of the separating set.
  out.family.clear();
  for (Mask m = 1; m <= spec.ground.full(); ++m) {
    bool ok = true;
    for (const auto& p : out.partitions)
      if ((m & p.x) && (m & p.y)) {
        ok = false;
        break;
      }
    if (ok) out.family.push_back(m);
  }
  // Sanity: user-supplied partitions must separate the family.
  for (const auto& p : spec.partitions)
    if (!separates(p, family))
      throw GroundError("maxe: a given partition does not separate the family");
  return out;
}

ConstraintSystem build_maxe_system(const MaxeSpec& spec) {
  MaxeSpec closed = maxe_closure(spec);
  const GroundSet& g = closed.ground;
  std::set<Mask> fam(closed.family.begin(), closed.family.end());

  ConstraintSystem sys;
  for (Mask m = 1; m <= g.full(); ++m)
    if (fam.count(m)) sys.add_var(g.subset_name(m));
  sys.num_main = static_cast<int>(sys.vars.size());
  for (Mask m = 1; m <= g.full(); ++m)
    if (!fam.count(m)) sys.add_var(g.subset_name(m));

  auto var_of = [&](Mask m) { return sys.var_index(g.subset_name(m)); };

  // Forced-to-zero submodularity instances S(X,Y||D).
  auto forced = [&](const ShannonInstance& ins) {
    for (const auto& p : closed.partitions) {
      if ((p.d & ~ins.k) != 0) continue;
      Mask abit = g.singleton(ins.a), bbit = g.singleton(ins.b);
      if (((abit & p.x) && (bbit & p.y)) || ((abit & p.y) && (bbit & p.x)))
        return true;
    }
    return false;
  };

  for (const auto& ins : shannon_instances(g)) {
    if (ins.monotone) continue;
    SparseRow row;
    for (Mask m = 1; m <= g.full(); ++m)
      if (ins.fn.at(m) != 0) row.add(var_of(m), ins.fn.at(m));
    sys.add_row(std::move(row), forced(ins) ? Relation::EQ0 : Relation::GEQ0,
                ins.name);
  }
  return sys;
}

// ---------------------------------------------------------------------------
// GMAXE
// ---------------------------------------------------------------------------

void GmaxeSpec::validate() const {
  if (static_cast<int>(phi.size()) != big.size())
    throw GroundError("gmaxe: phi must cover the big ground");
  std::vector<bool> hit(small.size(), false);
  for (int v : phi) {
    if (v < 0 || v >= small.size()) throw GroundError("gmaxe: phi out of range");
    hit[v] = true;
  }
  for (bool h : hit)
    if (!h) throw GroundError("gmaxe: phi must be onto the small ground");
  for (Mask t : transversals) {
    if (popcount(t) != small.size())
      throw GroundError("gmaxe: transversal size must match the small ground");
    std::vector<bool> seen(small.size(), false);
    for (int i = 0; i < big.size(); ++i)
      if (t & big.singleton(i)) {
        if (seen[phi[i]]) throw GroundError("gmaxe: transversal hits an element twice");
        seen[phi[i]] = true;
      }
  }
}

bool GmaxeSpec::is_sunflower() const {
  if (transversals.size() < 2) return false;
  Mask core = transversals[0] & transversals[1];
  for (size_t i = 0; i < transversals.size(); ++i)
    for (size_t j = i + 1; j < transversals.size(); ++j)
      if ((transversals[i] & transversals[j]) != core) return false;
  // Петals (differences) must be disjoint.
  Mask seen = 0;
  for (Mask t : transversals) {
    Mask petal = t & ~core;
    if (petal & seen) return false;
    seen |= petal;
  }
  return true;
}

std::vector<ThreePartition> separating_partitions(const GmaxeSpec& spec) {
  spec.validate();
  if (spec.big.size() > 16)
    throw GroundError("gmaxe: partition enumeration capped at 16 elements");
  return all_separating(spec.big, spec.transversals);
}

ConstraintSystem build_gmaxe_system(const GmaxeSpec& spec) {
  spec.validate();
  const GroundSet& m = spec.big;
  const GroundSet& n = spec.small;

  // Glue: masks inside a transversal map to main variables over N.
  auto phi_mask = [&](Mask s) {
    Mask out = 0;
    for (int i = 0; i < m.size(); ++i)
      if (s & m.singleton(i)) out |= n.singleton(spec.phi[i]);
    return out;
  };
  auto glued = [&](Mask s) -> std::optional<Mask> {
    for (Mask t : spec.transversals)
      if ((s & ~t) == 0) return phi_mask(s);
    return std::nullopt;
  };

  ConstraintSystem sys;
  for (Mask s = 1; s <= n.full(); ++s) sys.add_var("N:" + n.subset_name(s));
  sys.num_main = static_cast<int>(sys.vars.size());
  for (Mask s = 1; s <= m.full(); ++s)
    if (!glued(s)) sys.add_var("M:" + m.subset_name(s));

  auto var_of = [&](Mask s) {
    if (auto g = glued(s)) return sys.var_index("N:" + n.subset_name(*g));
    return sys.var_index("M:" + m.subset_name(s));
  };

  // Forced instances: (a,b|K) with a, b separated once K is removed, i.e.
  // lying in different co-occurrence components of M \ K.
  auto forced = [&](int a, int b, Mask k) {
    std::vector<int> comp(m.size(), -1);
    int nc = 0;
    for (int i = 0; i < m.size(); ++i) {
      if (comp[i] >= 0 || (k & m.singleton(i))) continue;
      // BFS over transversal co-occurrence.
      std::vector<int> queue{i};
      comp[i] = nc;
      while (!queue.empty()) {
        int cur = queue.back();
        queue.pop_back();
        for (Mask t : spec.transversals) {
          if (!(t & m.singleton(cur))) continue;
          for (int j = 0; j < m.size(); ++j)
            if ((t & m.singleton(j)) && !(k & m.singleton(j)) && comp[j] < 0) {
              comp[j] = nc;
              queue.push_back(j);
            }
        }
      }
      ++nc;
    }
    return comp[a] != comp[b];
  };

  for (const auto& ins : shannon_instances(m)) {
    if (ins.monotone) continue;
    SparseRow row;
    for (Mask s = 1; s <= m.full(); ++s)
      if (ins.fn.at(s) != 0) row.add(var_of(s), ins.fn.at(s));
    if (row.empty()) continue;
    sys.add_row(std::move(row),
                forced(ins.a, ins.b, ins.k) ? Relation::EQ0 : Relation::GEQ0,
                ins.name);
  }
  return sys;
}

No4Result no4_check(const GmaxeSpec& spec, const Polymatroid* target) {
  spec.validate();
  if (spec.small.size() != 4) throw GroundError("no4_check: |N| must be 4");
  No4Result out;
  std::vector<ThreePartition> parts = separating_partitions(spec);
  out.useless = std::all_of(parts.begin(), parts.end(), [](const ThreePartition& p) {
    return popcount(p.d) >= 3;
  });
  if (!out.useless || target == nullptr) return out;
  if (target->ground != spec.small) throw GroundError("no4_check: target ground");

  // Explicit witness: v on transversal subsets and singletons, 4 elsewhere.
  const GroundSet& m = spec.big;
  auto phi_mask = [&](Mask s) {
    Mask o = 0;
    for (int i = 0; i < m.size(); ++i)
      if (s & m.singleton(i)) o |= spec.small.singleton(spec.phi[i]);
    return o;
  };
  Polymatroid g(m);
  for (Mask s = 1; s <= m.full(); ++s) {
    bool in_t = popcount(s) == 1;
    for (Mask t : spec.transversals)
      if ((s & ~t) == 0) in_t = true;
    g.at(s) = in_t ? target->at(phi_mask(s)) : Rat(4);
  }
  if (!is_polymatroid(g).ok)
    throw GroundError("no4_check: witness failed the polymatroid check");
  // Clause (i): phi restricted to each transversal is an isomorphism.
  for (Mask t : spec.transversals)
    for (Mask s = t; s != 0; s = (s - 1) & t)
      if (g.at(s) != target->at(phi_mask(s)))
        throw GroundError("no4_check: witness fails the embedding clause");
  // Clause (ii): every separating partition is conditionally independent.
  for (const auto& p : parts)
    if (g.cmi(p.x, p.y, p.d) != 0)
      throw GroundError("no4_check: witness fails an independence clause");
  out.witness = std::move(g);
  return out;
}

// ---------------------------------------------------------------------------
// Ahlswede-Korner
// ---------------------------------------------------------------------------

ConstraintSystem ak2_gadget(const GroundSet& ground, Mask x, Mask y, int z) {
  const Mask zbit = ground.singleton(z);
  if ((x & y) || (x & zbit) || (y & zbit) || (x | y | zbit) != ground.full())
    throw GroundError("ak2: X, Y, {z} must partition the ground");

  ConstraintSystem sys;
  for (Mask m = 1; m <= ground.full(); ++m) sys.add_var(ground.subset_name(m));
  sys.num_main = static_cast<int>(sys.vars.size());
  // Transformed-side variables: only the subsets with z and X together are
  // genuinely new; everything else is pinned to main variables.
  for (Mask m = 1; m <= ground.full(); ++m)
    if ((m & zbit) && (m & x)) sys.add_var("ak:" + ground.subset_name(m));

  auto pinned = [&](Mask m) -> std::optional<SparseRow> {
    SparseRow row;
    if (!(m & zbit)) {
      row.add(sys.var_index(ground.subset_name(m)), Rat(1));
      return row;
    }
    if ((m & x) == 0) {
      // value(m) = x_m - (x_{Yz} - x_Y)
      row.add(sys.var_index(ground.subset_name(m)), Rat(1));
      row.add(sys.var_index(ground.subset_name(y | zbit)), Rat(-1));
      row.add(sys.var_index(ground.subset_name(y)), Rat(1));
      return row;
    }
    return std::nullopt;
  };
  auto expr_of = [&](Mask m) {
    if (auto p = pinned(m)) return *p;
    SparseRow row;
    row.add(sys.var_index("ak:" + ground.subset_name(m)), Rat(1));
    return row;
  };

  for (const auto& ins : shannon_instances(ground)) {
    SparseRow row;
    for (Mask m = 1; m <= ground.full(); ++m)
      if (ins.fn.at(m) != 0) row.add_scaled(expr_of(m), ins.fn.at(m));
    if (!row.empty()) sys.add_row(std::move(row), Relation::GEQ0, "ak:" + ins.name);
  }
  return sys;
}

Ak2Result ak2_apply(const Polymatroid& f, Mask x, Mask y, int z) {
  const GroundSet& g = f.ground;
  const Mask zbit = g.singleton(z);
  if ((x & y) || (x & zbit) || (y & zbit) || (x | y | zbit) != g.full())
    throw GroundError("ak2: X, Y, {z} must partition the ground");
  Ak2Result out;
  out.map.ground = g;
  out.map.value.assign(g.full(), std::nullopt);
  const Rat drop = f.cond(zbit, y);
  for (Mask m = 1; m <= g.full(); ++m) {
    if (!(m & zbit))
      out.map.value[m - 1] = f.at(m);
    else if ((m & x) == 0)
      out.map.value[m - 1] = f.at(m) - drop;
  }
  out.gadget = ak2_gadget(g, x, y, z);
  return out;
}

PartialRankMap akz_apply(const Polymatroid& f, Mask x, Mask y, Mask z) {
  const GroundSet& g = f.ground;
  if ((x & y) || (x & z) || (y & z) || (x | y | z) != g.full() || z == 0)
    throw GroundError("akz: X, Y, Z must partition the ground");
  PartialRankMap map;
  map.ground = g;
  map.value.assign(g.full(), std::nullopt);
  const Rat drop = f.cond(z, y);
  for (Mask m = 1; m <= g.full(); ++m) {
    if ((m & z) == 0) {
      map.value[m - 1] = f.at(m);
    } else if ((m & x) == 0) {
      Rat alt = f.value(m | z) - drop;
      map.value[m - 1] = std::min(f.at(m), alt);
    }
  }
  return map;
}

}  // namespace entreg
