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

#include "entreg/cone.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>

namespace entreg {

namespace {

using Clock = std::chrono::steady_clock;

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat acc(0);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  return acc;
}

// Rank of the given row vectors by fraction-free Gaussian elimination.
int rank_of(std::vector<std::vector<Rat>> rows) {
  int rank = 0;
  const int dim = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    const Rat inv = Rat(1) / rows[rank][col];
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] == 0) continue;
      const Rat f = rows[r][col] * inv;
      for (int c = col; c < dim; ++c)
        if (rows[rank][c] != 0) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

struct TightSet {
  std::vector<std::uint64_t> words;

  explicit TightSet(size_t bits = 0) : words((bits + 63) / 64, 0) {}
  void set(size_t i) { words[i >> 6] |= std::uint64_t(1) << (i & 63); }
  bool test(size_t i) const {
    return (words[i >> 6] >> (i & 63)) & 1;
  }
  static TightSet intersect(const TightSet& a, const TightSet& b) {
    TightSet out;
    out.words.resize(a.words.size());
    for (size_t i = 0; i < a.words.size(); ++i) out.words[i] = a.words[i] & b.words[i];
    return out;
  }
  bool subset_of(const TightSet& other) const {
    for (size_t i = 0; i < words.size(); ++i)
      if (words[i] & ~other.words[i]) return false;
    return true;
  }
  size_t count() const {
    size_t c = 0;
    for (auto w : words) c += __builtin_popcountll(w);
    return c;
  }
};

struct DDRay {
  std::vector<Rat> v;
  TightSet tight;
};

void normalize_ray(std::vector<Rat>& v) {
  std::vector<Int> prim = primitive_integer(v);
  for (size_t i = 0; i < v.size(); ++i) v[i] = Rat(prim[i]);
}

}  // namespace

DDResult dd_cone(int dim, const std::vector<std::vector<Rat>>& equalities,
                 const std::vector<std::vector<Rat>>& inequalities,
                 const ConeLimits& limits) {
  const auto start = Clock::now();
  auto check_limits = [&](size_t nrays) {
    if (limits.max_rays && nrays > limits.max_rays)
      throw ResourceCapError("ray cap exceeded (" + std::to_string(nrays) + " > " +
                             std::to_string(limits.max_rays) + ")");
    if (limits.timeout_seconds > 0) {
      double el = std::chrono::duration<double>(Clock::now() - start).count();
      if (el > limits.timeout_seconds) throw ResourceCapError("timeout exceeded");
    }
  };

  // Lineality basis starts as the equality-restricted subspace.
  std::vector<std::vector<Rat>> lin;
  for (int i = 0; i < dim; ++i) {
    std::vector<Rat> e(dim, Rat(0));
    e[i] = Rat(1);
    lin.push_back(std::move(e));
  }
  for (const auto& g : equalities) {
    int hit = -1;
    for (size_t i = 0; i < lin.size(); ++i)
      if (dot(g, lin[i]) != 0) {
        hit = static_cast<int>(i);
        break;
      }
    if (hit < 0) continue;  // dependent equality
    const Rat gh = dot(g, lin[hit]);
    std::vector<std::vector<Rat>> next;
    for (size_t i = 0; i < lin.size(); ++i) {
      if (static_cast<int>(i) == hit) continue;
      const Rat gi = dot(g, lin[i]);
      std::vector<Rat> w = lin[i];
      if (gi != 0) {
        const Rat f = gi / gh;
        for (int k = 0; k < dim; ++k) w[k] -= f * lin[hit][k];
      }
      next.push_back(std::move(w));
    }
    lin = std::move(next);
  }

  // Insertion order: by number of non-zeros, ties by input position.
  std::vector<int> order(inequalities.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    size_t na = 0, nb = 0;
    for (const auto& x : inequalities[a])
      if (x != 0) ++na;
    for (const auto& x : inequalities[b])
      if (x != 0) ++nb;
    return na < nb;
  });

  const size_t num_ineq = inequalities.size();
  std::vector<const std::vector<Rat>*> processed;  // by tight index
  std::vector<DDRay> rays;

  for (size_t step = 0; step < order.size(); ++step) {
    const std::vector<Rat>& a = inequalities[order[step]];
    const size_t t = processed.size();

    int hit = -1;
    for (size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        hit = static_cast<int>(i);
        break;
      }
    if (hit >= 0) {
      std::vector<Rat> l0 = lin[hit];
      Rat al0 = dot(a, l0);
      if (al0 < 0) {
        for (auto& x : l0) x = -x;
        al0 = -al0;
      }
      std::vector<std::vector<Rat>> next;
      for (size_t i = 0; i < lin.size(); ++i) {
        if (static_cast<int>(i) == hit) continue;
        const Rat ai = dot(a, lin[i]);
        std::vector<Rat> w = lin[i];
        if (ai != 0) {
          const Rat f = ai / al0;
          for (int k = 0; k < dim; ++k) w[k] -= f * l0[k];
        }
        next.push_back(std::move(w));
      }
      lin = std::move(next);
      for (auto& r : rays) {
        const Rat ar = dot(a, r.v);
        if (ar != 0) {
          const Rat f = ar / al0;
          for (int k = 0; k < dim; ++k) r.v[k] -= f * l0[k];
          normalize_ray(r.v);
        }
        r.tight.set(t);
      }
      DDRay nr;
      nr.v = std::move(l0);
      normalize_ray(nr.v);
      nr.tight = TightSet(num_ineq);
      for (size_t s = 0; s < t; ++s) nr.tight.set(s);
      rays.push_back(std::move(nr));
      processed.push_back(&inequalities[order[step]]);
      check_limits(rays.size());
      continue;
    }

    std::vector<Rat> vals(rays.size());
    std::vector<int> plus, minus;
    for (size_t i = 0; i < rays.size(); ++i) {
      vals[i] = dot(a, rays[i].v);
      if (vals[i] > 0)
        plus.push_back(static_cast<int>(i));
      else if (vals[i] < 0)
        minus.push_back(static_cast<int>(i));
      else
        rays[i].tight.set(t);
    }
    if (!minus.empty()) {
      const int needed = dim - static_cast<int>(lin.size()) - 2;
      std::vector<DDRay> born;
      for (int p : plus) {
        for (int n : minus) {
          TightSet common = TightSet::intersect(rays[p].tight, rays[n].tight);
          // Cheap necessary condition first.
          if (static_cast<int>(common.count() + equalities.size()) < needed) continue;
          // Combinatorial test: no third ray is tight everywhere the pair is.
          bool dominated = false;
          if (lin.empty()) {
            for (size_t o = 0; o < rays.size(); ++o) {
              if (static_cast<int>(o) == p || static_cast<int>(o) == n) continue;
              if (common.subset_of(rays[o].tight)) {
                dominated = true;
                break;
              }
            }
          }
          if (dominated) continue;
          // Algebraic test: the commonly tight constraints must leave a
          // two-dimensional face (beyond the remaining lineality).
          std::vector<std::vector<Rat>> mat = equalities;
          for (size_t s = 0; s < t; ++s)
            if (common.test(s)) mat.push_back(*processed[s]);
          if (rank_of(std::move(mat)) != needed) continue;

          DDRay w;
          w.v.resize(dim);
          for (int k = 0; k < dim; ++k)
            w.v[k] = vals[p] * rays[n].v[k] - vals[n] * rays[p].v[k];
          normalize_ray(w.v);
          w.tight = common;
          w.tight.set(t);
          born.push_back(std::move(w));
          check_limits(rays.size() + born.size());
        }
      }
      std::vector<DDRay> next;
      for (size_t i = 0; i < rays.size(); ++i)
        if (vals[i] >= 0) next.push_back(std::move(rays[i]));
      for (auto& w : born) next.push_back(std::move(w));
      rays = std::move(next);
    }
    processed.push_back(&inequalities[order[step]]);
    check_limits(rays.size());
  }

  DDResult out;
  out.lineality = std::move(lin);
  std::set<std::vector<Int>> sorted;
  for (const auto& r : rays) {
    std::vector<Int> prim = primitive_integer(r.v);
    bool zero = std::all_of(prim.begin(), prim.end(), [](const Int& x) { return x == 0; });
    if (!zero) sorted.insert(std::move(prim));
  }
  out.rays.assign(sorted.begin(), sorted.end());
  return out;
}

LinearFunctional RayList::functional(size_t i) const {
  LinearFunctional e(ground);
  for (Mask m = 1; m <= ground.full(); ++m) e.at(m) = Rat(rays[i][m - 1]);
  return e;
}

RayList dd_rays(const std::vector<LinearFunctional>& inequalities,
                const std::vector<LinearFunctional>& equalities,
                const ConeLimits& limits) {
  if (inequalities.empty()) throw GroundError("dd_rays: no inequalities");
  const GroundSet& ground = inequalities.front().ground;
  const int dim = static_cast<int>(ground.full());
  std::vector<std::vector<Rat>> ineqs, eqs;
  for (const auto& e : inequalities) ineqs.push_back(e.coeff);
  for (const auto& e : equalities) eqs.push_back(e.coeff);
  DDResult res = dd_cone(dim, eqs, ineqs, limits);
  if (!res.lineality.empty())
    throw GroundError("dd_rays: cone is not pointed; lineality dimension " +
                      std::to_string(res.lineality.size()));
  RayList out;
  out.ground = ground;
  out.rays = std::move(res.rays);
  return out;
}

RayList gamma_rays(const GroundSet& ground, const ConeLimits& limits) {
  return dd_rays(shannon_basic(ground), {}, limits);
}

ConsequenceResult consequence_cone(const ConstraintSystem& sys,
                                   const GroundSet& main_ground,
                                   const ConsequenceOptions& opts) {
  const int num_main = sys.num_main;
  // Split rows into those with and without auxiliary support.
  std::vector<int> h_rows;
  std::vector<LinearFunctional> pool;
  auto main_part = [&](const LinRow& row) {
    LinearFunctional e(main_ground);
    for (const auto& [v, c] : row.coeffs.terms)
      if (v < num_main) e.at(static_cast<Mask>(v) + 1) = c;
    return e;
  };
  for (size_t r = 0; r < sys.rows.size(); ++r) {
    bool has_aux = false;
    for (const auto& [v, c] : sys.rows[r].coeffs.terms)
      if (v >= num_main) {
        has_aux = true;
        break;
      }
    if (has_aux) {
      h_rows.push_back(static_cast<int>(r));
    } else {
      LinearFunctional e = main_part(sys.rows[r]);
      if (e.is_zero()) continue;
      pool.push_back(e);
      if (sys.rows[r].rel == Relation::EQ0) {
        // An equality fully over the main variables contributes both
        // directions.
        for (auto& c : e.coeff) c = -c;
        pool.push_back(std::move(e));
      }
    }
  }

  // Multiplier cone {h : h Q = 0, h >= 0 on inequality rows} in the space
  // of the auxiliary-touching rows.
  const int hdim = static_cast<int>(h_rows.size());
  std::vector<std::vector<Rat>> eqs;  // one per auxiliary column with support
  {
    std::map<int, std::vector<Rat>> cols;
    for (int i = 0; i < hdim; ++i) {
      const LinRow& row = sys.rows[h_rows[i]];
      for (const auto& [v, c] : row.coeffs.terms) {
        if (v < num_main) continue;
        auto it = cols.find(v);
        if (it == cols.end())
          it = cols.emplace(v, std::vector<Rat>(hdim, Rat(0))).first;
        it->second[i] = c;
      }
    }
    for (auto& [v, col] : cols) eqs.push_back(std::move(col));
  }
  std::vector<std::vector<Rat>> ineqs;
  for (int i = 0; i < hdim; ++i) {
    if (sys.rows[h_rows[i]].rel != Relation::GEQ0) continue;
    std::vector<Rat> unit(hdim, Rat(0));
    unit[i] = Rat(1);
    ineqs.push_back(std::move(unit));
  }

  DDResult dd = dd_cone(hdim, eqs, ineqs, opts.limits);

  ConsequenceResult out;
  out.h_rays = dd.rays.size();

  auto image = [&](const std::vector<Rat>& h) {
    LinearFunctional e(main_ground);
    for (int i = 0; i < hdim; ++i) {
      if (h[i] == 0) continue;
      const LinRow& row = sys.rows[h_rows[i]];
      for (const auto& [v, c] : row.coeffs.terms)
        if (v < num_main) e.add(static_cast<Mask>(v) + 1, h[i] * c);
    }
    return e;
  };

  // A lineality direction of the multiplier cone must map to zero, else the
  // instance forces equality consequences which this pipeline does not
  // enumerate.
  for (const auto& l : dd.lineality) {
    LinearFunctional e = image(l);
    if (!e.is_zero())
      throw GroundError("consequence_cone: free multiplier with non-zero image "
                        "(equality consequence); not supported");
  }

  for (const auto& hray : dd.rays) {
    LinearFunctional e = image(to_rat_vector(hray));
    if (e.is_zero()) {
      ++out.dropped_zero;
      continue;
    }
    pool.push_back(std::move(e));
  }

  // Canonicalize and dedup.
  std::set<std::vector<Int>> seen;
  std::vector<LinearFunctional> cands;
  for (const auto& e : pool) {
    std::vector<Int> prim = primitive_integer(e.coeff);
    if (seen.insert(prim).second) {
      LinearFunctional canon(main_ground);
      for (size_t i = 0; i < prim.size(); ++i) canon.coeff[i] = Rat(prim[i]);
      cands.push_back(std::move(canon));
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const LinearFunctional& x, const LinearFunctional& y) {
              return x.coeff < y.coeff;
            });

  // Greedy irredundance: drop any candidate implied by the remaining ones
  // (plus Shannon when requested).
  std::vector<LinearFunctional> shannon;
  if (opts.redundancy_against_shannon) shannon = shannon_basic(main_ground);
  std::vector<bool> alive(cands.size(), true);
  for (size_t i = 0; i < cands.size(); ++i) {
    ConstraintSystem redsys;
    for (Mask m = 1; m <= main_ground.full(); ++m)
      redsys.add_var(main_ground.subset_name(m));
    redsys.num_main = static_cast<int>(redsys.vars.size());
    int nrows = 0;
    for (size_t j = 0; j < cands.size(); ++j) {
      if (j == i || !alive[j]) continue;
      redsys.add_row(functional_row(cands[j]), Relation::GEQ0,
                     "cand:" + std::to_string(j));
      ++nrows;
    }
    for (size_t s = 0; s < shannon.size(); ++s)
      redsys.add_row(functional_row(shannon[s]), Relation::GEQ0,
                     "shan:" + std::to_string(s));
    if (nrows + shannon.size() == 0) continue;
    if (implies(redsys, functional_row(cands[i])).yes) alive[i] = false;
  }
  for (size_t i = 0; i < cands.size(); ++i)
    if (alive[i]) out.rays.push_back(std::move(cands[i]));
  return out;
}

std::vector<LinearFunctional> filter_shannon(const std::vector<LinearFunctional>& rays,
                                             const GroundSet& ground) {
  ConstraintSystem sys = shannon_system(ground);
  std::vector<LinearFunctional> out;
  for (const auto& e : rays)
    if (!implies(sys, functional_row(e)).yes) out.push_back(e);
  return out;
}

OrbitClasses orbit_dedup(const RayList& rays,
                         const std::vector<Permutation>& generators) {
  OrbitClasses out;
  const int n = rays.ground.size();
  for (const auto& g : generators)
    if (!is_total_permutation(g, n))
      throw GroundError("orbit_dedup: generators must be total permutations");

  auto permute = [&](const std::vector<Int>& v, const Permutation& sigma) {
    std::vector<Int> w(v.size());
    for (Mask m = 1; m <= rays.ground.full(); ++m)
      w[apply_to_mask(sigma, m) - 1] = v[m - 1];
    return w;
  };

  std::set<std::vector<Int>> visited;
  for (const auto& r : rays.rays) {
    if (visited.count(r)) continue;
    // BFS closure of the orbit.
    std::set<std::vector<Int>> orbit;
    std::vector<std::vector<Int>> queue{r};
    orbit.insert(r);
    while (!queue.empty()) {
      std::vector<Int> cur = std::move(queue.back());
      queue.pop_back();
      for (const auto& g : generators) {
        std::vector<Int> img = permute(cur, g);
        if (orbit.insert(img).second) queue.push_back(img);
      }
    }
    out.representatives.push_back(*orbit.begin());
    out.orbit_sizes.push_back(orbit.size());
    for (const auto& v : orbit) visited.insert(v);
  }
  return out;
}

}  // namespace entreg
