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

#include "entreg/dist.hpp"

#include <algorithm>
#include <cmath>

namespace entreg {

namespace {

double xlog2x(double p) { return p > 0 ? -p * std::log2(p) : 0.0; }

std::size_t checked_cells(const std::vector<int>& alphabet, std::size_t cap) {
  std::size_t cells = 1;
  for (int a : alphabet) {
    if (a < 1) throw GroundError("alphabet sizes must be positive");
    if (cells > cap / static_cast<std::size_t>(a))
      throw GroundError("distribution table exceeds the cell cap");
    cells *= static_cast<std::size_t>(a);
  }
  return cells;
}

}  // namespace

std::size_t JointDistribution::index_of(const std::vector<int>& tuple) const {
  std::size_t idx = 0, stride = 1;
  for (int i = 0; i < ground.size(); ++i) {
    idx += stride * static_cast<std::size_t>(tuple[i]);
    stride *= static_cast<std::size_t>(alphabet[i]);
  }
  return idx;
}

std::vector<int> JointDistribution::tuple_of(std::size_t index) const {
  std::vector<int> t(ground.size());
  for (int i = 0; i < ground.size(); ++i) {
    t[i] = static_cast<int>(index % alphabet[i]);
    index /= alphabet[i];
  }
  return t;
}

void JointDistribution::validate(double tol) const {
  double total = 0;
  for (double m : mass) {
    if (m < 0) throw GroundError("negative probability mass");
    total += m;
  }
  if (std::abs(total - 1.0) > tol)
    throw GroundError("probability masses sum to " + std::to_string(total));
}

JointDistribution make_distribution(GroundSet ground, std::vector<int> alphabet) {
  if (static_cast<int>(alphabet.size()) != ground.size())
    throw GroundError("one alphabet size per element required");
  JointDistribution d;
  d.mass.assign(checked_cells(alphabet, std::size_t(1) << 28), 0.0);
  d.ground = std::move(ground);
  d.alphabet = std::move(alphabet);
  return d;
}

EntropyProfile profile(const JointDistribution& d) {
  EntropyProfile p;
  p.ground = d.ground;
  p.h.assign(d.ground.full(), 0.0);
  const std::size_t cells = d.cells();
  for (Mask a = 1; a <= d.ground.full(); ++a) {
    // Marginal on A by exact mass summation in fixed cell order.
    std::size_t sub_cells = 1;
    for (int i = 0; i < d.ground.size(); ++i)
      if (a & d.ground.singleton(i)) sub_cells *= d.alphabet[i];
    std::vector<double> marg(sub_cells, 0.0);
    for (std::size_t idx = 0; idx < cells; ++idx) {
      if (d.mass[idx] == 0) continue;
      std::size_t key = 0, stride = 1, rest = idx;
      for (int i = 0; i < d.ground.size(); ++i) {
        int digit = static_cast<int>(rest % d.alphabet[i]);
        rest /= d.alphabet[i];
        if (a & d.ground.singleton(i)) {
          key += stride * static_cast<std::size_t>(digit);
          stride *= d.alphabet[i];
        }
      }
      marg[key] += d.mass[idx];
    }
    double h = 0;
    for (double m : marg) h += xlog2x(m);
    p.h[a - 1] = h;
  }
  return p;
}

double profile_shannon_slack(const EntropyProfile& p) {
  double worst = 0;
  const GroundSet& g = p.ground;
  for (int i = 0; i < g.size(); ++i)
    worst = std::min(worst, p.value(g.full()) - p.value(g.full() ^ g.singleton(i)));
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b) {
      Mask rest = g.full() ^ g.singleton(a) ^ g.singleton(b);
      for (Mask k = 0;; k = (k - rest) & rest) {
        worst = std::min(worst, p.cmi(g.singleton(a), g.singleton(b), k));
        if (k == rest) break;
      }
    }
  return worst;
}

JointDistribution marginal(const JointDistribution& d, Mask a) {
  if (a == 0) throw GroundError("marginal: empty subset");
  std::vector<int> alph;
  for (int i = 0; i < d.ground.size(); ++i)
    if (a & d.ground.singleton(i)) alph.push_back(d.alphabet[i]);
  JointDistribution out = make_distribution(d.ground.restricted(a), alph);
  for (std::size_t idx = 0; idx < d.cells(); ++idx) {
    if (d.mass[idx] == 0) continue;
    std::size_t key = 0, stride = 1, rest = idx;
    for (int i = 0; i < d.ground.size(); ++i) {
      int digit = static_cast<int>(rest % d.alphabet[i]);
      rest /= d.alphabet[i];
      if (a & d.ground.singleton(i)) {
        key += stride * static_cast<std::size_t>(digit);
        stride *= d.alphabet[i];
      }
    }
    out.mass[key] += d.mass[idx];
  }
  return out;
}

JointDistribution independent_join(const JointDistribution& d,
                                   const JointDistribution& e) {
  if (d.ground != e.ground) throw GroundError("independent_join: ground mismatch");
  std::vector<int> alph(d.ground.size());
  for (int i = 0; i < d.ground.size(); ++i) alph[i] = d.alphabet[i] * e.alphabet[i];
  JointDistribution out = make_distribution(d.ground, alph);
  for (std::size_t i = 0; i < d.cells(); ++i) {
    if (d.mass[i] == 0) continue;
    std::vector<int> ti = d.tuple_of(i);
    for (std::size_t j = 0; j < e.cells(); ++j) {
      if (e.mass[j] == 0) continue;
      std::vector<int> tj = e.tuple_of(j);
      std::vector<int> t(d.ground.size());
      for (int k = 0; k < d.ground.size(); ++k) t[k] = ti[k] * e.alphabet[k] + tj[k];
      out.mass[out.index_of(t)] += d.mass[i] * e.mass[j];
    }
  }
  return out;
}

JointDistribution tensor_power(const JointDistribution& d, int n,
                               std::size_t max_cells) {
  if (n < 1) throw GroundError("tensor_power: n >= 1 required");
  std::size_t cells = 1;
  for (int i = 0; i < d.ground.size(); ++i) {
    long long a = 1;
    for (int t = 0; t < n; ++t) {
      a *= d.alphabet[i];
      if (a > static_cast<long long>(max_cells))
        throw GroundError("tensor_power: cell cap exceeded");
    }
    if (cells > max_cells / static_cast<std::size_t>(a))
      throw GroundError("tensor_power: cell cap exceeded");
    cells *= static_cast<std::size_t>(a);
  }
  JointDistribution out = d;
  for (int t = 1; t < n; ++t) out = independent_join(out, d);
  return out;
}

Conditioned condition_on(const JointDistribution& d, Mask k) {
  if (k == 0 || k == d.ground.full())
    throw GroundError("condition_on: K must be a proper non-empty subset");
  const Mask m = d.ground.full() ^ k;
  JointDistribution km = marginal(d, k);

  Conditioned out;
  out.averaged.ground = d.ground.restricted(m);
  out.averaged.h.assign(out.averaged.ground.full(), 0.0);

  std::vector<int> alph_m;
  for (int i = 0; i < d.ground.size(); ++i)
    if (m & d.ground.singleton(i)) alph_m.push_back(d.alphabet[i]);

  for (std::size_t kz = 0; kz < km.cells(); ++kz) {
    const double w = km.mass[kz];
    if (w <= 0) continue;  // zero-probability slices skipped
    std::vector<int> ktuple = km.tuple_of(kz);
    JointDistribution slice = make_distribution(d.ground.restricted(m), alph_m);
    for (std::size_t idx = 0; idx < d.cells(); ++idx) {
      if (d.mass[idx] == 0) continue;
      std::vector<int> t = d.tuple_of(idx);
      bool match = true;
      int kk = 0;
      for (int i = 0; i < d.ground.size() && match; ++i)
        if (k & d.ground.singleton(i)) match = (t[i] == ktuple[kk++]);
      if (!match) continue;
      std::vector<int> tm;
      for (int i = 0; i < d.ground.size(); ++i)
        if (m & d.ground.singleton(i)) tm.push_back(t[i]);
      slice.mass[slice.index_of(tm)] += d.mass[idx] / w;
    }
    EntropyProfile sp = profile(slice);
    for (size_t i = 0; i < out.averaged.h.size(); ++i)
      out.averaged.h[i] += w * sp.h[i];
    out.slices.push_back({w, std::move(slice)});
  }
  return out;
}

JointDistribution dilute(const JointDistribution& d, double p) {
  if (p < 0 || p > 1) throw GroundError("dilute: p must be in [0, 1]");
  std::vector<int> alph(d.ground.size());
  for (int i = 0; i < d.ground.size(); ++i) alph[i] = d.alphabet[i] + 1;
  JointDistribution out = make_distribution(d.ground, alph);
  for (std::size_t idx = 0; idx < d.cells(); ++idx) {
    if (d.mass[idx] == 0) continue;
    std::vector<int> t = d.tuple_of(idx);
    out.mass[out.index_of(t)] += p * d.mass[idx];
  }
  std::vector<int> z(d.ground.size());
  for (int i = 0; i < d.ground.size(); ++i) z[i] = d.alphabet[i];  // fresh symbol
  out.mass[out.index_of(z)] += 1 - p;
  return out;
}

void FiniteGroup::validate() const {
  if (order < 1 || static_cast<int>(table.size()) != order * order)
    throw GroundError("group: bad table size");
  for (int v : table)
    if (v < 0 || v >= order) throw GroundError("group: entry out of range");
  for (int g = 0; g < order; ++g)
    if (mul(identity, g) != g || mul(g, identity) != g)
      throw GroundError("group: identity fails");
  // Inverses: each row and column is a permutation.
  for (int g = 0; g < order; ++g) {
    std::vector<bool> row(order, false), col(order, false);
    for (int h = 0; h < order; ++h) {
      if (row[mul(g, h)] || col[mul(h, g)])
        throw GroundError("group: table rows/columns must be permutations");
      row[mul(g, h)] = col[mul(h, g)] = true;
    }
  }
  if (order <= 64) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw GroundError("group: associativity fails");
  }
}

FiniteGroup FiniteGroup::cyclic(int n) {
  FiniteGroup g;
  g.order = n;
  g.identity = 0;
  g.table.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.table[a * n + b] = (a + b) % n;
  return g;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& g, const FiniteGroup& h) {
  FiniteGroup out;
  out.order = g.order * h.order;
  out.identity = g.identity * h.order + h.identity;
  out.table.resize(out.order * out.order);
  for (int a = 0; a < out.order; ++a)
    for (int b = 0; b < out.order; ++b) {
      int ag = a / h.order, ah = a % h.order;
      int bg = b / h.order, bh = b % h.order;
      out.table[a * out.order + b] = g.mul(ag, bg) * h.order + h.mul(ah, bh);
    }
  return out;
}

JointDistribution from_groups(const FiniteGroup& g, const GroundSet& ground,
                              const std::vector<std::vector<int>>& subgroups) {
  g.validate();
  if (static_cast<int>(subgroups.size()) != ground.size())
    throw GroundError("from_groups: one subgroup per element required");
  for (const auto& sub : subgroups) {
    std::vector<bool> in(g.order, false);
    bool has_id = false;
    for (int x : sub) {
      if (x < 0 || x >= g.order) throw GroundError("from_groups: bad subgroup element");
      in[x] = true;
      if (x == g.identity) has_id = true;
    }
    if (!has_id) throw GroundError("from_groups: subgroup misses the identity");
    for (int x : sub)
      for (int y : sub)
        if (!in[g.mul(x, y)])
          throw GroundError("from_groups: set not closed under the table");
  }
  // Coset labels per element: coset index of x under subgroup i.
  std::vector<std::vector<int>> coset_of(ground.size(), std::vector<int>(g.order, -1));
  std::vector<int> alph(ground.size(), 0);
  for (int i = 0; i < ground.size(); ++i) {
    for (int x = 0; x < g.order; ++x) {
      if (coset_of[i][x] >= 0) continue;
      const int id = alph[i]++;
      for (int s : subgroups[i]) coset_of[i][g.mul(x, s)] = id;
    }
  }
  JointDistribution out = make_distribution(ground, alph);
  const double w = 1.0 / g.order;
  for (int x = 0; x < g.order; ++x) {
    std::vector<int> t(ground.size());
    for (int i = 0; i < ground.size(); ++i) t[i] = coset_of[i][x];
    out.mass[out.index_of(t)] += w;
  }
  return out;
}

JointDistribution from_linear_rep(const LinearRep& rep, std::size_t max_cells) {
  rep.validate();
  std::size_t points = 1;
  for (int i = 0; i < rep.dim; ++i) {
    if (points > max_cells / rep.p) throw GroundError("from_linear_rep: cap exceeded");
    points *= rep.p;
  }
  std::vector<int> alph(rep.ground.size());
  for (int i = 0; i < rep.ground.size(); ++i) {
    long long a = 1;
    for (size_t k = 0; k < rep.vectors[i].size(); ++k) a *= rep.p;
    if (a > (1 << 20)) throw GroundError("from_linear_rep: alphabet too large");
    alph[i] = static_cast<int>(a);
  }
  JointDistribution out = make_distribution(rep.ground, alph);
  const double w = 1.0 / static_cast<double>(points);
  std::vector<std::uint32_t> x(rep.dim, 0);
  for (std::size_t it = 0;; ++it) {
    std::vector<int> t(rep.ground.size());
    for (int i = 0; i < rep.ground.size(); ++i) {
      long long key = 0;
      for (const auto& v : rep.vectors[i]) {
        std::uint64_t dotv = 0;
        for (int k = 0; k < rep.dim; ++k) dotv += std::uint64_t(v[k]) * x[k];
        key = key * rep.p + static_cast<long long>(dotv % rep.p);
      }
      t[i] = static_cast<int>(key);
    }
    out.mass[out.index_of(t)] += w;
    // next point in GF(p)^dim
    int carry = 0;
    while (carry < rep.dim && ++x[carry] == rep.p) x[carry++] = 0;
    if (carry == rep.dim) break;
    if (it > points) throw GroundError("internal: enumeration overrun");
  }
  return out;
}

bool is_quasi_uniform(const JointDistribution& d, double tol) {
  for (Mask a = 1; a <= d.ground.full(); ++a) {
    JointDistribution m = marginal(d, a);
    double ref = -1;
    for (double mass : m.mass) {
      if (mass <= tol) continue;
      if (ref < 0)
        ref = mass;
      else if (std::abs(mass - ref) > tol)
        return false;
    }
  }
  return true;
}

JointDistribution mod_n_sum(int n) {
  if (n < 2) throw GroundError("mod_n_sum: n >= 2 required");
  JointDistribution d = make_distribution(GroundSet::letters(3), {n, n, n});
  const double w = 1.0 / (n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int c = (2 * n - a - b) % n;  // a + b + c = 0 mod n
      d.mass[d.index_of({a, b, c})] += w;
    }
  return d;
}

JointDistribution ringing_bells() {
  JointDistribution d = make_distribution(GroundSet::letters(4), {2, 2, 2, 2});
  for (int c = 0; c < 2; ++c)
    for (int e = 0; e < 2; ++e) {
      int a = std::max(c, e), b = std::min(c, e);
      d.mass[d.index_of({a, b, c, e})] += 0.25;
    }
  return d;
}

JointDistribution constant_dist(const GroundSet& ground) {
  JointDistribution d = make_distribution(ground, std::vector<int>(ground.size(), 1));
  d.mass[0] = 1.0;
  return d;
}

JointDistribution uniform_bits(int k) {
  JointDistribution d =
      make_distribution(GroundSet::letters(k), std::vector<int>(k, 2));
  const double w = 1.0 / static_cast<double>(std::size_t(1) << k);
  for (double& m : d.mass) m = w;
  return d;
}

JointDistribution mod3_pm() {
  JointDistribution d = make_distribution(GroundSet::letters(3), {3, 3, 3});
  const double w = 1.0 / 18.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int s = 0; s < 2; ++s)
        d.mass[d.index_of({a, b, (a + b + s) % 3})] += w;
  return d;
}

JointDistribution ak2_vamos_witness() {
  JointDistribution d = make_distribution(GroundSet::letters(4), {4, 4, 2, 4});
  const double w = 1.0 / 16.0;
  for (int xa = 0; xa < 2; ++xa)
    for (int xb = 0; xb < 2; ++xb)
      for (int xd = 0; xd < 2; ++xd)
        for (int s = 0; s < 2; ++s) {
          int a = xa * 2 + s, b = xb * 2 + s, c = s, e = xd * 2 + s;
          d.mass[d.index_of({a, b, c, e})] += w;
        }
  return d;
}

EntropyProfile tighten_profile(const EntropyProfile& p) {
  EntropyProfile out = p;
  const GroundSet& g = p.ground;
  for (int z = 0; z < g.size(); ++z) {
    const double lambda = p.value(g.full()) - p.value(g.full() ^ g.singleton(z));
    for (Mask m = 1; m <= g.full(); ++m)
      if (m & g.singleton(z)) out.h[m - 1] -= lambda;
  }
  return out;
}

}  // namespace entreg
