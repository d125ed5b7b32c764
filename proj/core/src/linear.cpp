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

#include "entreg/linear.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "entreg/ops.hpp"

namespace entreg {

namespace {

using Vec = std::vector<std::uint32_t>;

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint32_t gf_pow(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t acc = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) acc = acc * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(acc);
}

std::uint32_t gf_inv(std::uint32_t x, std::uint32_t p) { return gf_pow(x, p - 2, p); }

// Incremental row echelon over GF(p) that can express new vectors in terms
// of the vectors inserted so far.
class GfSpan {
 public:
  GfSpan(std::uint32_t p, int width) : p_(p), width_(width) {}

  int rank() const { return static_cast<int>(rows_.size()); }

  // Inserts v; returns true when it enlarged the span.
  bool insert(const Vec& v) {
    Vec r = v;
    Vec combo(inserted_, 0);
    reduce(r, combo);
    ++inserted_;
    for (auto& c : combos_) c.push_back(0);
    combo.push_back(1);
    int piv = pivot_of(r);
    if (piv < 0) return false;
    const std::uint32_t inv = gf_inv(r[piv], p_);
    for (auto& x : r) x = static_cast<std::uint32_t>(std::uint64_t(x) * inv % p_);
    for (auto& x : combo) x = static_cast<std::uint32_t>(std::uint64_t(x) * inv % p_);
    rows_.push_back(std::move(r));
    combos_.push_back(std::move(combo));
    pivots_.push_back(piv);
    return true;
  }

  // Coefficients over the *inserted* vectors when v lies in the span.
  std::optional<Vec> express(const Vec& v) const {
    Vec r = v;
    Vec combo(inserted_, 0);
    reduce(r, combo);
    if (pivot_of(r) >= 0) return std::nullopt;
    for (auto& x : combo) x = static_cast<std::uint32_t>((p_ - x) % p_);
    return combo;
  }

 private:
  int pivot_of(const Vec& r) const {
    for (int i = 0; i < width_; ++i)
      if (r[i]) return i;
    return -1;
  }

  // r -= sum coeff*rows while maintaining the invariant
  //   residual = original + sum combo[j] * inserted_j.
  void reduce(Vec& r, Vec& combo) const {
    for (size_t k = 0; k < rows_.size(); ++k) {
      const std::uint32_t c = r[pivots_[k]];
      if (!c) continue;
      for (int i = 0; i < width_; ++i)
        r[i] = static_cast<std::uint32_t>(
            (r[i] + std::uint64_t(p_ - c) * rows_[k][i]) % p_);
      for (size_t i = 0; i < combo.size() && i < combos_[k].size(); ++i)
        combo[i] = static_cast<std::uint32_t>(
            (combo[i] + std::uint64_t(p_ - c) * combos_[k][i]) % p_);
    }
  }

  std::uint32_t p_;
  int width_;
  int inserted_ = 0;
  std::vector<Vec> rows_;
  std::vector<Vec> combos_;
  std::vector<int> pivots_;
};

int gf_rank(const std::vector<Vec>& vectors, std::uint32_t p, int width) {
  GfSpan span(p, width);
  for (const auto& v : vectors) span.insert(v);
  return span.rank();
}

// Basis of span(A) intersect span(B) via the split-block elimination: rows
// [a | a] and [b | 0]; reduced rows with zero left block carry an
// intersection vector in the right block.
std::vector<Vec> gf_intersection(const std::vector<Vec>& a, const std::vector<Vec>& b,
                                 std::uint32_t p, int width) {
  std::vector<Vec> rows;
  for (const auto& v : a) {
    Vec r(2 * width, 0);
    for (int i = 0; i < width; ++i) r[i] = r[width + i] = v[i];
    rows.push_back(std::move(r));
  }
  for (const auto& v : b) {
    Vec r(2 * width, 0);
    for (int i = 0; i < width; ++i) r[i] = v[i];
    rows.push_back(std::move(r));
  }
  // Plain elimination ordered by left-block pivots first.
  std::vector<Vec> echelon;
  std::vector<int> pivots;
  for (auto& r : rows) {
    for (size_t k = 0; k < echelon.size(); ++k) {
      const std::uint32_t c = r[pivots[k]];
      if (!c) continue;
      for (int i = 0; i < 2 * width; ++i)
        r[i] = static_cast<std::uint32_t>((r[i] + std::uint64_t(p - c) * echelon[k][i]) % p);
    }
    int piv = -1;
    for (int i = 0; i < 2 * width; ++i)
      if (r[i]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    const std::uint32_t inv = gf_inv(r[piv], p);
    for (auto& x : r) x = static_cast<std::uint32_t>(std::uint64_t(x) * inv % p);
    echelon.push_back(r);
    pivots.push_back(piv);
  }
  std::vector<Vec> inter;
  for (size_t k = 0; k < echelon.size(); ++k) {
    if (pivots[k] < width) continue;  // left block non-zero
    Vec v(width);
    for (int i = 0; i < width; ++i) v[i] = echelon[k][width + i];
    inter.push_back(std::move(v));
  }
  return inter;
}

std::vector<Vec> element_vectors(const LinearRep& rep, Mask a) {
  std::vector<Vec> out;
  for (int i = 0; i < rep.ground.size(); ++i)
    if (a & rep.ground.singleton(i))
      for (const auto& v : rep.vectors[i]) out.push_back(v);
  return out;
}

}  // namespace

void LinearRep::validate() const {
  if (!is_prime(p)) throw GroundError("LinearRep: p must be prime");
  if (dim < 0) throw GroundError("LinearRep: negative dimension");
  if (static_cast<int>(vectors.size()) != ground.size())
    throw GroundError("LinearRep: one vector list per element required");
  for (int i = 0; i < ground.size(); ++i) {
    for (const auto& v : vectors[i]) {
      if (static_cast<int>(v.size()) != dim)
        throw GroundError("LinearRep: vector length mismatch");
      for (auto x : v)
        if (x >= p) throw GroundError("LinearRep: entry out of field range");
    }
    if (gf_rank(vectors[i], p, dim) != static_cast<int>(vectors[i].size()))
      throw GroundError("LinearRep: vectors of '" + ground.label(i) +
                        "' are not linearly independent");
  }
}

LinearRep make_rep(std::uint32_t p, int dim, GroundSet ground) {
  LinearRep rep;
  rep.p = p;
  rep.dim = dim;
  rep.vectors.resize(ground.size());
  rep.ground = std::move(ground);
  return rep;
}

int rank_of(const LinearRep& rep, Mask a) {
  return gf_rank(element_vectors(rep, a), rep.p, rep.dim);
}

Polymatroid to_polymatroid(const LinearRep& rep) {
  Polymatroid f(rep.ground);
  for (Mask m = 1; m <= rep.ground.full(); ++m) f.at(m) = Rat(rank_of(rep, m));
  return f;
}

LinearRep common_info_extend(const LinearRep& rep, Mask a, Mask b,
                             const std::string& newlabel) {
  std::vector<Vec> va = element_vectors(rep, a);
  std::vector<Vec> vb = element_vectors(rep, b);
  std::vector<Vec> inter = gf_intersection(va, vb, rep.p, rep.dim);
  LinearRep out = rep;
  out.ground = rep.ground.extended(newlabel);
  out.vectors.push_back(std::move(inter));
  out.validate();
  return out;
}

LinearRep generic_principal_extension(const LinearRep& rep, Mask z, int alpha,
                                      const std::string& newlabel,
                                      std::uint64_t seed, int max_retries) {
  if (alpha < 0) throw GroundError("generic_principal_extension: negative alpha");
  std::vector<Vec> vz = element_vectors(rep, z);
  GfSpan span(rep.p, rep.dim);
  std::vector<Vec> basis;
  for (const auto& v : vz)
    if (span.insert(v)) basis.push_back(v);
  if (alpha > static_cast<int>(basis.size()))
    throw GroundError("generic_principal_extension: alpha exceeds dim span(V_Z)");

  const Polymatroid f = to_polymatroid(rep);
  const Polymatroid expected = principal_extension(f, z, Rat(alpha), newlabel);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> coefficient(0, rep.p - 1);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    LinearRep cand = rep;
    cand.ground = rep.ground.extended(newlabel);
    std::vector<Vec> picked;
    for (int t = 0; t < alpha; ++t) {
      Vec w(rep.dim, 0);
      for (const auto& bv : basis) {
        const std::uint32_t c = coefficient(rng);
        if (!c) continue;
        for (int i = 0; i < rep.dim; ++i)
          w[i] = static_cast<std::uint32_t>((w[i] + std::uint64_t(c) * bv[i]) % rep.p);
      }
      picked.push_back(std::move(w));
    }
    cand.vectors.push_back(picked);
    if (gf_rank(picked, cand.p, cand.dim) != alpha) continue;
    if (to_polymatroid(cand) == expected) return cand;
  }
  throw GroundError(
      "generic_principal_extension: no generic vector found within the retry "
      "budget; raise the field prime p");
}

LinearRep linear_copy(const LinearRep& rep, Mask a, Mask d) {
  if (a == 0) throw GroundError("linear_copy: empty copied set");
  if (d == 0) throw GroundError("linear_copy: empty over set");
  if (a & d) throw GroundError("linear_copy: copied set must avoid the over set");

  const std::uint32_t p = rep.p;
  // Adapted basis of span(V_N): first a basis S of span(V_D), then an
  // extension T from the remaining vectors.
  GfSpan adapted(p, rep.dim);
  std::vector<Vec> s_basis, t_basis;
  for (const auto& v : element_vectors(rep, d))
    if (adapted.insert(v)) s_basis.push_back(v);
  for (const auto& v : element_vectors(rep, rep.ground.full()))
    if (adapted.insert(v)) t_basis.push_back(v);
  const int k = static_cast<int>(s_basis.size());
  const int l = static_cast<int>(t_basis.size());

  // Coordinates of a vector in the (S, T) basis.
  GfSpan coords(p, rep.dim);
  for (const auto& v : s_basis) coords.insert(v);
  for (const auto& v : t_basis) coords.insert(v);
  auto coordinates = [&](const Vec& v) {
    auto c = coords.express(v);
    if (!c) throw GroundError("linear_copy: vector outside span(V_N)");
    return *c;  // length k + l
  };

  // New ambient: [b-block (k) | c-block (l) | c'-block (l)].
  const int ndim = k + 2 * l;
  LinearRep out = make_rep(p, ndim, rep.ground);
  for (int i = 0; i < rep.ground.size(); ++i) {
    for (const auto& v : rep.vectors[i]) {
      Vec c = coordinates(v);
      Vec w(ndim, 0);
      for (int j = 0; j < k + l; ++j) w[j] = c[j];
      out.vectors[i].push_back(std::move(w));
    }
  }
  GroundSet ground = rep.ground;
  for (int i = 0; i < rep.ground.size(); ++i) {
    if (!(a & rep.ground.singleton(i))) continue;
    ground = ground.extended(rep.ground.label(i) + "'");
    std::vector<Vec> mirrored;
    for (const auto& v : rep.vectors[i]) {
      Vec c = coordinates(v);
      Vec w(ndim, 0);
      for (int j = 0; j < k; ++j) w[j] = c[j];
      for (int j = 0; j < l; ++j) w[k + l + j] = c[k + j];
      mirrored.push_back(std::move(w));
    }
    out.vectors.push_back(std::move(mirrored));
  }
  out.ground = std::move(ground);
  out.validate();
  return out;
}

std::vector<Rat> ingleton_all(const Polymatroid& f) {
  if (f.ground.size() != 4) throw GroundError("ingleton_all: need exactly 4 elements");
  static const int splits[6][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2},
                                   {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}};
  std::vector<Rat> out;
  for (const auto& s : splits) {
    const Mask a = f.ground.singleton(s[0]), b = f.ground.singleton(s[1]);
    const Mask c = f.ground.singleton(s[2]), d = f.ground.singleton(s[3]);
    Rat val = -(f.value(a) + f.value(b) - f.value(a | b)) + f.cmi(a, b, c) +
              f.cmi(a, b, d) + (f.value(c) + f.value(d) - f.value(c | d));
    out.push_back(val);
  }
  return out;
}

}  // namespace entreg
