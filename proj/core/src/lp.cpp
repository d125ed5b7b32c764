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

#include "entreg/lp.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace entreg {

void SparseRow::add(int var, const Rat& c) {
  if (c == 0) return;
  auto it = std::lower_bound(terms.begin(), terms.end(), var,
                             [](const auto& t, int v) { return t.first < v; });
  if (it != terms.end() && it->first == var) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  } else {
    terms.insert(it, {var, c});
  }
}

Rat SparseRow::get(int var) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), var,
                             [](const auto& t, int v) { return t.first < v; });
  if (it != terms.end() && it->first == var) return it->second;
  return Rat(0);
}

Rat SparseRow::dot(const std::vector<Rat>& x) const {
  Rat acc(0);
  for (const auto& [v, c] : terms) acc += c * x[v];
  return acc;
}

void SparseRow::scale(const Rat& s) {
  if (s == 0) {
    terms.clear();
    return;
  }
  for (auto& [v, c] : terms) c *= s;
}

void SparseRow::add_scaled(const SparseRow& other, const Rat& s) {
  if (s == 0) return;
  for (const auto& [v, c] : other.terms) add(v, c * s);
}

int ConstraintSystem::var_index(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int ConstraintSystem::add_var(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(vars.size());
  vars.push_back(name);
  index_[name] = id;
  return id;
}

void ConstraintSystem::add_row(SparseRow coeffs, Relation rel, std::string tag,
                               Rat constant) {
  rows.push_back(LinRow{std::move(coeffs), std::move(constant), rel, std::move(tag)});
}

// ---------------------------------------------------------------------------
// Exact revised simplex with explicit basis inverse.
//
//   min c.x   s.t.  A x = b,  x >= 0
//
// Bland's anti-cycling rule throughout: the entering column is the smallest
// eligible index, ratio ties leave the smallest basis index. Artificials are
// never allowed to re-enter; a basic artificial is additionally kicked out
// through a degenerate pivot whenever the entering direction touches its
// row, which keeps all artificials pinned at zero during phase 2.
// ---------------------------------------------------------------------------

namespace {

struct SparseCol {
  std::vector<std::pair<int, Rat>> entries;  // (row, value)
};

class Simplex {
 public:
  enum class Status { Optimal, Infeasible, Unbounded };

  struct Result {
    Status status = Status::Infeasible;
    std::vector<Rat> x;  // size n (structural variables only)
    std::vector<Rat> y;  // row duals; Infeasible: y.b > 0, y.A_j <= 0
    Rat objective = Rat(0);
  };

  Simplex(int m, int n, std::vector<SparseCol> cols, std::vector<Rat> b)
      : m_(m), n_(n), cols_(std::move(cols)), b_(std::move(b)) {
    flip_.assign(m_, false);
    for (int i = 0; i < m_; ++i)
      if (b_[i] < 0) {
        b_[i] = -b_[i];
        flip_[i] = true;
      }
    // flip the corresponding row of every column
    if (std::any_of(flip_.begin(), flip_.end(), [](bool f) { return f; }))
      for (auto& col : cols_)
        for (auto& [r, v] : col.entries)
          if (flip_[r]) v = -v;
    basis_.resize(m_);
    binv_.assign(m_, std::vector<Rat>(m_, Rat(0)));
    xb_ = b_;
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;  // artificial
      binv_[i][i] = Rat(1);
    }
  }

  Result solve(const std::vector<Rat>* phase2_cost) {
    Result res;
    // Phase 1: minimize the sum of artificials.
    std::vector<Rat> cost1(n_ + m_, Rat(0));
    for (int i = 0; i < m_; ++i) cost1[n_ + i] = Rat(1);
    run(cost1, /*allow_artificial_entering=*/false);
    Rat obj1(0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= n_) obj1 += xb_[i];
    if (obj1 > 0) {
      res.status = Status::Infeasible;
      res.objective = obj1;
      res.y = duals(cost1);
      unflip(res.y);
      return res;
    }
    if (phase2_cost != nullptr) {
      std::vector<Rat> cost2(n_ + m_, Rat(0));
      for (int j = 0; j < n_; ++j) cost2[j] = (*phase2_cost)[j];
      if (!run(cost2, /*allow_artificial_entering=*/false)) {
        res.status = Status::Unbounded;
        return res;
      }
      res.y = duals(cost2);
      unflip(res.y);
      Rat obj(0);
      for (int i = 0; i < m_; ++i)
        if (basis_[i] < n_) obj += cost2[basis_[i]] * xb_[i];
      res.objective = obj;
    } else {
      res.y = duals(cost1);
      unflip(res.y);
    }
    res.status = Status::Optimal;
    res.x.assign(n_, Rat(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) res.x[basis_[i]] = xb_[i];
    return res;
  }

 private:
  // y = c_B B^-1
  std::vector<Rat> duals(const std::vector<Rat>& cost) const {
    std::vector<Rat> y(m_, Rat(0));
    for (int i = 0; i < m_; ++i) {
      const Rat& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (int k = 0; k < m_; ++k)
        if (binv_[i][k] != 0) y[k] += cb * binv_[i][k];
    }
    return y;
  }

  void unflip(std::vector<Rat>& y) const {
    for (int i = 0; i < m_; ++i)
      if (flip_[i]) y[i] = -y[i];
  }

  Rat col_dot(const std::vector<Rat>& y, int j) const {
    if (j >= n_) return y[j - n_];  // artificial column e_i
    Rat acc(0);
    for (const auto& [r, v] : cols_[j].entries) acc += y[r] * v;
    return acc;
  }

  std::vector<Rat> ftran(int j) const {
    std::vector<Rat> d(m_, Rat(0));
    if (j >= n_) {
      for (int i = 0; i < m_; ++i) d[i] = binv_[i][j - n_];
      return d;
    }
    for (const auto& [r, v] : cols_[j].entries)
      for (int i = 0; i < m_; ++i)
        if (binv_[i][r] != 0) d[i] += binv_[i][r] * v;
    return d;
  }

  // Returns false on unbounded.
  bool run(const std::vector<Rat>& cost, bool allow_artificial_entering) {
    in_basis_.assign(n_ + m_, false);
    for (int i = 0; i < m_; ++i) in_basis_[basis_[i]] = true;
    while (true) {
      std::vector<Rat> y = duals(cost);
      int enter = -1;
      for (int j = 0; j < n_ + (allow_artificial_entering ? m_ : 0); ++j) {
        if (in_basis_[j] || banned_.count(j)) continue;
        Rat r = cost[j] - col_dot(y, j);
        if (r < 0) {
          enter = j;
          break;  // Bland: smallest index
        }
      }
      if (enter < 0) return true;
      std::vector<Rat> d = ftran(enter);
      int leave = -1;
      Rat best_ratio(0);
      for (int i = 0; i < m_; ++i) {
        bool artificial_pin = basis_[i] >= n_ && d[i] != 0;
        if (d[i] > 0 || artificial_pin) {
          Rat ratio = (d[i] > 0) ? Rat(xb_[i] / d[i]) : Rat(0);
          if (leave < 0 || ratio < best_ratio ||
              (ratio == best_ratio && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(enter, leave, d);
    }
  }

  void pivot(int enter, int leave, const std::vector<Rat>& d) {
    const Rat piv = d[leave];
    // Update B^-1 and x_B by row operations.
    Rat inv = Rat(1) / piv;
    for (int k = 0; k < m_; ++k) binv_[leave][k] *= inv;
    xb_[leave] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == leave || d[i] == 0) continue;
      const Rat f = d[i];
      for (int k = 0; k < m_; ++k)
        if (binv_[leave][k] != 0) binv_[i][k] -= f * binv_[leave][k];
      xb_[i] -= f * xb_[leave];
    }
    int out = basis_[leave];
    in_basis_[out] = false;
    if (out >= n_) banned_.insert(out);  // artificials never return
    basis_[leave] = enter;
    in_basis_[enter] = true;
  }

  int m_, n_;
  std::vector<SparseCol> cols_;
  std::vector<Rat> b_;
  std::vector<bool> flip_;
  std::vector<int> basis_;
  std::vector<std::vector<Rat>> binv_;
  std::vector<Rat> xb_;
  std::vector<bool> in_basis_;
  std::set<int> banned_;
};

// Assembles the column form of a ConstraintSystem:
//   rows of the system become equality rows (slack added on GEQ0 rows),
//   every variable is split into a positive and a negative part.
struct Assembled {
  int m = 0, n = 0;
  std::vector<SparseCol> cols;
  std::vector<Rat> b;
  // column meaning: j < V: vars[j]+; j < 2V: vars[j-V]-; else slack of rows
  // listed in slack_row
  std::vector<int> slack_row;
};

Assembled assemble(const ConstraintSystem& sys) {
  Assembled out;
  const int V = static_cast<int>(sys.vars.size());
  const int R = static_cast<int>(sys.rows.size());
  out.m = R;
  out.cols.resize(2 * V);
  out.b.resize(R);
  for (int r = 0; r < R; ++r) {
    const LinRow& row = sys.rows[r];
    out.b[r] = -row.constant;
    for (const auto& [v, c] : row.coeffs.terms) {
      out.cols[v].entries.push_back({r, c});
      out.cols[V + v].entries.push_back({r, Rat(-c)});
    }
    if (row.rel == Relation::GEQ0) {
      SparseCol slack;
      slack.entries.push_back({r, Rat(-1)});
      out.cols.push_back(std::move(slack));
      out.slack_row.push_back(r);
    }
  }
  out.n = static_cast<int>(out.cols.size());
  return out;
}

FarkasCertificate certificate_from_duals(const ConstraintSystem& sys,
                                         const std::vector<Rat>& y) {
  FarkasCertificate cert;
  for (size_t r = 0; r < sys.rows.size(); ++r)
    if (y[r] != 0) cert.multipliers.push_back({sys.rows[r].tag, y[r]});
  return cert;
}

}  // namespace

FeasibilityResult solve_feasibility(const ConstraintSystem& sys) {
  Assembled a = assemble(sys);
  Simplex sx(a.m, a.n, std::move(a.cols), std::move(a.b));
  auto res = sx.solve(nullptr);
  FeasibilityResult out;
  if (res.status == Simplex::Status::Infeasible) {
    out.status = LpStatus::Infeasible;
    out.certificate = certificate_from_duals(sys, res.y);
    if (!verify_infeasibility(sys, out.certificate))
      throw GroundError("internal: Farkas certificate failed re-verification");
    return out;
  }
  out.status = LpStatus::Feasible;
  const int V = static_cast<int>(sys.vars.size());
  out.point.resize(V);
  for (int v = 0; v < V; ++v) out.point[v] = res.x[v] - res.x[V + v];
  return out;
}

OptimizeResult minimize(const ConstraintSystem& sys, const SparseRow& objective) {
  Assembled a = assemble(sys);
  std::vector<Rat> cost(a.n, Rat(0));
  const int V = static_cast<int>(sys.vars.size());
  for (const auto& [v, c] : objective.terms) {
    cost[v] = c;
    cost[V + v] = -c;
  }
  Simplex sx(a.m, a.n, std::move(a.cols), std::move(a.b));
  auto res = sx.solve(&cost);
  OptimizeResult out;
  if (res.status == Simplex::Status::Infeasible) {
    out.status = LpStatus::Infeasible;
    out.certificate = certificate_from_duals(sys, res.y);
    return out;
  }
  if (res.status == Simplex::Status::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Feasible;
  out.point.resize(V);
  for (int v = 0; v < V; ++v) out.point[v] = res.x[v] - res.x[V + v];
  out.value = res.objective;
  return out;
}

ImpliesResult implies(const ConstraintSystem& sys, const SparseRow& target) {
  for (const auto& row : sys.rows)
    if (row.constant != 0)
      throw GroundError("implies: system must be homogeneous");

  // Transposed system: find multipliers h with sum h_r row_r = target,
  // h >= 0 on inequality rows.
  const int V = static_cast<int>(sys.vars.size());
  const int R = static_cast<int>(sys.rows.size());
  std::vector<SparseCol> cols;
  cols.reserve(R);
  std::vector<int> col_row;        // column -> row index
  std::vector<bool> col_negated;   // free rows contribute a +/- pair
  for (int r = 0; r < R; ++r) {
    SparseCol col;
    for (const auto& [v, c] : sys.rows[r].coeffs.terms) col.entries.push_back({v, c});
    cols.push_back(col);
    col_row.push_back(r);
    col_negated.push_back(false);
    if (sys.rows[r].rel == Relation::EQ0) {
      for (auto& [v, c] : col.entries) c = -c;
      cols.push_back(std::move(col));
      col_row.push_back(r);
      col_negated.push_back(true);
    }
  }
  std::vector<Rat> b(V, Rat(0));
  for (const auto& [v, c] : target.terms) b[v] = c;

  Simplex sx(V, static_cast<int>(cols.size()), std::move(cols), std::move(b));
  auto res = sx.solve(nullptr);
  ImpliesResult out;
  if (res.status == Simplex::Status::Optimal) {
    out.yes = true;
    std::vector<Rat> h(R, Rat(0));
    for (size_t j = 0; j < col_row.size(); ++j)
      h[col_row[j]] += col_negated[j] ? -res.x[j] : res.x[j];
    for (int r = 0; r < R; ++r)
      if (h[r] != 0) out.certificate.multipliers.push_back({sys.rows[r].tag, h[r]});
    if (!verify_implication(sys, target, out.certificate))
      throw GroundError("internal: implication certificate failed re-verification");
    return out;
  }
  // Farkas alternative: y with y.row_r <= 0 (rows), y.target > 0; the
  // counterexample is x = -y.
  out.yes = false;
  out.counterexample.resize(V);
  for (int v = 0; v < V; ++v) out.counterexample[v] = -res.y[v];
  for (const auto& row : sys.rows) {
    Rat val = row.coeffs.dot(out.counterexample);
    bool ok = row.rel == Relation::EQ0 ? val == 0 : val >= 0;
    if (!ok) throw GroundError("internal: implies counterexample failed verification");
  }
  {
    Rat val(0);
    for (const auto& [v, c] : target.terms) val += c * out.counterexample[v];
    if (val >= 0)
      throw GroundError("internal: implies counterexample does not violate target");
  }
  return out;
}

bool verify_infeasibility(const ConstraintSystem& sys, const FarkasCertificate& cert) {
  std::map<std::string, const LinRow*> by_tag;
  for (const auto& row : sys.rows) by_tag.emplace(row.tag, &row);
  SparseRow sum;
  Rat constant(0);
  for (const auto& [tag, mult] : cert.multipliers) {
    auto it = by_tag.find(tag);
    if (it == by_tag.end()) return false;
    if (it->second->rel == Relation::GEQ0 && mult < 0) return false;
    sum.add_scaled(it->second->coeffs, mult);
    constant += mult * it->second->constant;
  }
  return sum.empty() && constant < 0;
}

bool verify_implication(const ConstraintSystem& sys, const SparseRow& target,
                        const FarkasCertificate& cert) {
  std::map<std::string, const LinRow*> by_tag;
  for (const auto& row : sys.rows) by_tag.emplace(row.tag, &row);
  SparseRow sum;
  for (const auto& [tag, mult] : cert.multipliers) {
    auto it = by_tag.find(tag);
    if (it == by_tag.end()) return false;
    if (it->second->rel == Relation::GEQ0 && mult < 0) return false;
    sum.add_scaled(it->second->coeffs, mult);
  }
  sum.add_scaled(target, Rat(-1));
  return sum.empty();
}

ConstraintSystem shannon_system(const GroundSet& ground, bool submodular_only) {
  ConstraintSystem sys;
  for (Mask m = 1; m <= ground.full(); ++m) sys.add_var(ground.subset_name(m));
  sys.num_main = static_cast<int>(sys.vars.size());
  for (const auto& ins : shannon_instances(ground)) {
    if (submodular_only && ins.monotone) continue;
    sys.add_row(functional_row(ins.fn), Relation::GEQ0, ins.name);
  }
  return sys;
}

SparseRow functional_row(const LinearFunctional& e) {
  SparseRow row;
  for (Mask m = 1; m <= e.ground.full(); ++m)
    if (e.at(m) != 0) row.add(static_cast<int>(m) - 1, e.at(m));
  return row;
}

SparseRow functional_row_named(const LinearFunctional& e, const ConstraintSystem& sys,
                               const std::string& prefix) {
  SparseRow row;
  for (Mask m = 1; m <= e.ground.full(); ++m) {
    if (e.at(m) == 0) continue;
    int v = sys.var_index(prefix + e.ground.subset_name(m));
    if (v < 0)
      throw GroundError("functional references unknown variable '" +
                        e.ground.subset_name(m) + "'");
    row.add(v, e.at(m));
  }
  return row;
}

LinearFunctional row_functional(const SparseRow& row, const GroundSet& ground) {
  LinearFunctional e(ground);
  for (const auto& [v, c] : row.terms) e.at(static_cast<Mask>(v) + 1) = c;
  return e;
}

DecomposeResult shannon_decompose(const LinearFunctional& e, const GroundSet& ground,
                                  const std::vector<ShannonInstance>* basis) {
  std::vector<ShannonInstance> own;
  if (basis == nullptr) {
    own = shannon_instances(ground);
    basis = &own;
  }
  // Variables: one weight per basis functional, w >= 0 (via GEQ0 rows);
  // constraints: per subset coordinate the weighted sum equals e.
  ConstraintSystem sys;
  for (size_t i = 0; i < basis->size(); ++i)
    sys.add_var("w:" + (*basis)[i].name);
  sys.num_main = static_cast<int>(sys.vars.size());
  for (size_t i = 0; i < basis->size(); ++i) {
    SparseRow r;
    r.add(static_cast<int>(i), Rat(1));
    sys.add_row(std::move(r), Relation::GEQ0, "w>=0:" + (*basis)[i].name);
  }
  for (Mask m = 1; m <= ground.full(); ++m) {
    SparseRow r;
    for (size_t i = 0; i < basis->size(); ++i) {
      const Rat& c = (*basis)[i].fn.at(m);
      if (c != 0) r.add(static_cast<int>(i), c);
    }
    sys.add_row(std::move(r), Relation::EQ0, "coord:" + ground.subset_name(m),
                Rat(-e.at(m)));
  }
  SparseRow obj;
  for (size_t i = 0; i < basis->size(); ++i) obj.add(static_cast<int>(i), Rat(1));
  OptimizeResult res = minimize(sys, obj);
  DecomposeResult out;
  if (res.status != LpStatus::Feasible) return out;
  out.ok = true;
  out.total = res.value;
  for (size_t i = 0; i < basis->size(); ++i)
    if (res.point[i] != 0) out.weights.push_back({(*basis)[i].name, res.point[i]});
  return out;
}

}  // namespace entreg
