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

#include "entreg/ground.hpp"

#include <algorithm>

#include "entreg/rational.hpp"

namespace entreg {

namespace {
int g_max_elements = 26;
}

int GroundSet::max_elements() { return g_max_elements; }

void GroundSet::set_max_elements(int n) {
  if (n < 1 || n > 31) throw GroundError("ground-set cap must be in [1, 31]");
  g_max_elements = n;
}

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (static_cast<int>(labels_.size()) > max_elements())
    throw GroundError("ground set exceeds the element cap (" +
                      std::to_string(max_elements()) + ")");
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw GroundError("empty element label");
    for (size_t j = i + 1; j < labels_.size(); ++j)
      if (labels_[i] == labels_[j])
        throw GroundError("duplicate element label '" + labels_[i] + "'");
  }
}

GroundSet GroundSet::letters(int n) {
  if (n < 1 || n > 26) throw GroundError("letters(n) needs 1 <= n <= 26");
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, char('a' + i)));
  return GroundSet(std::move(labels));
}

int GroundSet::index_of(std::string_view label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

std::string GroundSet::subset_name(Mask m) const {
  std::string out;
  for (int i = 0; i < size(); ++i)
    if (m & singleton(i)) out += labels_[i];
  return out;
}

std::string GroundSet::subset_name_spaced(Mask m) const {
  std::string out;
  for (int i = 0; i < size(); ++i)
    if (m & singleton(i)) {
      if (!out.empty()) out += ' ';
      out += labels_[i];
    }
  return out;
}

Mask GroundSet::parse_subset(std::string_view token) const {
  if (token.empty()) throw GroundError("empty subset token");
  // Greedy longest label match from the current position.
  Mask m = 0;
  size_t pos = 0;
  while (pos < token.size()) {
    int best = -1;
    size_t best_len = 0;
    for (int i = 0; i < size(); ++i) {
      const std::string& l = labels_[i];
      if (l.size() > best_len && token.compare(pos, l.size(), l) == 0) {
        best = i;
        best_len = l.size();
      }
    }
    if (best < 0)
      throw GroundError("cannot parse subset token '" + std::string(token) +
                        "' at position " + std::to_string(pos));
    m |= singleton(best);
    pos += best_len;
  }
  return m;
}

GroundSet GroundSet::extended(const std::string& fresh) const {
  if (has_label(fresh)) throw GroundError("label '" + fresh + "' already in use");
  std::vector<std::string> labels = labels_;
  labels.push_back(fresh);
  return GroundSet(std::move(labels));
}

GroundSet GroundSet::restricted(Mask m) const {
  std::vector<std::string> labels;
  for (int i = 0; i < size(); ++i)
    if (m & singleton(i)) labels.push_back(labels_[i]);
  return GroundSet(std::move(labels));
}

bool GroundSet::disjoint_labels(const GroundSet& other) const {
  for (const auto& l : other.labels_)
    if (has_label(l)) return false;
  return true;
}

Rat parse_rat(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw GroundError("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw GroundError("zero denominator in '" + text + "'");
    return Rat(num, den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg) head.erase(head.begin());
    if (head.empty()) head = "0";
    Int scale = 1;
    for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
    Int num = Int(head) * scale + (tail.empty() ? Int(0) : Int(tail));
    Rat r(num, scale);
    return neg ? Rat(-r) : r;
  }
  return Rat(Int(s));
}

std::string rat_string(const Rat& value) {
  Int num = numerator(value), den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::vector<Int> primitive_integer(const std::vector<Rat>& v) {
  Int l = 1;
  for (const Rat& r : v) l = lcm(l, denominator(r));
  std::vector<Int> out(v.size());
  Int g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    out[i] = numerator(v[i]) * (l / denominator(v[i]));
    g = gcd(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

std::vector<Rat> to_rat_vector(const std::vector<Int>& v) {
  std::vector<Rat> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

}  // namespace entreg
