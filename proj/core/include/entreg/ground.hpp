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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace entreg {

// Non-empty subsets of a ground set are encoded as bit masks: bit i set
// means element i is in the subset. Coordinate arrays are indexed mask-1,
// so the empty set never has a stored coordinate.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }

class GroundError : public std::runtime_error {
 public:
  explicit GroundError(const std::string& what) : std::runtime_error(what) {}
};

// Ordered list of distinct element names. Element index = position.
class GroundSet {
 public:
  // Soft cap on the ground size. Iterated copies reach 14 elements; 26
  // leaves headroom while masks stay within one machine word.
  static int max_elements();
  static void set_max_elements(int n);

  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  // {"a", "b", ...} with n <= 26.
  static GroundSet letters(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  Mask full() const { return size() == 0 ? 0 : (Mask(1) << size()) - 1; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  // -1 when the label is unknown.
  int index_of(std::string_view label) const;
  bool has_label(std::string_view label) const { return index_of(label) >= 0; }
  Mask singleton(int i) const { return Mask(1) << i; }

  // Concatenation of the member labels in index order ("acd").
  std::string subset_name(Mask m) const;

  // Space separated member labels ("a c d").
  std::string subset_name_spaced(Mask m) const;

  // Parses a subset written as concatenated labels, greedy longest label
  // first, so multi-character labels such as "a1" work. Throws GroundError
  // on anything unparsable or on the empty string.
  Mask parse_subset(std::string_view token) const;

  // New ground set with one fresh label appended. Throws on clashes.
  GroundSet extended(const std::string& fresh) const;

  // Ground set of the members of m, keeping label order.
  GroundSet restricted(Mask m) const;

  bool operator==(const GroundSet& other) const { return labels_ == other.labels_; }
  bool operator!=(const GroundSet& other) const { return !(*this == other); }

  bool disjoint_labels(const GroundSet& other) const;

 private:
  std::vector<std::string> labels_;
};

// Iterates the non-empty subsets s of m in decreasing mask order.
template <typename F>
void for_each_subset(Mask m, F&& fn) {
  for (Mask s = m; s != 0; s = (s - 1) & m) fn(s);
}

}  // namespace entreg
