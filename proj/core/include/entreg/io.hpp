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

#include <iosfwd>
#include <string>

#include "entreg/derive.hpp"
#include "entreg/dist.hpp"
#include "entreg/linear.hpp"
#include "entreg/polymatroid.hpp"

namespace entreg {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, int line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what) {}
};

// Polymatroid text format, one per file:
//   base: a b c d
//   a 2
//   acd 7/2
// '#' starts a comment; every non-empty subset must be present.
Polymatroid read_polymatroid(std::istream& in, const std::string& filename = "<input>");
void write_polymatroid(std::ostream& out, const Polymatroid& f);

// Same layout; omitted subsets mean coefficient zero, values may be
// negative.
LinearFunctional read_functional(std::istream& in,
                                 const std::string& filename = "<input>");
void write_functional(std::ostream& out, const LinearFunctional& e);

// Distribution format:
//   base: a b c
//   alphabets: 3 3 3
//   mass 0 1 2 0.125
JointDistribution read_distribution(std::istream& in,
                                    const std::string& filename = "<input>");
void write_profile(std::ostream& out, const EntropyProfile& p);

// Linear representation:
//   prime: 3
//   dim: 2
//   vec a 1 0
LinearRep read_rep(std::istream& in, const std::string& filename = "<input>");

// Copy sequence:
//   base: a b c d
//   c' = c : a b
// or several steps separated by ';' or newlines, full-copy naming as in
//   c2 d2 = c1 d1 : a1 b1
// A step "A : D" without '=' auto-names the mirrors with a prime suffix.
CopySequence read_copy_sequence(std::istream& in,
                                const std::string& filename = "<input>");

// Maximum entropy spec:
//   base: a b c d z
//   fix: abcd, abz
//   indep: cd,z|ab
MaxeSpec read_maxe_spec(std::istream& in, const std::string& filename = "<input>");

// Generalized instance:
//   base: a b c d
//   map: a1->a a2->a b1->b ...
//   transversal: a1 b1 c1 d1
GmaxeSpec read_gmaxe_spec(std::istream& in, const std::string& filename = "<input>");

// Certificate: one "tag weight" line per row, then "check: OK".
void write_certificate(std::ostream& out, const FarkasCertificate& cert,
                       bool verified);

std::string read_file(const std::string& path);

}  // namespace entreg
