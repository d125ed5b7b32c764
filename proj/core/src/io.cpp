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

#include "entreg/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace entreg {

namespace {

struct Lines {
  std::string file;
  std::vector<std::pair<int, std::string>> content;  // (line number, text)

  explicit Lines(std::istream& in, const std::string& filename) : file(filename) {
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      // Trim.
      size_t b = line.find_first_not_of(" \t\r");
      size_t e = line.find_last_not_of(" \t\r");
      if (b == std::string::npos) continue;
      content.push_back({no, line.substr(b, e - b + 1)});
    }
  }
};

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream iss(s);
  std::vector<std::string> out;
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

// "key: rest" -> rest, or nullopt.
std::optional<std::string> keyed(const std::string& line, const std::string& key) {
  if (line.size() > key.size() + 1 && line.compare(0, key.size(), key) == 0 &&
      line[key.size()] == ':')
    return line.substr(key.size() + 1);
  return std::nullopt;
}

GroundSet parse_base(const Lines& lines, size_t& idx) {
  for (; idx < lines.content.size(); ++idx) {
    const auto& [no, line] = lines.content[idx];
    if (auto rest = keyed(line, "base")) {
      ++idx;
      auto labels = split_ws(*rest);
      if (labels.empty()) throw ParseError(lines.file, no, "empty base line");
      return GroundSet(labels);
    }
    throw ParseError(lines.file, no, "expected 'base: ...' first");
  }
  throw ParseError(lines.file, 0, "missing 'base:' line");
}

}  // namespace

Polymatroid read_polymatroid(std::istream& in, const std::string& filename) {
  Lines lines(in, filename);
  size_t idx = 0;
  GroundSet ground = parse_base(lines, idx);
  Polymatroid f(ground);
  std::vector<bool> seen(ground.full(), false);
  for (; idx < lines.content.size(); ++idx) {
    const auto& [no, line] = lines.content[idx];
    auto toks = split_ws(line);
    if (toks.size() != 2)
      throw ParseError(filename, no, "expected '<subset> <rational>'");
    Mask m;
    try {
      m = ground.parse_subset(toks[0]);
    } catch (const GroundError& err) {
      throw ParseError(filename, no, err.what());
    }
    if (seen[m - 1]) throw ParseError(filename, no, "duplicate subset " + toks[0]);
    seen[m - 1] = true;
    try {
      f.at(m) = parse_rat(toks[1]);
    } catch (const std::exception& err) {
      throw ParseError(filename, no, std::string("bad rational: ") + err.what());
    }
  }
  for (Mask m = 1; m <= ground.full(); ++m)
    if (!seen[m - 1])
      throw ParseError(filename, 0, "missing subset " + ground.subset_name(m));
  return f;
}

void write_polymatroid(std::ostream& out, const Polymatroid& f) {
  out << "base:";
  for (const auto& l : f.ground.labels()) out << ' ' << l;
  out << '\n';
  for (Mask m = 1; m <= f.ground.full(); ++m)
    out << f.ground.subset_name(m) << ' ' << rat_string(f.at(m)) << '\n';
}

LinearFunctional read_functional(std::istream& in, const std::string& filename) {
  Lines lines(in, filename);
  size_t idx = 0;
  GroundSet ground = parse_base(lines, idx);
  LinearFunctional e(ground);
  for (; idx < lines.content.size(); ++idx) {
    const auto& [no, line] = lines.content[idx];
    auto toks = split_ws(line);
    if (toks.size() != 2)
      throw ParseError(filename, no, "expected '<subset> <rational>'");
    try {
      e.at(ground.parse_subset(toks[0])) = parse_rat(toks[1]);
    } catch (const std::exception& err) {
      throw ParseError(filename, no, err.what());
    }
  }
  return e;
}

void write_functional(std::ostream& out, const LinearFunctional& e) {
  out << "base:";
  for (const auto& l : e.ground.labels()) out << ' ' << l;
  out << '\n';
  for (Mask m = 1; m <= e.ground.full(); ++m)
    if (e.at(m) != 0)
      out << e.ground.subset_name(m) << ' ' << rat_string(e.at(m)) << '\n';
}

JointDistribution read_distribution(std::istream& in, const std::string& filename) {
  Lines lines(in, filename);
  size_t idx = 0;
  GroundSet ground = parse_base(lines, idx);
  if (idx >= lines.content.size())
    throw ParseError(filename, 0, "missing 'alphabets:' line");
  auto [no0, line0] = lines.content[idx];
  auto rest = keyed(line0, "alphabets");
  if (!rest) throw ParseError(filename, no0, "expected 'alphabets: ...'");
  ++idx;
  std::vector<int> alphabet;
  for (const auto& tok : split_ws(*rest)) alphabet.push_back(std::stoi(tok));
  if (static_cast<int>(alphabet.size()) != ground.size())
    throw ParseError(filename, no0, "one alphabet size per element required");
  JointDistribution d = make_distribution(ground, alphabet);
  for (; idx < lines.content.size(); ++idx) {
    const auto& [no, line] = lines.content[idx];
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] != "mass" ||
        static_cast<int>(toks.size()) != ground.size() + 2)
      throw ParseError(filename, no, "expected 'mass <t1> ... <tn> <float>'");
    std::vector<int> tuple(ground.size());
    for (int i = 0; i < ground.size(); ++i) {
      tuple[i] = std::stoi(toks[1 + i]);
      if (tuple[i] < 0 || tuple[i] >= alphabet[i])
        throw ParseError(filename, no, "tuple entry out of alphabet range");
    }
    d.mass[d.index_of(tuple)] += std::stod(toks.back());
  }
  d.validate(1e-9);
  return d;
}

void write_profile(std::ostream& out, const EntropyProfile& p) {
  out << "base:";
  for (const auto& l : p.ground.labels()) out << ' ' << l;
  out << '\n';
  out << std::setprecision(15);
  for (Mask m = 1; m <= p.ground.full(); ++m)
    out << p.ground.subset_name(m) << ' ' << p.h[m - 1] << '\n';
}

LinearRep read_rep(std::istream& in, const std::string& filename) {
  Lines lines(in, filename);
  std::uint32_t p = 0;
  int dim = -1;
  std::vector<std::string> labels;
  std::vector<std::vector<std::vector<std::uint32_t>>> vecs;
  for (const auto& [no, line] : lines.content) {
    if (auto rest = keyed(line, "prime")) {
      p = static_cast<std::uint32_t>(std::stoul(*rest));
      continue;
    }
    if (auto rest = keyed(line, "dim")) {
      dim = std::stoi(*rest);
      continue;
    }
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] != "vec" || dim < 0 || p == 0)
      throw ParseError(filename, no, "expected 'prime:', 'dim:', then 'vec' lines");
    if (static_cast<int>(toks.size()) != dim + 2)
      throw ParseError(filename, no, "vec needs an element and dim field values");
    const std::string& label = toks[1];
    int i = -1;
    for (size_t k = 0; k < labels.size(); ++k)
      if (labels[k] == label) i = static_cast<int>(k);
    if (i < 0) {
      i = static_cast<int>(labels.size());
      labels.push_back(label);
      vecs.emplace_back();
    }
    std::vector<std::uint32_t> v(dim);
    for (int k = 0; k < dim; ++k)
      v[k] = static_cast<std::uint32_t>(std::stoul(toks[2 + k]) % p);
    vecs[i].push_back(std::move(v));
  }
  if (p == 0 || dim < 0 || labels.empty())
    throw ParseError(filename, 0, "incomplete representation file");
  LinearRep rep = make_rep(p, dim, GroundSet(labels));
  rep.vectors = std::move(vecs);
  rep.validate();
  return rep;
}

CopySequence read_copy_sequence(std::istream& in, const std::string& filename) {
  Lines lines(in, filename);
  size_t idx = 0;
  CopySequence seq;
  seq.ground0 = parse_base(lines, idx);

  // Join the remaining lines and split on ';'.
  std::string body;
  int first_line = 0;
  for (; idx < lines.content.size(); ++idx) {
    if (!first_line) first_line = lines.content[idx].first;
    body += lines.content[idx].second;
    body += ';';
  }
  GroundSet ground = seq.ground0;
  std::istringstream steps(body);
  std::string chunk;
  while (std::getline(steps, chunk, ';')) {
    if (split_ws(chunk).empty()) continue;
    auto colon = chunk.find(':');
    if (colon == std::string::npos)
      throw ParseError(filename, first_line, "copy step needs ': over-set'");
    std::string head = chunk.substr(0, colon);
    std::string over_part = chunk.substr(colon + 1);
    auto eq = head.find('=');
    std::vector<std::string> new_labels;
    std::string copied_part;
    if (eq == std::string::npos) {
      copied_part = head;
    } else {
      new_labels = split_ws(head.substr(0, eq));
      copied_part = head.substr(eq + 1);
    }
    CopyStep step;
    auto parse_list = [&](const std::string& text) {
      Mask m = 0;
      for (const auto& tok : split_ws(text)) {
        std::string t = tok;
        // allow comma separated tokens
        std::replace(t.begin(), t.end(), ',', ' ');
        for (const auto& sub : split_ws(t)) m |= ground.parse_subset(sub);
      }
      return m;
    };
    try {
      step.copied = parse_list(copied_part);
      step.over = parse_list(over_part);
    } catch (const GroundError& err) {
      throw ParseError(filename, first_line, err.what());
    }
    if (!new_labels.empty()) {
      // Pair fresh labels with the copied elements in element order.
      std::vector<int> elems;
      for (int i = 0; i < ground.size(); ++i)
        if (step.copied & ground.singleton(i)) elems.push_back(i);
      if (new_labels.size() != elems.size())
        throw ParseError(filename, first_line,
                         "naming must list one fresh label per copied element");
      for (size_t i = 0; i < elems.size(); ++i)
        step.naming.push_back({elems[i], new_labels[i]});
    }
    // Track the ground like the builder will (auto prime naming).
    GroundSet next = ground;
    size_t named = 0;
    for (int i = 0; i < ground.size(); ++i) {
      if (!(step.copied & ground.singleton(i))) continue;
      std::string label;
      if (!step.naming.empty())
        label = step.naming[named++].second;
      else {
        label = ground.label(i) + "'";
        while (next.has_label(label)) label += "'";
      }
      next = next.extended(label);
    }
    ground = next;
    seq.steps.push_back(std::move(step));
  }
  if (seq.steps.empty()) throw ParseError(filename, 0, "no copy steps");
  return seq;
}

MaxeSpec read_maxe_spec(std::istream& in, const std::string& filename) {
  Lines lines(in, filename);
  size_t idx = 0;
  MaxeSpec spec;
  spec.ground = parse_base(lines, idx);
  for (; idx < lines.content.size(); ++idx) {
    const auto& [no, line] = lines.content[idx];
    if (auto rest = keyed(line, "fix")) {
      std::string r = *rest;
      std::replace(r.begin(), r.end(), ',', ' ');
      for (const auto& tok : split_ws(r)) {
        try {
          spec.family.push_back(spec.ground.parse_subset(tok));
        } catch (const GroundError& err) {
          throw ParseError(filename, no, err.what());
        }
      }
      continue;
    }
    if (auto rest = keyed(line, "indep")) {
      // X,Y|D
      auto bar = rest->find('|');
      std::string xy = bar == std::string::npos ? *rest : rest->substr(0, bar);
      std::string dd = bar == std::string::npos ? "" : rest->substr(bar + 1);
      auto comma = xy.find(',');
      if (comma == std::string::npos)
        throw ParseError(filename, no, "indep needs 'X,Y|D'");
      ThreePartition p;
      try {
        p.x = spec.ground.parse_subset(split_ws(xy.substr(0, comma)).at(0));
        p.y = spec.ground.parse_subset(split_ws(xy.substr(comma + 1)).at(0));
        auto dtoks = split_ws(dd);
        p.d = dtoks.empty() ? 0 : spec.ground.parse_subset(dtoks.at(0));
      } catch (const std::exception& err) {
        throw ParseError(filename, no, err.what());
      }
      if ((p.x | p.y | p.d) != spec.ground.full() || (p.x & p.y) || (p.x & p.d) ||
          (p.y & p.d) || !p.x || !p.y)
        throw ParseError(filename, no, "indep parts must 3-partition the base");
      spec.partitions.push_back(p);
      continue;
    }
    throw ParseError(filename, no, "expected 'fix:' or 'indep:' line");
  }
  if (spec.family.empty() && spec.partitions.empty())
    throw ParseError(filename, 0, "empty maxe specification");
  return spec;
}

GmaxeSpec read_gmaxe_spec(std::istream& in, const std::string& filename) {
  Lines lines(in, filename);
  size_t idx = 0;
  GmaxeSpec spec;
  spec.small = parse_base(lines, idx);
  std::vector<std::string> big_labels;
  std::vector<int> phi;
  std::vector<std::pair<int, std::string>> transversal_lines;
  for (; idx < lines.content.size(); ++idx) {
    const auto& [no, line] = lines.content[idx];
    if (auto rest = keyed(line, "map")) {
      for (const auto& tok : split_ws(*rest)) {
        auto arrow = tok.find("->");
        if (arrow == std::string::npos)
          throw ParseError(filename, no, "map entries look like m->n");
        std::string mlabel = tok.substr(0, arrow), nlabel = tok.substr(arrow + 2);
        int tgt = spec.small.index_of(nlabel);
        if (tgt < 0) throw ParseError(filename, no, "unknown target " + nlabel);
        big_labels.push_back(mlabel);
        phi.push_back(tgt);
      }
      continue;
    }
    if (auto rest = keyed(line, "transversal")) {
      transversal_lines.push_back({no, *rest});
      continue;
    }
    throw ParseError(filename, no, "expected 'map:' or 'transversal:' line");
  }
  try {
    spec.big = GroundSet(big_labels);
  } catch (const GroundError& err) {
    throw ParseError(filename, 0, err.what());
  }
  spec.phi = std::move(phi);
  for (const auto& [no, text] : transversal_lines) {
    Mask t = 0;
    for (const auto& tok : split_ws(text)) {
      try {
        t |= spec.big.parse_subset(tok);
      } catch (const GroundError& err) {
        throw ParseError(filename, no, err.what());
      }
    }
    spec.transversals.push_back(t);
  }
  spec.validate();
  return spec;
}

void write_certificate(std::ostream& out, const FarkasCertificate& cert,
                       bool verified) {
  for (const auto& [tag, weight] : cert.multipliers)
    out << tag << ' ' << rat_string(weight) << '\n';
  out << "check: " << (verified ? "OK" : "FAILED") << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GroundError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace entreg
