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

#include "entreg/catalog.hpp"

namespace entreg {

namespace {

GroundSet abcd() { return GroundSet::letters(4); }

GroundSet abcdz() { return GroundSet({"a", "b", "c", "d", "z"}); }

GroundSet abcxy() { return GroundSet({"a", "b", "c", "x", "y"}); }

// k [first pair, second pair | swapped] + k(k-1)/2 ((a,c|b)+(b,c|a))
//   + (a,b|z) + k ((a,z|b)+(b,z|a)) >= 0
InfoExpr fivek_expr(long k, bool alt) {
  GroundSet g = abcdz();
  const int a = 0, b = 1, c = 2, d = 3;
  const Mask A = g.singleton(0), B = g.singleton(1), C = g.singleton(2);
  const Mask Z = g.singleton(4);
  InfoExpr e(g);
  if (k > 0) {
    if (alt)
      e.ingleton(a, c, b, d, Rat(k));
    else
      e.ingleton(a, b, c, d, Rat(k));
    e.i_given(A, C, B, Rat(k * (k - 1) / 2));
    e.i_given(B, C, A, Rat(k * (k - 1) / 2));
  }
  e.i_given(A, B, Z, Rat(1));
  if (k > 0) {
    e.i_given(A, Z, B, Rat(k));
    e.i_given(B, Z, A, Rat(k));
  }
  return e;
}

// (a,x|c) + (a,b|x) + (a,b|y) + (c,y) + (b, x or y | ac) + (c, x or y | ab)
//   - (a,b) >= 0
InfoExpr i_iv3_expr(bool first_y, bool second_y) {
  GroundSet g = abcxy();
  const Mask A = g.singleton(0), B = g.singleton(1), C = g.singleton(2);
  const Mask X = g.singleton(3), Y = g.singleton(4);
  InfoExpr e(g);
  e.i_given(A, X, C);
  e.i_given(A, B, X);
  e.i_given(A, B, Y);
  e.i(C, Y);
  e.i_given(B, first_y ? Y : X, A | C);
  e.i_given(C, second_y ? Y : X, A | B);
  e.i(A, B, Rat(-1));
  return e;
}

}  // namespace

NamedInequality catalog_get(const std::string& name) {
  if (name == "zy" || name == "zy-strong-0.8") {
    GroundSet g = abcd();
    InfoExpr e(g);
    e.ingleton(0, 1, 2, 3);
    e.i_given(g.singleton(0), g.singleton(1), g.singleton(2),
              name == "zy" ? Rat(1) : Rat(4, 5));
    e.i_given(g.singleton(0), g.singleton(2), g.singleton(1));
    e.i_given(g.singleton(1), g.singleton(2), g.singleton(0));
    return {name, g, e,
            name == "zy" ? "Zhang-Yeung inequality"
                         : "Zhang-Yeung strengthened to 4/5 (a,b|c)"};
  }
  if (name == "mmrv") {
    GroundSet g = abcdz();
    InfoExpr e(g);
    e.ingleton(0, 1, 2, 3);
    e.i_given(g.singleton(0), g.singleton(1), g.singleton(4));
    e.i_given(g.singleton(0), g.singleton(4), g.singleton(1));
    e.i_given(g.singleton(1), g.singleton(4), g.singleton(0));
    e.i_given(g.singleton(2) | g.singleton(3), g.singleton(4),
              g.singleton(0) | g.singleton(1), Rat(3));
    return {name, g, e, "five-variable Shannon inequality, 12 submodular terms"};
  }
  if (name == "mmrv-pair-1" || name == "mmrv-pair-2") {
    GroundSet g = abcdz();
    InfoExpr e(g);
    if (name == "mmrv-pair-1")
      e.ingleton(0, 1, 2, 3);
    else
      e.ingleton(0, 2, 1, 3);
    e.i_given(g.singleton(0), g.singleton(1), g.singleton(4));
    e.i_given(g.singleton(0), g.singleton(4), g.singleton(1));
    e.i_given(g.singleton(1), g.singleton(4), g.singleton(0));
    return {name, g, e, "non-Shannon five-variable inequality"};
  }
  if (name == "ingleton") {
    GroundSet g = abcd();
    InfoExpr e(g);
    e.ingleton(0, 1, 2, 3);
    return {name, g, e, "Ingleton expression; non-negative on linear polymatroids"};
  }
  auto param = [&](const std::string& prefix) -> std::optional<long> {
    if (name.size() > prefix.size() + 2 && name.compare(0, prefix.size(), prefix) == 0 &&
        name[prefix.size()] == '(' && name.back() == ')') {
      try {
        return std::stol(name.substr(prefix.size() + 1,
                                     name.size() - prefix.size() - 2));
      } catch (...) {
        return std::nullopt;
      }
    }
    return std::nullopt;
  };
  if (auto k = param("fivek"))
    return {name, abcdz(), fivek_expr(*k, false), "parametric five-variable family"};
  if (auto k = param("fivek-alt"))
    return {name, abcdz(), fivek_expr(*k, true), "parametric family, swapped brackets"};
  if (name == "i-iv-3-xx" || name == "i-iv-3-xy" || name == "i-iv-3-yx" ||
      name == "i-iv-3-yy") {
    bool fy = name[7] == 'y';
    bool sy = name[8] == 'y';
    return {name, abcxy(), i_iv3_expr(fy, sy),
            "consequence of the <x,y||abc> maximum entropy instance"};
  }
  throw GroundError("catalog: unknown inequality '" + name + "'");
}

std::vector<std::string> catalog_list() {
  return {"zy",           "zy-strong-0.8", "mmrv",      "mmrv-pair-1",
          "mmrv-pair-2",  "fivek(k)",      "fivek-alt(k)", "i-iv-3-xx",
          "i-iv-3-xy",    "i-iv-3-yx",     "i-iv-3-yy", "ingleton"};
}

}  // namespace entreg
