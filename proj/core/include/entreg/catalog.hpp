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

#include <string>
#include <vector>

#include "entreg/expr.hpp"

namespace entreg {

// Registry of the named inequalities used by tests and the CLI.
struct NamedInequality {
  std::string name;
  GroundSet ground;
  InfoExpr expr;
  std::string note;

  LinearFunctional functional() const { return to_functional(expr, ground); }
};

// Known names:
//   zy                  the first non-Shannon 4-variable inequality
//   zy-strong-0.8       its strengthening with coefficient 4/5 on (a,b|c)
//   mmrv                the 5-variable Shannon inequality with 3(cd,z|ab)
//   mmrv-pair-1/2       the two non-Shannon 5-variable variants
//   fivek(k)            parametric family, first bracket choice [a,b,c,d]
//   fivek-alt(k)        second bracket choice [a,c,b,d]
//   i-iv-3-xx/xy/yx/yy  the <x,y||abc> consequences, bracket choices
//   ingleton            the Ingleton expression [a,b,c,d]
NamedInequality catalog_get(const std::string& name);

std::vector<std::string> catalog_list();

}  // namespace entreg
