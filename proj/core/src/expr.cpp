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

#include "entreg/expr.hpp"

#include <cctype>

namespace entreg {

namespace {

void check_subset(const GroundSet& g, Mask m, const char* what) {
  if (m > g.full())
    throw GroundError(std::string(what) + ": argument outside the ground set");
}

// The four (mask, sign) pairs of one information measure, with the Ingleton
// expression expanded separately.
template <typename Sink>
void expand_term(const InfoExpr::Term& t, Sink&& sink) {
  using Kind = InfoExpr::Kind;
  switch (t.kind) {
    case Kind::Entropy:
      sink(t.a, 1);
      break;
    case Kind::CondEntropy:  // H(A||C) = H(AC) - H(C)
      sink(t.a | t.c, 1);
      sink(t.c, -1);
      break;
    case Kind::MutualInfo:  // I(A,B) = H(A) + H(B) - H(AB)
      sink(t.a, 1);
      sink(t.b, 1);
      sink(t.a | t.b, -1);
      break;
    case Kind::CondMutualInfo:  // I(A,B||C) = H(AC) + H(BC) - H(C) - H(ABC)
      sink(t.a | t.c, 1);
      sink(t.b | t.c, 1);
      sink(t.c, -1);
      sink(t.a | t.b | t.c, -1);
      break;
    case Kind::Ingleton: {
      // -I(a,b) + I(a,b|c) + I(a,b|d) + I(c,d)
      sink(t.a, -1);
      sink(t.b, -1);
      sink(t.a | t.b, 1);
      sink(t.a | t.c, 1);
      sink(t.b | t.c, 1);
      sink(t.c, -1);
      sink(t.a | t.b | t.c, -1);
      sink(t.a | t.d, 1);
      sink(t.b | t.d, 1);
      sink(t.d, -1);
      sink(t.a | t.b | t.d, -1);
      sink(t.c, 1);
      sink(t.d, 1);
      sink(t.c | t.d, -1);
      break;
    }
  }
}

}  // namespace

InfoExpr& InfoExpr::h(Mask a, Rat coeff) {
  check_subset(ground, a, "H");
  if (a == 0) throw GroundError("H: empty argument");
  terms.push_back({std::move(coeff), Kind::Entropy, a, 0, 0, 0});
  return *this;
}

InfoExpr& InfoExpr::h_given(Mask a, Mask c, Rat coeff) {
  check_subset(ground, a | c, "H(.|.)");
  if (a == 0) throw GroundError("H(.|.): empty argument");
  terms.push_back({std::move(coeff), Kind::CondEntropy, a, 0, c, 0});
  return *this;
}

InfoExpr& InfoExpr::i(Mask a, Mask b, Rat coeff) {
  check_subset(ground, a | b, "I");
  if (a == 0 || b == 0) throw GroundError("I: empty argument");
  terms.push_back({std::move(coeff), Kind::MutualInfo, a, b, 0, 0});
  return *this;
}

InfoExpr& InfoExpr::i_given(Mask a, Mask b, Mask c, Rat coeff) {
  check_subset(ground, a | b | c, "I(.,.|.)");
  if (a == 0 || b == 0) throw GroundError("I(.,.|.): empty argument");
  terms.push_back({std::move(coeff), Kind::CondMutualInfo, a, b, c, 0});
  return *this;
}

InfoExpr& InfoExpr::ingleton(int a, int b, int c, int d, Rat coeff) {
  int n = ground.size();
  if (a < 0 || b < 0 || c < 0 || d < 0 || a >= n || b >= n || c >= n || d >= n)
    throw GroundError("ingleton: element out of range");
  if (a == b || a == c || a == d || b == c || b == d || c == d)
    throw GroundError("ingleton: arguments must be four distinct singletons");
  terms.push_back({std::move(coeff), Kind::Ingleton, ground.singleton(a),
                   ground.singleton(b), ground.singleton(c), ground.singleton(d)});
  return *this;
}

Rat eval(const InfoExpr& expr, const Polymatroid& f) {
  if (expr.ground != f.ground)
    throw GroundError("eval: expression and rank vector have different grounds");
  Rat acc(0);
  for (const auto& t : expr.terms)
    expand_term(t, [&](Mask m, int sign) { acc += t.coeff * sign * f.value(m); });
  return acc;
}

double eval(const InfoExpr& expr, const std::vector<double>& h) {
  double acc = 0;
  for (const auto& t : expr.terms)
    expand_term(t, [&](Mask m, int sign) {
      if (m != 0) acc += t.coeff.convert_to<double>() * sign * h[m - 1];
    });
  return acc;
}

LinearFunctional to_functional(const InfoExpr& expr, const GroundSet& ground) {
  if (expr.ground != ground)
    throw GroundError("to_functional: ground mismatch");
  LinearFunctional e(ground);
  for (const auto& t : expr.terms)
    expand_term(t, [&](Mask m, int sign) { e.add(m, t.coeff * sign); });
  return e;
}

namespace {

struct Parser {
  const std::string& text;
  const GroundSet& ground;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw GroundError("expression parse error at position " + std::to_string(pos) +
                      ": " + msg);
  }

  Mask parse_set() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '_' ||
          c == ' ')
        ++pos;
      else
        break;
    }
    std::string token = text.substr(start, pos - start);
    while (!token.empty() && token.back() == ' ') token.pop_back();
    if (token.empty()) fail("expected a subset");
    // Accept both concatenated and space separated labels.
    std::string compact;
    for (char c : token)
      if (c != ' ') compact += c;
    return ground.parse_subset(compact);
  }

  Rat parse_coeff() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '/')
        ++pos;
      else
        break;
    }
    if (pos == start) fail("expected a number");
    return parse_rat(text.substr(start, pos - start));
  }

  void parse_atom(InfoExpr& expr, const Rat& coeff) {
    skip_ws();
    if (pos >= text.size()) fail("expected a term");
    char c = text[pos];
    if (c == 'H' || c == 'h') {
      ++pos;
      if (!eat('(')) fail("expected '(' after H");
      Mask a = parse_set();
      Mask cd = 0;
      if (eat('|')) cd = parse_set();
      if (!eat(')')) fail("expected ')'");
      if (cd)
        expr.h_given(a, cd, coeff);
      else
        expr.h(a, coeff);
      return;
    }
    if (c == 'I' || c == 'i') {
      ++pos;
      if (!eat('(')) fail("expected '(' after I");
      Mask a = parse_set();
      if (!eat(',') && !eat(';')) fail("expected ',' in I(...)");
      Mask b = parse_set();
      Mask cd = 0;
      if (eat('|')) cd = parse_set();
      if (!eat(')')) fail("expected ')'");
      if (cd)
        expr.i_given(a, b, cd, coeff);
      else
        expr.i(a, b, coeff);
      return;
    }
    if (c == '[') {
      ++pos;
      Mask parts[4];
      for (int k = 0; k < 4; ++k) {
        parts[k] = parse_set();
        if (k < 3 && !eat(',')) fail("expected ',' in [.,.,.,.]");
      }
      if (!eat(']')) fail("expected ']'");
      int idx[4];
      for (int k = 0; k < 4; ++k) {
        if (popcount(parts[k]) != 1) fail("Ingleton arguments must be singletons");
        idx[k] = __builtin_ctz(parts[k]);
      }
      expr.ingleton(idx[0], idx[1], idx[2], idx[3], coeff);
      return;
    }
    if (c == '(') {
      // (A,B|C) is shorthand for I(A,B|C); (A,B) for I(A,B).
      ++pos;
      Mask a = parse_set();
      if (!eat(',') && !eat(';')) fail("expected ',' in (...)");
      Mask b = parse_set();
      Mask cd = 0;
      if (eat('|')) cd = parse_set();
      if (!eat(')')) fail("expected ')'");
      if (cd)
        expr.i_given(a, b, cd, coeff);
      else
        expr.i(a, b, coeff);
      return;
    }
    fail("unrecognized term");
  }
};

}  // namespace

InfoExpr parse_expr(const std::string& text, const GroundSet& ground) {
  InfoExpr expr(ground);
  Parser p{text, ground};
  bool first = true;
  while (true) {
    p.skip_ws();
    if (p.pos >= text.size()) break;
    Rat sign(1);
    if (p.eat('+')) {
      sign = 1;
    } else if (p.eat('-')) {
      sign = -1;
    } else if (!first) {
      p.fail("expected '+' or '-'");
    }
    first = false;
    Rat coeff = sign;
    char c = p.peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      coeff = sign * p.parse_coeff();
      p.eat('*');
    }
    p.parse_atom(expr, coeff);
  }
  if (expr.terms.empty()) throw GroundError("empty expression");
  return expr;
}

std::string expr_string(const InfoExpr& expr) {
  std::string out;
  const GroundSet& g = expr.ground;
  for (const auto& t : expr.terms) {
    std::string body;
    switch (t.kind) {
      case InfoExpr::Kind::Entropy:
        body = "H(" + g.subset_name(t.a) + ")";
        break;
      case InfoExpr::Kind::CondEntropy:
        body = "H(" + g.subset_name(t.a) + "|" + g.subset_name(t.c) + ")";
        break;
      case InfoExpr::Kind::MutualInfo:
        body = "I(" + g.subset_name(t.a) + "," + g.subset_name(t.b) + ")";
        break;
      case InfoExpr::Kind::CondMutualInfo:
        body = "I(" + g.subset_name(t.a) + "," + g.subset_name(t.b) + "|" +
               g.subset_name(t.c) + ")";
        break;
      case InfoExpr::Kind::Ingleton:
        body = "[" + g.subset_name(t.a) + "," + g.subset_name(t.b) + "," +
               g.subset_name(t.c) + "," + g.subset_name(t.d) + "]";
        break;
    }
    if (out.empty()) {
      if (t.coeff == 1) {
        out = body;
      } else if (t.coeff == -1) {
        out = "-" + body;
      } else {
        out = rat_string(t.coeff) + " " + body;
      }
    } else {
      Rat c = t.coeff;
      out += (c < 0) ? " - " : " + ";
      if (c < 0) c = -c;
      if (c != 1) out += rat_string(c) + " ";
      out += body;
    }
  }
  return out;
}

}  // namespace entreg
