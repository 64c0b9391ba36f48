#include "conlat/term.hpp"

#include <cctype>

#include "conlat/io.hpp"

namespace conlat {

namespace {

struct Token {
  enum class Kind { Var, Meet, Join, LParen, RParen, Leq, End };
  Kind kind;
  std::string text;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;

  Token next() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos >= src.size()) return {Token::Kind::End, ""};
    char c = src[pos];
    if (c == '^') return ++pos, Token{Token::Kind::Meet, "^"};
    if (c == 'v') return ++pos, Token{Token::Kind::Join, "v"};
    if (c == '(') return ++pos, Token{Token::Kind::LParen, "("};
    if (c == ')') return ++pos, Token{Token::Kind::RParen, ")"};
    if (c == '<' && pos + 1 < src.size() && src[pos + 1] == '=')
      return pos += 2, Token{Token::Kind::Leq, "<="};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < src.size()) {
        char d = src[pos];
        if (d == 'v') break;  // 'v' is always the join connective
        if (!std::isalnum(static_cast<unsigned char>(d)) && d != '_') break;
        ++pos;
      }
      return {Token::Kind::Var, src.substr(start, pos - start)};
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "' in lattice term");
  }
};

struct Parser {
  Lexer lex;
  Token cur;

  explicit Parser(const std::string& s) : lex{s} { cur = lex.next(); }

  void advance() { cur = lex.next(); }

  LatticeTerm make(LatticeTerm::Kind k, LatticeTerm l, LatticeTerm r) {
    LatticeTerm t;
    t.kind = k;
    t.lhs = std::make_unique<LatticeTerm>(std::move(l));
    t.rhs = std::make_unique<LatticeTerm>(std::move(r));
    return t;
  }

  LatticeTerm atom() {
    if (cur.kind == Token::Kind::LParen) {
      advance();
      LatticeTerm t = term();
      if (cur.kind != Token::Kind::RParen) throw ParseError("expected ')' in lattice term");
      advance();
      return t;
    }
    if (cur.kind == Token::Kind::Var) {
      LatticeTerm t;
      t.kind = LatticeTerm::Kind::Var;
      t.var = cur.text;
      advance();
      return t;
    }
    throw ParseError("expected variable or '(' in lattice term");
  }

  LatticeTerm factor() {  // meet binds tighter than join
    LatticeTerm t = atom();
    while (cur.kind == Token::Kind::Meet) {
      advance();
      t = make(LatticeTerm::Kind::Meet, std::move(t), atom());
    }
    return t;
  }

  LatticeTerm term() {
    LatticeTerm t = factor();
    while (cur.kind == Token::Kind::Join) {
      advance();
      t = make(LatticeTerm::Kind::Join, std::move(t), factor());
    }
    return t;
  }
};

}  // namespace

LatticeTerm LatticeTerm::clone() const {
  LatticeTerm t;
  t.kind = kind;
  t.var = var;
  if (lhs) t.lhs = std::make_unique<LatticeTerm>(lhs->clone());
  if (rhs) t.rhs = std::make_unique<LatticeTerm>(rhs->clone());
  return t;
}

std::set<std::string> LatticeTerm::variables() const {
  std::set<std::string> out;
  if (kind == Kind::Var) {
    out.insert(var);
  } else {
    auto l = lhs->variables();
    auto r = rhs->variables();
    out.insert(l.begin(), l.end());
    out.insert(r.begin(), r.end());
  }
  return out;
}

std::string LatticeTerm::to_string() const {
  if (kind == Kind::Var) return var;
  std::string op = kind == Kind::Meet ? "^" : "v";
  return "(" + lhs->to_string() + op + rhs->to_string() + ")";
}

LatticeTerm parse_term(const std::string& text) {
  Parser p(text);
  LatticeTerm t = p.term();
  if (p.cur.kind != Token::Kind::End) throw ParseError("trailing input after lattice term");
  return t;
}

std::pair<LatticeTerm, LatticeTerm> parse_inequality(const std::string& text) {
  Parser p(text);
  LatticeTerm lhs = p.term();
  if (p.cur.kind != Token::Kind::Leq) throw ParseError("expected '<=' in inequality");
  p.advance();
  LatticeTerm rhs = p.term();
  if (p.cur.kind != Token::Kind::End) throw ParseError("trailing input after inequality");
  return {std::move(lhs), std::move(rhs)};
}

int eval_term(const LatticeTerm& t, const FiniteLattice& l,
              const std::map<std::string, int>& assignment) {
  switch (t.kind) {
    case LatticeTerm::Kind::Var: {
      auto it = assignment.find(t.var);
      if (it == assignment.end()) throw std::invalid_argument("unbound variable: " + t.var);
      if (it->second < 0 || it->second >= l.size())
        throw std::invalid_argument("assignment for " + t.var + " out of range");
      return it->second;
    }
    case LatticeTerm::Kind::Meet:
      return l.meet(eval_term(*t.lhs, l, assignment), eval_term(*t.rhs, l, assignment));
    case LatticeTerm::Kind::Join:
      return l.join(eval_term(*t.lhs, l, assignment), eval_term(*t.rhs, l, assignment));
  }
  throw std::logic_error("bad term kind");
}

bool eval_inequality(const LatticeTerm& p, const LatticeTerm& q, const FiniteLattice& l,
                     const std::map<std::string, int>& assignment) {
  return l.leq(eval_term(p, l, assignment), eval_term(q, l, assignment));
}

}  // namespace conlat
