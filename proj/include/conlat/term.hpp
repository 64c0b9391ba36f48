#ifndef CONLAT_TERM_HPP
#define CONLAT_TERM_HPP

#include <map>
#include <memory>
#include <set>
#include <string>

#include "conlat/lattice.hpp"

namespace conlat {

// Meet/join term over named variables. Concrete syntax: '^' for meet,
// 'v' for join (so variable names cannot contain the letter v), plus
// parentheses; '^' binds tighter than 'v'.
struct LatticeTerm {
  enum class Kind { Var, Meet, Join };

  Kind kind = Kind::Var;
  std::string var;
  std::unique_ptr<LatticeTerm> lhs, rhs;

  LatticeTerm clone() const;
  std::set<std::string> variables() const;
  std::string to_string() const;
};

LatticeTerm parse_term(const std::string& text);

// "p <= q" -> (p, q).
std::pair<LatticeTerm, LatticeTerm> parse_inequality(const std::string& text);

// Bottom-up evaluation; throws std::invalid_argument on unbound variables.
int eval_term(const LatticeTerm& t, const FiniteLattice& l,
              const std::map<std::string, int>& assignment);

bool eval_inequality(const LatticeTerm& p, const LatticeTerm& q, const FiniteLattice& l,
                     const std::map<std::string, int>& assignment);

}  // namespace conlat

#endif
