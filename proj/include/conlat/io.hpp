#ifndef CONLAT_IO_HPP
#define CONLAT_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "conlat/algebra.hpp"

namespace conlat {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what), line_(0) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Algebra file format (line oriented, UTF-8, 1-indexed table entries):
//
//   algebra <name>
//   size <n>
//   op <name> <arity>
//   <n^arity integers in 1..n, row-major over arguments>
//   endop
//   end
FiniteAlgebra parse_algebra(std::istream& in);
FiniteAlgebra parse_algebra(const std::string& text);
FiniteAlgebra load_algebra(const std::string& path);
std::string emit_algebra(const FiniteAlgebra& a);

// Partition literal: |a,b,c|d,e| with 1-indexed elements. Singletons may
// be omitted; blocks and elements may come in any order. "|" denotes the
// identity partition.
Congruence parse_partition(const std::string& text, int n);
std::string format_partition(const Congruence& c);

// Witness pair rendered with the algebra's element names, 1-indexed.
std::string format_pair(const FiniteAlgebra& a, int x, int y);

}  // namespace conlat

#endif
