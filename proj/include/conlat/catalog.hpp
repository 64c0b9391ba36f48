#ifndef CONLAT_CATALOG_HPP
#define CONLAT_CATALOG_HPP

#include <string>

#include "conlat/lattice.hpp"

namespace conlat {

// Handle for the named lattices used as isomorphism targets. Concrete
// syntax: N5, M3, M1, K, L14, M33, M33*, D1, D2, R<n>, S<n>, R<n>*,
// S<n>*, G:<letters over L/R>.
struct ShapeId {
  enum class Tag { N5, M3, M1, K, L14, M33, M33Star, D1, D2, Rod, Snake, RodStar, SnakeStar, Glue };

  Tag tag = Tag::N5;
  int n = 1;          // for Rod/Snake families
  std::string glue;   // for Glue: letters 'L'/'R', one per added copy

  static ShapeId parse(const std::string& text);
  std::string to_string() const;
};

struct CatalogOptions {
  // The loosely glued families beyond n = 2 are an extrapolation of the
  // n = 2 figure; they stay disabled unless explicitly requested.
  bool allow_loose_families = false;
};

FiniteLattice build_shape(const ShapeId& shape, const CatalogOptions& opts = {});
FiniteLattice build_shape(const std::string& text, const CatalogOptions& opts = {});

// Order reversed, meet and join swapped; labels are kept.
FiniteLattice dual(const FiniteLattice& l);

// Glue string realizing R(n) (all 'R') or S(n) (alternating, starting 'R').
std::string rod_glue_string(int n);
std::string snake_glue_string(int n);

}  // namespace conlat

#endif
