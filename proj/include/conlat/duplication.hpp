#ifndef CONLAT_DUPLICATION_HPP
#define CONLAT_DUPLICATION_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conlat/catalog.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

// A(alpha): the subalgebra of A^2 on alpha-related pairs, together with
// the projection kernels and the pair indexing needed to lift congruences.
struct Duplication {
  FiniteAlgebra base;
  Congruence alpha;
  FiniteAlgebra doubled;
  std::vector<std::array<int, 2>> pair_of;  // doubled element -> (a0, a1)
  Congruence eta0, eta1;                    // projection kernels

  int index_of(int a0, int a1) const;
  // theta_side: pairs of A(alpha) elements whose side-th coordinates are
  // theta-related. Always a congruence of the doubled algebra.
  Congruence lift(const Congruence& theta, int side) const;
};

Duplication duplicate(const FiniteAlgebra& a, const Congruence& alpha,
                      long long max_universe = kDefaultMaxUniverse);

// Line-oriented verification report: one entry per lemma clause.
struct ClauseResult {
  std::string clause;
  bool applicable = true;
  bool passed = true;
  std::string witness;  // set on failure or when informative
};

struct Report {
  std::string title;
  std::vector<ClauseResult> clauses;

  bool ok() const;
  std::string to_text() const;
};

// A pentagon in Con(A) labelled like the figure: zero at the bottom,
// gamma below alpha on one side, beta alone on the other, delta on top.
// The bottom need not be the identity congruence of A.
struct PentagonConfig {
  FiniteAlgebra algebra;
  Congruence zero, gamma, alpha, beta, delta;
};

// Validates the shape (five congruences closing to a sublattice
// isomorphic to N5 with the stated labelling); throws std::invalid_argument.
PentagonConfig make_pentagon(const FiniteAlgebra& a, const Congruence& gamma,
                             const Congruence& alpha, const Congruence& beta);
PentagonConfig make_pentagon(const FiniteAlgebra& a, const Congruence& zero,
                             const Congruence& gamma, const Congruence& alpha,
                             const Congruence& beta, const Congruence& delta);

// A diamond in Con(A): three atoms with pairwise meets equal to bottom and
// pairwise joins equal to top.
struct M3Config {
  FiniteAlgebra algebra;
  Congruence bottom, a, b, c, top;

  bool atoms_pairwise_permute() const;
};

M3Config make_m3(const FiniteAlgebra& alg, const Congruence& a, const Congruence& b,
                 const Congruence& c);

// Checks the three clauses of the doubling lemma on A(gamma):
//   (1) gamma <= theta implies theta_0 = theta_1
//   (2) theta_i = eta_i v (theta_0 ^ theta_1)
//   (3) gamma_0 = eta_0 v eta_1
Report verify_doubling_lemma(const Duplication& dup, const Congruence& theta);

// The relational pentagon test: (beta o gamma o beta) n alpha not<= gamma.
// Returns a witness pair of base elements when the condition holds.
struct PentagonCondition {
  bool holds = false;
  std::optional<std::pair<int, int>> witness;
};
PentagonCondition pentagon_condition(const PentagonConfig& cfg);

// Four clauses relating the lifted meets over A(beta):
//   (1) g0^g1 <= a0^g1, g0^a1, a0^a1
//   (2) a0^a1 is below none of them
//   (3) comparability of a0^g1 and g0^a1 collapses both to g0^g1
//   (4) g_i v (a0^a1) = a_i
Report verify_lemma1(const PentagonConfig& cfg);

// (a0^g1) v (g0^a1) < a0^a1, under incomparability.
Report verify_lemma2(const PentagonConfig& cfg);

enum class PentagonClass { K, M1 };

struct ClassifyOptions {
  bool refine = true;  // replace (gamma, alpha) by a covering pair first
  enum class Over { Beta, Gamma, Alpha } over = Over::Beta;
  long long max_universe = kDefaultMaxUniverse;
  long long max_lattice = kDefaultMaxLattice;
  long long max_con = kDefaultMaxCongruences;
};

struct ClassifyResult {
  std::optional<PentagonClass> label;  // set when duplicating over beta
  Duplication dup;
  ConLattice lat;                 // closure of the lifted generators, labelled
  std::string catalog;            // matched catalog shape name, empty if none
  std::optional<std::vector<int>> iso;  // element map into the catalog shape
  PentagonConfig used;            // pentagon after refinement
  bool refined = false;
};

// Duplicates over beta, lifts {alpha_0, alpha_1, gamma_0, gamma_1, beta_0},
// closes under meet and join, and labels the result K or M1 according to
// the comparability of alpha_0^gamma_1 and gamma_0^alpha_1. Duplicating
// over gamma or alpha instead closes the lifts of both pentagon copies
// (exploration mode; this reproduces the nine-element lattice of the
// gamma-duplication figure).
ClassifyResult classify_pentagon(const PentagonConfig& cfg, const ClassifyOptions& opts = {});

struct SearchOptions {
  long long max_con = kDefaultMaxCongruences;
  long long max_results = -1;  // negative = unbounded
};

// All labelled pentagon (resp. diamond) sublattices of Con(A), in a
// deterministic order. Diamonds are reported once per atom set.
std::vector<PentagonConfig> find_pentagons(const FiniteAlgebra& a, const SearchOptions& = {});
std::vector<M3Config> find_m3s(const FiniteAlgebra& a, const SearchOptions& = {});

// True iff [gamma, alpha] = {gamma, alpha} in Con(A).
bool covers_in_con(const FiniteAlgebra& a, const Congruence& gamma, const Congruence& alpha);

// Comparability of a0^b1 and b0^a1 is equivalent to both being the bottom
// of Con(A(c)) (relative to the diamond's bottom).
Report verify_nozero(const M3Config& cfg);
Report verify_nozero(const M3Config& cfg, const Duplication& dup);

// The four product/join equalities available when the diamond's atoms
// pairwise permute.
Report verify_permute(const M3Config& cfg);
Report verify_permute(const M3Config& cfg, const Duplication& dup);

struct M33Result {
  Duplication dup;
  ConLattice lat;  // eight elements, labelled like the figure
  Report report;   // closure, isomorphism, pairwise permutability
  std::optional<std::vector<int>> iso;
};

// Duplicates over the atom c and assembles
//   {0, eta_0, a0^a1, a0^b1, a0, b0, c0, top0},
// which is an M_{3,3} sublattice with pairwise permuting congruences.
// Requires pairwise permuting atoms.
M33Result build_m33(const M3Config& cfg, long long max_universe = kDefaultMaxUniverse);

enum class ChainShape { Rod, Snake };

struct RodStep {
  FiniteAlgebra algebra;
  std::vector<std::pair<std::string, Congruence>> named;
  ConLattice lat;
  std::string catalog;  // shape this step must be isomorphic to
  bool closed = false;
  bool iso_ok = false;
  bool labels_ok = false;
  bool permuting = false;
};

struct RodsResult {
  std::vector<RodStep> steps;
  Report report;
};

struct RodsOptions {
  long long max_universe = kDefaultMaxUniverse;
  long long max_lattice = kDefaultMaxLattice;
};

// Iterates the duplication: each step duplicates over the current bottom
// diamond's gamma atom ('R' glue) or alpha atom ('L' glue), lifts every
// named congruence through the first projection and adjoins the new bottom
// diamond. After step k the named congruences form the glued chain whose
// bottom-up glue string is the reverse of the moves performed, so the move
// sequence is the reverse of the requested glue string.
RodsResult iterate_rods(const M3Config& cfg, int n, ChainShape shape, const RodsOptions& = {});
RodsResult iterate_rods(const M3Config& cfg, const std::string& glue, const RodsOptions& = {});

}  // namespace conlat

#endif
