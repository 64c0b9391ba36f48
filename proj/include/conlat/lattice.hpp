#ifndef CONLAT_LATTICE_HPP
#define CONLAT_LATTICE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conlat/algebra.hpp"

namespace conlat {

// An explicit finite lattice: order relation plus total meet/join tables,
// validated exhaustively at construction.
class FiniteLattice {
 public:
  FiniteLattice() = default;

  // `leq` is a row-major n*n incidence matrix. Throws std::invalid_argument
  // if it is not a partial order with unique bottom/top and total glb/lub.
  static FiniteLattice from_leq(int n, const std::vector<bool>& leq,
                                std::vector<std::string> labels = {});
  static FiniteLattice from_covers(int n, const std::vector<std::pair<int, int>>& covers,
                                   std::vector<std::string> labels = {});

  int size() const { return n_; }
  bool leq(int a, int b) const { return leq_[static_cast<size_t>(a) * n_ + b]; }
  int meet(int a, int b) const { return meet_[static_cast<size_t>(a) * n_ + b]; }
  int join(int a, int b) const { return join_[static_cast<size_t>(a) * n_ + b]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  const std::string& label(int e) const { return labels_[e]; }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_label(int e, std::string s) { labels_[e] = std::move(s); }
  // First element carrying the label, if any.
  std::optional<int> find_label(const std::string& s) const;

  // Cover pairs (a, b) with a covered by b, sorted.
  const std::vector<std::pair<int, int>>& cover_pairs() const { return covers_; }
  std::vector<int> upper_covers(int e) const;
  std::vector<int> lower_covers(int e) const;
  int height(int e) const { return height_[e]; }  // longest chain up from bottom
  int depth(int e) const { return depth_[e]; }    // longest chain down from top

 private:
  int n_ = 0;
  std::vector<bool> leq_;
  std::vector<int> meet_, join_;
  std::vector<std::string> labels_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<int> height_, depth_;
  int bottom_ = 0, top_ = 0;
};

// Quantified-formula checks, brute force over all element tuples.
bool is_modular(const FiniteLattice& l);
bool is_distributive(const FiniteLattice& l);
bool is_meet_semidistributive(const FiniteLattice& l);
bool is_join_semidistributive(const FiniteLattice& l);
bool is_semidistributive(const FiniteLattice& l);
bool whitman_w(const FiniteLattice& l);

// Treats the lattice as an algebra with meet and join as basic operations.
FiniteAlgebra lattice_as_algebra(const FiniteLattice& l);

// True iff Con(L) has a unique atom.
bool is_subdirectly_irreducible(const FiniteLattice& l);

struct Sublattice {
  FiniteLattice lattice;
  std::vector<int> embedding;  // new index -> index in the parent lattice
};

// Smallest subset containing `subset` and closed under meet and join.
Sublattice generated_sublattice(const FiniteLattice& l, const std::vector<int>& subset);

// The interval [a, b] as a lattice (it is closed under meet and join).
Sublattice interval(const FiniteLattice& l, int a, int b);

// True iff b covers a.
bool covers(const FiniteLattice& l, int a, int b);

// Some pair a <= g < h <= b with h covering g; exists whenever a < b.
// Deterministic: the lexicographically least such (g, h) by element index.
std::pair<int, int> find_cover_in_interval(const FiniteLattice& l, int a, int b);

// A meet/join-preserving bijection from l to m if one exists. Backtracking
// search pruned by iterated (height, depth, cover-degree) refinement;
// returns the lexicographically least bijection.
std::optional<std::vector<int>> isomorphic(const FiniteLattice& l, const FiniteLattice& m);

// The map induced by matching labels, when it is a well-defined order
// isomorphism. Requires every label to occur exactly once on each side.
std::optional<std::vector<int>> isomorphic_by_labels(const FiniteLattice& l, const FiniteLattice& m);

// Hasse diagram in DOT format: cover edges only, nodes ranked by height.
std::string dot(const FiniteLattice& l, const std::string& name = "lattice");

// A finite sublattice of Con(A) presented explicitly, with the concrete
// congruence attached to every element.
struct ConLattice {
  FiniteLattice lattice;
  std::vector<Congruence> congruences;  // element index -> congruence

  std::optional<int> index_of(const Congruence& c) const;
};

// Closes `gens` under meet and join in Con(A); element order is canonical
// (lexicographic on block maps). Labels default to partition literals.
ConLattice lattice_of_congruences(const FiniteAlgebra& a, const std::vector<Congruence>& gens,
                                  long long max_lattice = kDefaultMaxLattice);

// Same closure without an ambient algebra (partition meet/join).
ConLattice close_partitions(std::vector<Congruence> gens, long long max_lattice = kDefaultMaxLattice);

}  // namespace conlat

#endif
