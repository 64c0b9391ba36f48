#ifndef CONLAT_ALGEBRA_HPP
#define CONLAT_ALGEBRA_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace conlat {

// Thrown when a computation would exceed a configured resource bound.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr long long kDefaultMaxUniverse = 100000;
inline constexpr long long kDefaultMaxCongruences = 100000;
inline constexpr long long kDefaultMaxLattice = 10000;
inline constexpr long long kMaxTableEntries = 10000000;

// A finitary operation on {0..n-1}. The table is row-major over the
// arguments: the first argument varies slowest.
struct Operation {
  std::string name;
  int arity = 0;
  std::vector<int> table;

  int apply(std::span<const int> args, int n) const;
};

struct FiniteAlgebra {
  std::string name;
  int size = 0;
  std::vector<Operation> ops;
  std::vector<std::string> elem_names;  // optional; defaults to 1-indexed decimals

  std::string elem_name(int e) const;
  int apply(const Operation& op, std::span<const int> args) const;
  // Checks table totality and range; throws std::invalid_argument.
  void validate() const;
};

// A partition of {0..n-1} in canonical form: every element maps to the
// least element of its block. Compatibility with an algebra's operations
// is a property of the pair (algebra, partition), see is_congruence().
class Congruence {
 public:
  Congruence() = default;

  static Congruence identity(int n);
  static Congruence total(int n);
  // Accepts an arbitrary block-id assignment and canonicalizes it.
  static Congruence from_block_map(const std::vector<int>& assignment);

  int size() const { return static_cast<int>(rep_.size()); }
  int rep(int e) const { return rep_[e]; }
  bool related(int a, int b) const { return rep_[a] == rep_[b]; }
  int block_count() const;
  std::vector<std::vector<int>> blocks() const;
  const std::vector<int>& block_map() const { return rep_; }
  bool is_identity() const;
  bool is_total() const { return !rep_.empty() && block_count() == 1; }

  friend bool operator==(const Congruence&, const Congruence&) = default;
  // Lexicographic on the canonical block map; used for deterministic output.
  friend auto operator<=>(const Congruence&, const Congruence&) = default;

 private:
  std::vector<int> rep_;
};

// fine <= coarse in the refinement order.
bool refines(const Congruence& fine, const Congruence& coarse);
bool comparable(const Congruence& a, const Congruence& b);

Congruence meet(const Congruence& a, const Congruence& b);
// Transitive closure of the union; this is the join in Con(A) because
// compatibility is preserved automatically.
Congruence join(const Congruence& a, const Congruence& b);

// A binary relation on {0..n-1}, stored as a bit matrix.
class BinaryRelation {
 public:
  explicit BinaryRelation(int n);
  static BinaryRelation from(const Congruence& c);
  static BinaryRelation identity(int n);

  int size() const { return n_; }
  bool contains(int a, int b) const;
  void add(int a, int b);
  bool subset_of(const BinaryRelation& other) const;
  BinaryRelation reflexive_closure() const;
  std::vector<std::pair<int, int>> pairs() const;

  friend bool operator==(const BinaryRelation&, const BinaryRelation&) = default;
  friend BinaryRelation compose(const BinaryRelation& r, const BinaryRelation& s);

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<uint64_t> bits_;
};

BinaryRelation compose(const BinaryRelation& r, const BinaryRelation& s);

// theta o phi o theta o ... with k factors, starting from theta.
BinaryRelation alternating_product(const Congruence& theta, const Congruence& phi, int k);

// True iff theta o^k phi = phi o^k theta as relations. k = 2 is plain
// permutability, k = 3 is 3-permutability.
bool permute_check(const Congruence& theta, const Congruence& phi, int k);

bool is_congruence(const FiniteAlgebra& a, const Congruence& c);

// Smallest congruence of `a` containing (x, y): union-find closure under
// all unary polynomial translations of the basic operations.
Congruence principal_congruence(const FiniteAlgebra& a, int x, int y);

// All congruences of `a`, as the join-closure of the principal ones,
// sorted canonically. Throws LimitError past `limit`.
std::vector<Congruence> enumerate_con(const FiniteAlgebra& a,
                                      long long limit = kDefaultMaxCongruences);

// The subalgebra of A^n on tuples whose coordinates are pairwise
// alpha-related, with coordinatewise operations. Tuples are ordered
// lexicographically so element indices are reproducible.
struct PowerSubalgebra {
  FiniteAlgebra algebra;
  std::vector<std::vector<int>> tuples;  // element index -> tuple over the base

  int index_of(std::span<const int> tuple) const;
};

PowerSubalgebra power_subalgebra(const FiniteAlgebra& a, const Congruence& alpha, int n,
                                 long long max_universe = kDefaultMaxUniverse);

}  // namespace conlat

#endif
