#ifndef CONLAT_TESTS_SUPPORT_HPP
#define CONLAT_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "conlat/algebra.hpp"
#include "conlat/io.hpp"

namespace conlat::testing {

// Independent enumeration of all partitions of {0..n-1} via restricted
// growth strings; used as the oracle for congruence enumeration and for
// exhaustive searches over no-op algebras.
inline std::vector<Congruence> all_partitions(int n) {
  std::vector<Congruence> out;
  std::vector<int> rgs(n, 0);
  while (true) {
    out.push_back(Congruence::from_block_map(rgs));
    int i = n - 1;
    while (i > 0) {
      int cap = 0;
      for (int j = 0; j < i; ++j) cap = std::max(cap, rgs[j]);
      if (rgs[i] <= cap) break;
      --i;
    }
    if (i == 0) break;
    ++rgs[i];
    for (int j = i + 1; j < n; ++j) rgs[j] = 0;
  }
  return out;
}

inline FiniteAlgebra no_op_algebra(int n, const std::string& name = "A") {
  FiniteAlgebra a;
  a.name = name;
  a.size = n;
  return a;
}

// Klein four-group as a single xor table; Cg(0,1) and Con are known.
inline FiniteAlgebra klein_four() {
  FiniteAlgebra a;
  a.name = "z2z2";
  a.size = 4;
  Operation op;
  op.name = "xor";
  op.arity = 2;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) op.table.push_back(x ^ y);
  a.ops.push_back(std::move(op));
  return a;
}

// Componentwise addition mod 3 on pairs; Con is the subgroup lattice M4.
inline FiniteAlgebra z3z3() {
  FiniteAlgebra a;
  a.name = "z3z3";
  a.size = 9;
  Operation op;
  op.name = "add";
  op.arity = 2;
  for (int x = 0; x < 9; ++x)
    for (int y = 0; y < 9; ++y) {
      int r = (x / 3 + y / 3) % 3, c = (x % 3 + y % 3) % 3;
      op.table.push_back(r * 3 + c);
    }
  a.ops.push_back(std::move(op));
  return a;
}

inline FiniteAlgebra cyclic_group(int n) {
  FiniteAlgebra a;
  a.name = "z" + std::to_string(n);
  a.size = n;
  Operation op;
  op.name = "add";
  op.arity = 2;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) op.table.push_back((x + y) % n);
  a.ops.push_back(std::move(op));
  return a;
}

inline FiniteAlgebra random_algebra(std::mt19937& rng, int min_size = 3, int max_size = 6,
                                    int max_ops = 2) {
  FiniteAlgebra a;
  a.size = std::uniform_int_distribution<int>(min_size, max_size)(rng);
  a.name = "rand" + std::to_string(a.size);
  int ops = std::uniform_int_distribution<int>(0, max_ops)(rng);
  std::uniform_int_distribution<int> elem(0, a.size - 1);
  for (int i = 0; i < ops; ++i) {
    Operation op;
    op.arity = std::uniform_int_distribution<int>(0, 2)(rng);
    op.name = "f" + std::to_string(i);
    long long entries = 1;
    for (int k = 0; k < op.arity; ++k) entries *= a.size;
    for (long long e = 0; e < entries; ++e) op.table.push_back(elem(rng));
    a.ops.push_back(std::move(op));
  }
  return a;
}

inline Congruence part(const std::string& literal, int n) { return parse_partition(literal, n); }

}  // namespace conlat::testing

#endif
