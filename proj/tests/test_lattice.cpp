#include <doctest.h>

#include <algorithm>
#include <random>

#include "conlat/catalog.hpp"
#include "conlat/lattice.hpp"
#include "support.hpp"

using namespace conlat;
using namespace conlat::testing;

namespace {

FiniteLattice boolean_cube() {
  // 2^3 as subsets of {0,1,2}, ordered by inclusion
  std::vector<bool> leq(64, false);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) leq[a * 8 + b] = (a & b) == a;
  return FiniteLattice::from_leq(8, leq);
}

FiniteLattice square() {
  return FiniteLattice::from_covers(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

}  // namespace

TEST_CASE("from_covers rejects non-lattices") {
  // two maximal elements
  CHECK_THROWS_AS(FiniteLattice::from_covers(3, {{0, 1}, {0, 2}}), std::invalid_argument);
  // hexagon in which two elements have no unique join
  CHECK_THROWS_AS(
      FiniteLattice::from_covers(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}}),
      std::invalid_argument);
  CHECK_THROWS_AS(FiniteLattice::from_covers(2, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("meet and join tables agree with the order") {
  FiniteLattice l = boolean_cube();
  CHECK(l.bottom() == 0);
  CHECK(l.top() == 7);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      CHECK(l.meet(a, b) == (a & b));
      CHECK(l.join(a, b) == (a | b));
      CHECK(l.meet(a, l.join(a, b)) == a);
      CHECK(l.join(a, l.meet(a, b)) == a);
    }
}

TEST_CASE("property checks on the two five-element lattices") {
  FiniteLattice n5 = build_shape("N5");
  FiniteLattice m3 = build_shape("M3");
  CHECK_FALSE(is_modular(n5));
  CHECK(is_semidistributive(n5));
  CHECK(is_modular(m3));
  CHECK_FALSE(is_meet_semidistributive(m3));
  CHECK_FALSE(is_join_semidistributive(m3));
  CHECK_FALSE(is_distributive(m3));
}

TEST_CASE("distributive implies modular and semidistributive") {
  std::mt19937 rng(23);
  std::vector<FiniteLattice> samples = {boolean_cube(), square(), build_shape("N5"),
                                        build_shape("M3"), build_shape("K"), build_shape("M1")};
  for (int trial = 0; trial < 20; ++trial) {
    auto parts = all_partitions(4);
    std::vector<Congruence> gens;
    std::uniform_int_distribution<size_t> pick(0, parts.size() - 1);
    for (int i = 0; i < 3; ++i) gens.push_back(parts[pick(rng)]);
    samples.push_back(close_partitions(gens).lattice);
  }
  for (const auto& l : samples)
    if (is_distributive(l)) {
      CHECK(is_modular(l));
      CHECK(is_semidistributive(l));
    }
}

TEST_CASE("Whitman condition and semidistributivity of the catalog") {
  FiniteLattice k = build_shape("K");
  CHECK(is_semidistributive(k));
  CHECK(whitman_w(k));
  CHECK(is_distributive(boolean_cube()));
  CHECK(whitman_w(build_shape("N5")));
  CHECK_FALSE(whitman_w(build_shape("M3")));
}

TEST_CASE("subdirect irreducibility") {
  FiniteLattice two = FiniteLattice::from_covers(2, {{0, 1}});
  CHECK(is_subdirectly_irreducible(two));
  CHECK(is_subdirectly_irreducible(build_shape("K")));
  CHECK_FALSE(is_subdirectly_irreducible(square()));
  CHECK_FALSE(is_subdirectly_irreducible(FiniteLattice::from_covers(1, {})));
}

TEST_CASE("generated sublattice") {
  FiniteLattice n5 = build_shape("N5");
  std::vector<int> all = {0, 1, 2, 3, 4};
  Sublattice s = generated_sublattice(n5, all);
  CHECK(s.lattice.size() == 5);
  CHECK(s.embedding == all);

  // 0 < gamma < alpha is a chain and already closed
  Sublattice chain = generated_sublattice(n5, {0, 1, 2});
  CHECK(chain.lattice.size() == 3);

  CHECK_THROWS_AS(generated_sublattice(n5, {}), std::invalid_argument);
}

TEST_CASE("generated sublattice is idempotent and monotone") {
  FiniteLattice k = build_shape("K");
  Sublattice s1 = generated_sublattice(k, {3, 8, 12});
  Sublattice s2 = generated_sublattice(k, s1.embedding);
  CHECK(s1.embedding == s2.embedding);
  Sublattice bigger = generated_sublattice(k, {3, 8, 12, 10});
  for (int e : s1.embedding)
    CHECK(std::find(bigger.embedding.begin(), bigger.embedding.end(), e) != bigger.embedding.end());
}

TEST_CASE("intervals and covers") {
  FiniteLattice n5 = build_shape("N5");
  Sublattice whole = interval(n5, n5.bottom(), n5.top());
  CHECK(whole.lattice.size() == 5);

  int gamma = *n5.find_label("gamma");
  int alpha = *n5.find_label("alpha");
  CHECK(covers(n5, gamma, alpha));
  CHECK_FALSE(covers(n5, n5.bottom(), alpha));
  CHECK_FALSE(covers(n5, alpha, gamma));

  FiniteLattice chain = FiniteLattice::from_covers(3, {{0, 1}, {1, 2}});
  auto [g, h] = find_cover_in_interval(chain, 0, 2);
  CHECK(g == 0);
  CHECK(h == 1);
  CHECK_THROWS_AS(find_cover_in_interval(chain, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(find_cover_in_interval(chain, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(interval(chain, 2, 0), std::invalid_argument);
}

TEST_CASE("every nontrivial finite lattice has a covering pair between bottom and top") {
  std::vector<FiniteLattice> samples = {build_shape("N5"), build_shape("M3"), build_shape("K"),
                                        build_shape("M1"), boolean_cube(), square()};
  for (const auto& l : samples) {
    auto [g, h] = find_cover_in_interval(l, l.bottom(), l.top());
    CHECK(covers(l, g, h));
  }
}

TEST_CASE("isomorphism basics") {
  FiniteLattice n5 = build_shape("N5");
  auto self = isomorphic(n5, n5);
  REQUIRE(self);
  for (int e = 0; e < 5; ++e) CHECK((*self)[e] == e);  // lexicographically least

  CHECK_FALSE(isomorphic(n5, build_shape("M3")));
  CHECK_FALSE(isomorphic(n5, boolean_cube()));
  CHECK(isomorphic(build_shape("R2"), build_shape("M33")));
}

TEST_CASE("isomorphism is symmetric and label-independent") {
  FiniteLattice k = build_shape("K");
  FiniteLattice kd = dual(dual(k));
  auto m = isomorphic(k, kd);
  REQUIRE(m);
  // found bijection inverts to a valid one
  std::vector<int> inv(m->size());
  for (size_t i = 0; i < m->size(); ++i) inv[(*m)[i]] = static_cast<int>(i);
  for (int a = 0; a < k.size(); ++a)
    for (int b = 0; b < k.size(); ++b) CHECK(kd.leq(a, b) == k.leq(inv[a], inv[b]));
}

TEST_CASE("isomorphic_by_labels demands a label-respecting order isomorphism") {
  FiniteLattice m33 = build_shape("M33");
  CHECK(isomorphic_by_labels(m33, m33));
  FiniteLattice other = build_shape("G:L");
  CHECK(isomorphic(m33, other));
  CHECK_FALSE(isomorphic_by_labels(m33, other));  // alpha/gamma roles differ
}

TEST_CASE("lattice_of_congruences closes generators") {
  FiniteAlgebra six = no_op_algebra(6);
  Congruence gamma = part("|2,3|4,5|", 6);

  ConLattice single = lattice_of_congruences(six, {gamma});
  CHECK(single.lattice.size() == 1);

  std::vector<Congruence> pent = {Congruence::identity(6), part("|2,3|4,5|1,6|", 6), gamma,
                                  part("|1,2|3,4|5,6|", 6), Congruence::total(6)};
  ConLattice n5 = lattice_of_congruences(six, pent);
  CHECK(n5.lattice.size() == 5);
  CHECK(isomorphic(n5.lattice, build_shape("N5")));
}

TEST_CASE("lattice_of_congruences validates generators and bounds") {
  FiniteAlgebra a = klein_four();
  CHECK_THROWS_AS(lattice_of_congruences(a, {part("|1,2|", 4)}), std::invalid_argument);
  FiniteAlgebra six = no_op_algebra(6);
  std::vector<Congruence> gens;
  for (int x = 0; x < 6; ++x)
    for (int y = x + 1; y < 6; ++y) gens.push_back(part("|" + std::to_string(x + 1) + "," + std::to_string(y + 1) + "|", 6));
  CHECK_THROWS_AS(lattice_of_congruences(six, gens, 20), LimitError);
}

TEST_CASE("dot emits a ranked Hasse diagram") {
  FiniteLattice n5 = build_shape("N5");
  std::string d = dot(n5, "N5");
  CHECK(d.find("digraph \"N5\"") != std::string::npos);
  CHECK(d.find("n0 -> n1") != std::string::npos);
  CHECK(d.find("rank=same") != std::string::npos);
  CHECK(d.find("label=\"gamma\"") != std::string::npos);
  CHECK(d == dot(n5, "N5"));
}
