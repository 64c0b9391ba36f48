#include <doctest.h>

#include <random>
#include <set>

#include "conlat/duplication.hpp"
#include "conlat/io.hpp"
#include "support.hpp"

using namespace conlat;
using namespace conlat::testing;

namespace {

PentagonConfig example_a() {
  FiniteAlgebra a = no_op_algebra(6, "six");
  return make_pentagon(a, part("|2,3|4,5|", 6), part("|2,3|4,5|1,6|", 6), part("|1,2|3,4|5,6|", 6));
}

PentagonConfig example_b() {
  FiniteAlgebra b = no_op_algebra(4, "four");
  return make_pentagon(b, part("|1,2|", 4), part("|1,2|3,4|", 4), part("|1,3|2,4|", 4));
}

M3Config klein_m3() {
  FiniteAlgebra a = klein_four();
  return make_m3(a, part("|1,2|3,4|", 4), part("|1,3|2,4|", 4), part("|1,4|2,3|", 4));
}

}  // namespace

TEST_CASE("duplication basics") {
  FiniteAlgebra a = no_op_algebra(6);
  Congruence beta = part("|1,2|3,4|5,6|", 6);
  Duplication dup = duplicate(a, beta);
  CHECK(dup.doubled.size == 12);
  CHECK(meet(dup.eta0, dup.eta1) == Congruence::identity(12));
  // eta0 v eta1 equals the lift of the duplicated congruence
  CHECK(join(dup.eta0, dup.eta1) == dup.lift(beta, 0));
  for (int e = 0; e < dup.doubled.size; ++e)
    CHECK(dup.index_of(dup.pair_of[e][0], dup.pair_of[e][1]) == e);
  CHECK_THROWS_AS(dup.index_of(0, 3), std::invalid_argument);
}

TEST_CASE("lift of the total congruence is total; equal lifts above the duplicated one") {
  FiniteAlgebra a = no_op_algebra(6);
  Congruence beta = part("|1,2|3,4|5,6|", 6);
  Duplication dup = duplicate(a, beta);
  for (int side : {0, 1}) CHECK(dup.lift(Congruence::total(6), side).is_total());
  CHECK(dup.lift(beta, 0) == dup.lift(beta, 1));

  Congruence gamma = part("|2,3|4,5|", 6);
  Congruence g0 = dup.lift(gamma, 0), g1 = dup.lift(gamma, 1);
  CHECK(g0 != g1);
  bool found_difference = false;
  for (int x = 0; x < 12 && !found_difference; ++x)
    for (int y = 0; y < 12; ++y)
      if (g0.related(x, y) && !g1.related(x, y)) {
        found_difference = true;
        break;
      }
  CHECK(found_difference);
}

TEST_CASE("lift is monotone and meet-preserving") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    FiniteAlgebra a = random_algebra(rng, 3, 5);
    auto cons = enumerate_con(a);
    std::uniform_int_distribution<size_t> pick(0, cons.size() - 1);
    Duplication dup = duplicate(a, cons[pick(rng)]);
    for (int i = 0; i < 6; ++i) {
      const Congruence& x = cons[pick(rng)];
      const Congruence& y = cons[pick(rng)];
      for (int side : {0, 1}) {
        CHECK(dup.lift(meet(x, y), side) == meet(dup.lift(x, side), dup.lift(y, side)));
        if (refines(x, y)) CHECK(refines(dup.lift(x, side), dup.lift(y, side)));
        CHECK(is_congruence(dup.doubled, dup.lift(x, side)));
      }
    }
  }
}

TEST_CASE("doubling lemma on fixtures") {
  FiniteAlgebra a = no_op_algebra(6);
  Congruence beta = part("|1,2|3,4|5,6|", 6);
  Duplication dup = duplicate(a, beta);

  Report total = verify_doubling_lemma(dup, Congruence::total(6));
  CHECK(total.ok());
  // the total congruence lies above beta, so clause 1 applies
  CHECK(total.clauses[0].applicable);

  Report gamma = verify_doubling_lemma(dup, part("|2,3|4,5|", 6));
  CHECK(gamma.ok());
  CHECK_FALSE(gamma.clauses[0].applicable);
}

TEST_CASE("doubling lemma on random algebras") {
  std::mt19937 rng(37);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    FiniteAlgebra a = random_algebra(rng, 3, 4);
    auto cons = enumerate_con(a);
    std::uniform_int_distribution<size_t> pick(0, cons.size() - 1);
    Duplication dup = duplicate(a, cons[pick(rng)]);
    for (int i = 0; i < 4; ++i) {
      Report r = verify_doubling_lemma(dup, cons[pick(rng)]);
      CHECK(r.ok());
      ++checked;
    }
  }
  CHECK(checked == 200);
}

TEST_CASE("pentagon validation accepts the figures and rejects mislabelings") {
  CHECK_NOTHROW(example_a());
  CHECK_NOTHROW(example_b());
  FiniteAlgebra a = no_op_algebra(6);
  // alpha and gamma swapped: gamma must be the smaller one
  CHECK_THROWS_AS(
      make_pentagon(a, part("|2,3|4,5|1,6|", 6), part("|2,3|4,5|", 6), part("|1,2|3,4|5,6|", 6)),
      std::invalid_argument);
  // not a pentagon at all
  CHECK_THROWS_AS(
      make_pentagon(a, part("|1,2|", 6), part("|1,2,3|", 6), part("|1,2,3,4|", 6)),
      std::invalid_argument);
  // congruence of the wrong algebra
  CHECK_THROWS_AS(make_pentagon(klein_four(), part("|1,2|", 4), part("|1,2|3,4|", 4),
                                part("|1,3|2,4|", 4)),
                  std::invalid_argument);
}

TEST_CASE("pentagon condition on the worked examples") {
  PentagonCondition a = pentagon_condition(example_a());
  CHECK_FALSE(a.holds);
  CHECK_FALSE(a.witness.has_value());

  PentagonCondition b = pentagon_condition(example_b());
  CHECK(b.holds);
  REQUIRE(b.witness.has_value());
  CHECK(b.witness->first == 2);
  CHECK(b.witness->second == 3);
}

TEST_CASE("classification of the six-element example is M1") {
  ClassifyResult r = classify_pentagon(example_a());
  REQUIRE(r.label.has_value());
  CHECK(*r.label == PentagonClass::M1);
  CHECK_FALSE(r.refined);
  CHECK(r.lat.lattice.size() == 11);
  CHECK(r.catalog == "M1");
  REQUIRE(r.iso.has_value());
  CHECK(isomorphic_by_labels(r.lat.lattice, build_shape("M1")));
}

TEST_CASE("classification of the four-element example is K") {
  ClassifyResult r = classify_pentagon(example_b());
  REQUIRE(r.label.has_value());
  CHECK(*r.label == PentagonClass::K);
  CHECK(r.lat.lattice.size() == 14);
  CHECK(r.catalog == "K");
  CHECK(isomorphic_by_labels(r.lat.lattice, build_shape("K")));
}

TEST_CASE("duplicating the pentagon over gamma yields the nine-element lattice") {
  ClassifyOptions opts;
  opts.over = ClassifyOptions::Over::Gamma;
  ClassifyResult r = classify_pentagon(example_a(), opts);
  CHECK_FALSE(r.label.has_value());
  CHECK(r.lat.lattice.size() == 9);
  CHECK(r.catalog == "L14");
  CHECK(isomorphic_by_labels(r.lat.lattice, build_shape("L14")));
}

TEST_CASE("lemma1 and the comparable case on the six-element example") {
  Report r = verify_lemma1(example_a());
  CHECK(r.ok());
  CHECK(r.clauses[2].applicable);  // the two mixed meets are comparable here

  PentagonConfig cfg = example_a();
  Duplication dup = duplicate(cfg.algebra, cfg.beta);
  Congruence ag = meet(dup.lift(cfg.alpha, 0), dup.lift(cfg.gamma, 1));
  Congruence ga = meet(dup.lift(cfg.gamma, 0), dup.lift(cfg.alpha, 1));
  Congruence gg = meet(dup.lift(cfg.gamma, 0), dup.lift(cfg.gamma, 1));
  CHECK(ag == ga);
  CHECK(ag == gg);
}

TEST_CASE("lemma2 on the four-element example") {
  Report r = verify_lemma2(example_b());
  CHECK(r.ok());
  CHECK(r.clauses[0].applicable);
}

TEST_CASE("lemma1 and lemma2 hold on all pentagons of small no-op algebras") {
  for (int n = 4; n <= 5; ++n) {
    FiniteAlgebra a = no_op_algebra(n);
    SearchOptions so;
    so.max_results = 200;
    for (const auto& cfg : find_pentagons(a, so)) {
      CHECK(verify_lemma1(cfg).ok());
      CHECK(verify_lemma2(cfg).ok());
    }
  }
}

TEST_CASE("find_pentagons and find_m3s on fixtures") {
  // the cyclic group of order 4 has a three-element chain of congruences
  FiniteAlgebra z4 = cyclic_group(4);
  CHECK(enumerate_con(z4).size() == 3);
  CHECK(find_pentagons(z4).empty());
  CHECK(find_m3s(z4).empty());

  FiniteAlgebra k4 = klein_four();
  CHECK(find_pentagons(k4).empty());
  auto m3s = find_m3s(k4);
  REQUIRE(m3s.size() == 1);
  CHECK(m3s[0].bottom == Congruence::identity(4));
  CHECK(m3s[0].top == Congruence::total(4));
  CHECK(m3s[0].atoms_pairwise_permute());

  // the figure pentagon appears among those of the six-element example
  FiniteAlgebra six = no_op_algebra(6);
  PentagonConfig fig = example_a();
  bool found = false;
  for (const auto& cfg : find_pentagons(six)) {
    if (cfg.zero == fig.zero && cfg.gamma == fig.gamma && cfg.alpha == fig.alpha &&
        cfg.beta == fig.beta && cfg.delta == fig.delta)
      found = true;
  }
  CHECK(found);
}

TEST_CASE("classification agrees with the relational condition on covering pentagons") {
  for (int n = 4; n <= 5; ++n) {
    FiniteAlgebra a = no_op_algebra(n);
    SearchOptions so;
    so.max_results = 300;
    for (const auto& cfg : find_pentagons(a, so)) {
      if (!covers_in_con(a, cfg.gamma, cfg.alpha)) continue;
      ClassifyResult r = classify_pentagon(cfg);
      PentagonCondition c = pentagon_condition(cfg);
      REQUIRE(r.label.has_value());
      CHECK((*r.label == PentagonClass::K) == c.holds);
      CHECK((r.catalog == "K") == c.holds);
      CHECK((r.catalog == "M1") == !c.holds);
    }
  }
}

TEST_CASE("non-covering pentagons are refined before classification") {
  FiniteAlgebra a = no_op_algebra(5);
  SearchOptions so;
  so.max_results = 500;
  bool exercised = false;
  for (const auto& cfg : find_pentagons(a, so)) {
    if (covers_in_con(a, cfg.gamma, cfg.alpha)) continue;
    ClassifyResult r = classify_pentagon(cfg);
    CHECK(r.refined);
    CHECK(refines(cfg.gamma, r.used.gamma));
    CHECK(refines(r.used.alpha, cfg.alpha));
    CHECK(covers_in_con(a, r.used.gamma, r.used.alpha));
    CHECK((r.catalog == "K" || r.catalog == "M1"));
    exercised = true;
    if (r.lat.lattice.size() > 0 && exercised) break;
  }
  CHECK(exercised);
}

TEST_CASE("nozero equivalence on the Klein diamond and on searched diamonds") {
  M3Config cfg = klein_m3();
  Duplication dup = duplicate(cfg.algebra, cfg.c);
  CHECK(verify_nozero(cfg, dup).ok());

  // atoms 3-permute, so the mixed meets are incomparable and nonzero
  Congruence ab = meet(dup.lift(cfg.a, 0), dup.lift(cfg.b, 1));
  Congruence ba = meet(dup.lift(cfg.b, 0), dup.lift(cfg.a, 1));
  CHECK_FALSE(comparable(ab, ba));
  CHECK(ab != Congruence::identity(dup.doubled.size));

  for (int n = 4; n <= 5; ++n) {
    SearchOptions so;
    so.max_results = 100;
    for (const auto& m3 : find_m3s(no_op_algebra(n), so)) CHECK(verify_nozero(m3).ok());
  }
}

TEST_CASE("permute lemma on the Klein diamond") {
  M3Config cfg = klein_m3();
  Report r = verify_permute(cfg);
  CHECK(r.ok());
  for (const auto& c : r.clauses) CHECK(c.applicable);
}

TEST_CASE("m33 construction on the Klein four-group") {
  M33Result res = build_m33(klein_m3());
  CHECK(res.dup.doubled.size == 8);
  CHECK(res.lat.lattice.size() == 8);
  CHECK(res.report.ok());
  REQUIRE(res.iso.has_value());

  const FiniteLattice& l = res.lat.lattice;
  int zero = *l.find_label("0");
  int eta0 = *l.find_label("eta_0");
  int alpha0 = *l.find_label("alpha_0");
  int delta0 = *l.find_label("delta_0");
  CHECK(zero == l.bottom());
  CHECK(delta0 == l.top());
  CHECK(covers(l, zero, eta0));
  CHECK(covers(l, eta0, alpha0));

  // lower diamond atoms: the two meets and eta_0; alpha_0 is the shared middle
  std::set<int> lower = {*l.find_label("alpha_0^alpha_1"), *l.find_label("alpha_0^beta_1"), eta0};
  auto alpha_lower = l.lower_covers(alpha0);
  CHECK(std::set<int>(alpha_lower.begin(), alpha_lower.end()) == lower);
  std::set<int> upper = {alpha0, *l.find_label("beta_0"), *l.find_label("gamma_0")};
  auto delta_lower = l.lower_covers(delta0);
  CHECK(std::set<int>(delta_lower.begin(), delta_lower.end()) == upper);
}

TEST_CASE("m33 requires permuting atoms") {
  // atoms of a partition diamond that do not pairwise permute
  FiniteAlgebra a = no_op_algebra(5);
  for (const auto& m3 : find_m3s(a)) {
    if (m3.atoms_pairwise_permute()) continue;
    CHECK_THROWS_AS(build_m33(m3), std::invalid_argument);
    break;
  }
}

TEST_CASE("m33 verifies on the nine-element elementary abelian group") {
  FiniteAlgebra a = z3z3();
  auto m3s = find_m3s(a);
  REQUIRE(!m3s.empty());
  M33Result res = build_m33(m3s.front());
  CHECK(res.report.ok());
  CHECK(res.lat.lattice.size() == 8);
  CHECK(res.dup.doubled.size == 27);
}

TEST_CASE("rod iteration on the Klein four-group") {
  M3Config cfg = klein_m3();

  RodsResult one = iterate_rods(cfg, 1, ChainShape::Rod);
  CHECK(one.report.ok());
  CHECK(one.steps.size() == 1);
  CHECK(one.steps[0].lat.lattice.size() == 5);
  std::set<Congruence> base_set;
  for (const auto& [name, c] : one.steps[0].named) base_set.insert(c);
  CHECK(base_set == std::set<Congruence>{cfg.bottom, cfg.a, cfg.b, cfg.c, cfg.top});

  RodsResult two = iterate_rods(cfg, 2, ChainShape::Rod);
  CHECK(two.report.ok());
  CHECK(two.steps[1].algebra.size == 8);
  CHECK(two.steps[1].lat.lattice.size() == 8);
  CHECK(isomorphic(two.steps[1].lat.lattice, build_shape("M33")));

  // the step-2 congruence set coincides with the M33 construction
  M33Result m33 = build_m33(cfg);
  std::set<Congruence> from_rods(two.steps[1].lat.congruences.begin(),
                                 two.steps[1].lat.congruences.end());
  std::set<Congruence> from_m33(m33.lat.congruences.begin(), m33.lat.congruences.end());
  CHECK(from_rods == from_m33);

  RodsResult three = iterate_rods(cfg, 3, ChainShape::Rod);
  CHECK(three.report.ok());
  CHECK(three.steps[2].algebra.size == 16);
  CHECK(three.steps[2].lat.lattice.size() == 11);
  CHECK(isomorphic(three.steps[2].lat.lattice, build_shape("R3")));
  for (const auto& st : three.steps) {
    CHECK(st.closed);
    CHECK(st.iso_ok);
    CHECK(st.labels_ok);
    CHECK(st.permuting);
  }
}

TEST_CASE("snake iteration matches the catalog") {
  M3Config cfg = klein_m3();
  for (int n = 1; n <= 3; ++n) {
    RodsResult r = iterate_rods(cfg, n, ChainShape::Snake);
    CHECK(r.report.ok());
    CHECK(isomorphic(r.steps.back().lat.lattice, build_shape("S" + std::to_string(n))));
  }
}

TEST_CASE("the filter above the new bottom diamond is the previous lattice") {
  M3Config cfg = klein_m3();
  RodsResult r = iterate_rods(cfg, 3, ChainShape::Rod);
  for (size_t step = 1; step < r.steps.size(); ++step) {
    const RodStep& cur = r.steps[step];
    const RodStep& prev = r.steps[step - 1];
    Congruence gamma1;
    for (const auto& [name, c] : cur.named)
      if (name == "gamma_1") gamma1 = c;
    int base = *cur.lat.index_of(gamma1);
    std::vector<int> filter;
    for (int e = 0; e < cur.lat.lattice.size(); ++e)
      if (cur.lat.lattice.leq(base, e)) filter.push_back(e);
    Sublattice f = generated_sublattice(cur.lat.lattice, filter);
    CHECK(isomorphic(f.lattice, prev.lat.lattice));
  }
}

TEST_CASE("iteration reports the step reached when the universe bound trips") {
  M3Config cfg = klein_m3();
  RodsOptions opts;
  opts.max_universe = 10;
  try {
    iterate_rods(cfg, 3, ChainShape::Rod, opts);
    FAIL("expected LimitError");
  } catch (const LimitError& e) {
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
}

TEST_CASE("custom glue strings drive the iteration") {
  M3Config cfg = klein_m3();
  RodsResult r = iterate_rods(cfg, "LL");
  CHECK(r.report.ok());
  CHECK(isomorphic(r.steps.back().lat.lattice, build_shape("G:LL")));
  CHECK_THROWS_AS(iterate_rods(cfg, "LX"), std::invalid_argument);
}
