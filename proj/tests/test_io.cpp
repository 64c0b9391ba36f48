#include <doctest.h>

#include "conlat/io.hpp"
#include "support.hpp"

using namespace conlat;
using namespace conlat::testing;

TEST_CASE("parse a no-op algebra file") {
  FiniteAlgebra a = parse_algebra("algebra six\nsize 6\nend\n");
  CHECK(a.name == "six");
  CHECK(a.size == 6);
  CHECK(a.ops.empty());
}

TEST_CASE("parse a one-element algebra with a constant") {
  FiniteAlgebra a = parse_algebra("algebra one\nsize 1\nop c 0\n1\nendop\nend\n");
  CHECK(a.size == 1);
  REQUIRE(a.ops.size() == 1);
  CHECK(a.ops[0].arity == 0);
  CHECK(a.ops[0].table == std::vector<int>{0});
}

TEST_CASE("parse the Klein four-group table") {
  std::string text =
      "algebra z2z2\nsize 4\nop xor 2\n"
      "1 2 3 4\n2 1 4 3\n3 4 1 2\n4 3 2 1\nendop\nend\n";
  FiniteAlgebra a = parse_algebra(text);
  CHECK(a.size == 4);
  REQUIRE(a.ops.size() == 1);
  CHECK(a.ops[0].table == klein_four().ops[0].table);
}

TEST_CASE("parser reports the offending line") {
  try {
    parse_algebra("algebra bad\nsize 2\nop f 1\n1 3\nendop\nend\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("out of range") != std::string::npos);
  }
}

TEST_CASE("parser rejects short and long tables") {
  CHECK_THROWS_AS(parse_algebra("algebra bad\nsize 2\nop f 1\n1\nendop\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("algebra bad\nsize 2\nop f 1\n1 2 1\nendop\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("algebra bad\nsize 2\nop f 1\n1 2\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_algebra("nonsense\n"), ParseError);
}

TEST_CASE("emit and parse round-trip") {
  FiniteAlgebra a = klein_four();
  Operation c{"zero", 0, {0}};
  Operation inv{"id", 1, {0, 1, 2, 3}};
  a.ops.push_back(c);
  a.ops.push_back(inv);
  FiniteAlgebra b = parse_algebra(emit_algebra(a));
  CHECK(b.name == a.name);
  CHECK(b.size == a.size);
  REQUIRE(b.ops.size() == a.ops.size());
  for (size_t i = 0; i < a.ops.size(); ++i) {
    CHECK(b.ops[i].name == a.ops[i].name);
    CHECK(b.ops[i].arity == a.ops[i].arity);
    CHECK(b.ops[i].table == a.ops[i].table);
  }
}

TEST_CASE("partition literals canonicalize") {
  CHECK(part("|2,3|4,5|", 6) == part("|5,4|3,2|", 6));
  CHECK(part("|2,3|4,5|", 6) == part("|3,2|1|6|4,5|", 6));
  CHECK(part("|", 6) == Congruence::identity(6));
  CHECK(part("|1,2,3,4|", 4) == Congruence::total(4));
}

TEST_CASE("partition literal errors") {
  CHECK_THROWS_AS(part("|1,7|", 6), ParseError);
  CHECK_THROWS_AS(part("|1,2|2,3|", 6), ParseError);
  CHECK_THROWS_AS(part("1,2", 6), ParseError);
  CHECK_THROWS_AS(part("|1,x|", 6), ParseError);
}

TEST_CASE("format_partition omits singletons and round-trips") {
  Congruence c = part("|2,3|4,5|", 6);
  CHECK(format_partition(c) == "|2,3|4,5|");
  CHECK(format_partition(Congruence::identity(5)) == "|");
  CHECK(part(format_partition(c), 6) == c);
}

TEST_CASE("witness pairs use element names") {
  FiniteAlgebra a = no_op_algebra(4);
  CHECK(format_pair(a, 2, 3) == "(3,4)");
  a.elem_names = {"(1,1)", "(1,2)", "(2,1)", "(2,2)"};
  CHECK(format_pair(a, 0, 3) == "((1,1),(2,2))");
}
