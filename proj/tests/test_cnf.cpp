#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "cardenc/cnf.hpp"
#include "cardenc/dimacs.hpp"

using namespace cardenc;

TEST_CASE("literal basics") {
  const Lit a = pos(3), b = neg(3);
  CHECK(a.var() == 3);
  CHECK_FALSE(a.negated());
  CHECK(b.negated());
  CHECK((~a) == b);
  CHECK((~b) == a);
}

TEST_CASE("formula construction and variable allocation") {
  Formula f(4);
  CHECK(f.num_main() == 4);
  CHECK(f.num_vars() == 4);
  CHECK(f.num_aux() == 0);
  const Var v = f.fresh_var();
  CHECK(v == 5);
  CHECK(f.num_vars() == 5);
  CHECK(f.num_aux() == 1);
  CHECK(f.main_vars() == std::vector<Var>{1, 2, 3, 4});
}

TEST_CASE("clause normalization: sorted by var, duplicates merged") {
  Formula f(3);
  f.add_clause({pos(3), neg(1), pos(3), pos(2)});
  REQUIRE(f.clauses().size() == 1);
  const Clause& c = f.clauses()[0];
  REQUIRE(c.size() == 3);
  CHECK(c[0] == neg(1));
  CHECK(c[1] == pos(2));
  CHECK(c[2] == pos(3));
}

TEST_CASE("degenerate clauses are rejected") {
  Formula f(2);
  CHECK_THROWS_AS(f.add_clause({}), EmptyClauseError);
  CHECK_THROWS_AS(f.add_clause({pos(1), neg(1)}), TautologyError);
  CHECK_THROWS_AS(f.add_clause({pos(3)}), UnallocatedVariableError);
  CHECK_THROWS_AS(f.add_clause({Lit(0)}), UnallocatedVariableError);
  CHECK(f.clauses().empty());
}

TEST_CASE("stats count clauses, literals, and main-variable literals") {
  Formula f(2);
  const Var a = f.fresh_var();
  f.add_clause({pos(1), neg(2), pos(a)});
  f.add_clause({neg(a)});
  const EncodingStats s = f.stats();
  CHECK(s.aux_vars == 1);
  CHECK(s.clauses == 2);
  CHECK(s.literals == 4);
  CHECK(s.main_var_literals == 2);
}

TEST_CASE("counting-only mode reports identical stats without storage") {
  Formula keep(3), count(3);
  count.set_counting_only(true);
  for (Formula* f : {&keep, &count}) {
    const Var a = f->fresh_var();
    f->add_clause({pos(1), pos(2)});
    f->add_clause({neg(2), pos(a)});
    f->add_clause({neg(a), pos(3), pos(1)});
  }
  CHECK(keep.stats() == count.stats());
  CHECK(count.clauses().empty());
  CHECK(keep.clauses().size() == 3);
}

TEST_CASE("dimacs writing") {
  Formula f(2);
  f.add_comment("mains 2");
  f.add_clause({pos(1), neg(2)});
  f.add_clause({pos(2)});
  const std::string text = write_dimacs(f);
  CHECK(text == "c mains 2\np cnf 2 2\n1 -2 0\n2 0\n");
}

TEST_CASE("dimacs round-trip preserves clauses and main count") {
  Formula f(3);
  const Var a = f.fresh_var();
  f.add_comment("mains 3");
  f.add_clause({pos(1), pos(2), neg(3)});
  f.add_clause({neg(1), pos(a)});
  const Formula g = read_dimacs(write_dimacs(f));
  CHECK(g.num_main() == 3);
  CHECK(g.num_vars() == 4);
  REQUIRE(g.clauses().size() == 2);
  CHECK(g.clauses() == f.clauses());
}

TEST_CASE("dimacs reader defaults mains to the declared variable count") {
  const Formula f = read_dimacs(std::string("p cnf 3 1\n1 2 3 0\n"));
  CHECK(f.num_main() == 3);
}

TEST_CASE("dimacs reader rejects malformed input") {
  CHECK_THROWS_AS(read_dimacs(std::string("garbage\n")), ParseError);
  CHECK_THROWS_AS(read_dimacs(std::string("p cnf 2 1\n1 3 0\n")), ParseError);
  CHECK_THROWS_AS(read_dimacs(std::string("p cnf 2 2\n1 0\n")), CountMismatch);
  CHECK_THROWS_AS(read_dimacs(std::string("p cnf 2 1\n1 0\n2 0\n")),
                  CountMismatch);
}
