#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "cardenc/cnf.hpp"
#include "cardenc/seqcounter.hpp"
#include "cardenc/solve.hpp"

using namespace cardenc;

namespace {

struct TruthTable {
  unsigned long long total = 0;      // models over all variables
  unsigned long long projected = 0;  // distinct main-block assignments
  bool sat = false;
};

TruthTable truth_table(const Formula& f) {
  const int v = f.num_vars();
  TruthTable t;
  std::set<unsigned> mains_seen;
  for (unsigned long long bits = 0; bits < (1ull << v); ++bits) {
    std::vector<bool> a(v + 1, false);
    for (int i = 0; i < v; ++i) a[i + 1] = (bits >> i) & 1;
    if (!check_model(f, a)) continue;
    ++t.total;
    t.sat = true;
    mains_seen.insert(
        static_cast<unsigned>(bits & ((1ull << f.num_main()) - 1)));
  }
  t.projected = mains_seen.size();
  return t;
}

Formula random_formula(std::mt19937& rng) {
  const int v = 1 + static_cast<int>(rng() % 10);
  const int mains = 1 + static_cast<int>(rng() % v);
  Formula f(mains);
  for (int i = mains; i < v; ++i) f.fresh_var();
  const int m = 1 + static_cast<int>(rng() % (3 * v));
  for (int c = 0; c < m; ++c) {
    const int width = 1 + static_cast<int>(rng() % 3);
    std::vector<int> vars(v);
    for (int i = 0; i < v; ++i) vars[i] = i + 1;
    std::shuffle(vars.begin(), vars.end(), rng);
    Clause cl;
    for (int k = 0; k < std::min(width, v); ++k)
      cl.push_back(Lit(vars[k], rng() % 2 == 0));
    f.add_clause(std::move(cl));
  }
  return f;
}

}  // namespace

TEST_CASE("trivial formulas") {
  Formula f(1);
  f.add_clause({pos(1)});
  f.add_clause({neg(1)});
  CHECK(solve(f).status == SolveStatus::Unsat);

  Formula g(1);
  g.add_clause({pos(1)});
  const SolveResult r = solve(g);
  REQUIRE(r.status == SolveStatus::Sat);
  REQUIRE(r.model.has_value());
  CHECK((*r.model)[1]);
}

TEST_CASE("solve agrees with exhaustive truth tables") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const Formula f = random_formula(rng);
    const TruthTable t = truth_table(f);
    for (unsigned seed : {1u, 2u, 3u}) {
      const SolveResult r = solve(f, seed);
      REQUIRE(r.status == (t.sat ? SolveStatus::Sat : SolveStatus::Unsat));
      if (r.status == SolveStatus::Sat) CHECK(check_model(f, *r.model));
    }
  }
}

TEST_CASE("enumeration counts agree with exhaustive truth tables") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Formula f = random_formula(rng);
    const TruthTable t = truth_table(f);
    const auto all = enumerate_models(f, Projection::AllVars);
    const auto proj = enumerate_models(f, Projection::MainsOnly);
    REQUIRE(all.exact);
    REQUIRE(proj.exact);
    CHECK(all.count == t.total);
    CHECK(proj.count == t.projected);
    CHECK(all.count >= proj.count);
  }
}

TEST_CASE("collected models are genuine and distinct") {
  Formula f(3);
  f.add_clause({pos(1), pos(2), pos(3)});
  const auto res = enumerate_models(f, Projection::AllVars, 1000, 1000);
  REQUIRE(res.exact);
  CHECK(res.count == 7);
  REQUIRE(res.models.size() == 7);
  std::set<std::vector<bool>> uniq;
  for (const auto& m : res.models) {
    CHECK(check_model(f, m));
    uniq.insert(m);
  }
  CHECK(uniq.size() == 7);
}

TEST_CASE("cap yields a lower bound and clears the exact flag") {
  Formula f(4);
  f.add_clause({pos(1), pos(2)});
  const auto res = enumerate_models(f, Projection::AllVars, 5);
  CHECK_FALSE(res.exact);
  CHECK(res.count == 5);
}

TEST_CASE("seq-counter instance solves SAT above and UNSAT below the bound") {
  // sum x_i <= 3 plus at-least-one clauses per block forces exactly the
  // covering behavior: with four disjoint demands and bound 3 it is UNSAT.
  Formula f(8);
  encode_seqcounter(f, f.main_vars(), 3);
  f.add_clause({pos(1), pos(2)});
  f.add_clause({pos(3), pos(4)});
  f.add_clause({pos(5), pos(6)});
  f.add_clause({pos(7), pos(8)});
  CHECK(solve(f, 1).status == SolveStatus::Unsat);

  Formula g(8);
  encode_seqcounter(g, g.main_vars(), 4);
  g.add_clause({pos(1), pos(2)});
  g.add_clause({pos(3), pos(4)});
  g.add_clause({pos(5), pos(6)});
  g.add_clause({pos(7), pos(8)});
  CHECK(solve(g, 1).status == SolveStatus::Sat);
}

TEST_CASE("enumeration is independent of clause order") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Formula f = random_formula(rng);
    Formula g(f.num_main());
    for (int i = f.num_main(); i < f.num_vars(); ++i) g.fresh_var();
    std::vector<Clause> cls = f.clauses();
    std::shuffle(cls.begin(), cls.end(), rng);
    for (Clause& c : cls) g.add_clause(std::move(c));
    CHECK(enumerate_models(f, Projection::MainsOnly).count ==
          enumerate_models(g, Projection::MainsOnly).count);
  }
}
