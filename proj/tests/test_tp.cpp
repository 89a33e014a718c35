#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "vesicle/tp.hpp"

using namespace vesicle;

namespace {

Multiset P(const char* text) { return parse_multiset(text); }
Symbol S(const char* name) { return Symbol(name); }

RegisterMachine fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_machine(ss.str());
}

std::set<Multiset> as_set(const std::vector<Vesicle>& v) { return {v.begin(), v.end()}; }

std::vector<std::set<Multiset>> cells_of(const TPState& st) {
  std::vector<std::set<Multiset>> out;
  for (const auto& c : st.contents) out.push_back(as_set(c));
  return out;
}

TissueSystem random_tissue(std::mt19937& rng) {
  const std::vector<std::string> pool = {"p", "q", "r"};
  TissueSystem sys(std::uniform_int_distribution<std::size_t>(1, 3)(rng));
  for (const auto& n : pool) sys.alphabet.push_back(S(n.c_str()));
  sys.terminal = {S("p")};
  sys.output = sys.cells;
  std::uniform_int_distribution<std::size_t> cell(1, sys.cells);
  for (std::size_t c = 0; c < sys.cells; ++c)
    for (int i = 0; i < 3; ++i) sys.axioms[c].push_back(oracle::random_multiset(rng, pool, 3));
  for (int i = 0; i < 4; ++i) {
    Rule r;
    if (rng() % 2) {
      r = MateRule{oracle::random_multiset(rng, pool, 1), oracle::random_multiset(rng, pool, 1),
                   oracle::random_multiset(rng, pool, 1), oracle::random_multiset(rng, pool, 1),
                   oracle::random_multiset(rng, pool, 1)};
    } else {
      r = DripRule{oracle::random_multiset(rng, pool, 1), oracle::random_multiset(rng, pool, 2),
                   oracle::random_multiset(rng, pool, 1), oracle::random_multiset(rng, pool, 1),
                   oracle::random_multiset(rng, pool, 1), rng() % 2 ? DripMode::TwoSided : DripMode::OneSided};
    }
    sys.rules.push_back({cell(rng), r, cell(rng)});
  }
  return sys;
}

}  // namespace

TEST_CASE("regeneration drip moves both outcomes and consumes the operand") {
  TissueSystem sys(2);
  sys.alphabet = {S("B"), S("R"), S("P")};
  sys.axioms[0] = {P("B")};
  sys.rules = {{1, DripRule{{}, P("B"), {}, P("R"), P("P B")}, 2}};
  const auto st = tp_step(sys, tp_initial(sys), {});
  CHECK(st.step == 1);
  CHECK(st.contents[0].empty());
  CHECK(as_set(st.contents[1]) == std::set<Multiset>{P("R"), P("P B")});
}

TEST_CASE("one operand, two rules: both fire, operand removed once") {
  TissueSystem sys(2);
  sys.alphabet = {S("a"), S("b"), S("c")};
  sys.axioms[0] = {P("a")};
  sys.rules = {{1, DripRule{{}, P("a"), {}, P("b"), {}}, 2}, {1, DripRule{{}, P("a"), {}, P("c"), {}}, 2}};
  const auto st = tp_step(sys, tp_initial(sys), {});
  CHECK(st.contents[0].empty());
  CHECK(as_set(st.contents[1]) == std::set<Multiset>{P("b"), P("c"), P(".")});
}

TEST_CASE("inert vesicles persist and systems without rules are constant") {
  TissueSystem sys(2);
  sys.alphabet = {S("a"), S("z")};
  sys.terminal = {S("a")};
  sys.output = 2;
  sys.axioms[0] = {P("z")};
  sys.axioms[1] = {P("a^2")};
  const auto run = tp_run(sys, 15, {});
  for (const auto& counts : run.population) CHECK(counts == std::vector<std::size_t>{1, 1});
  CHECK(run.final.contents[0] == std::vector<Vesicle>{P("z")});
  CHECK(run.results == ResultSet{P("a^2")});
  CHECK_FALSE(run.pruned);
}

TEST_CASE("zero steps report the terminal axioms of the output cell") {
  TissueSystem sys(1);
  sys.alphabet = {S("a"), S("b")};
  sys.terminal = {S("a")};
  sys.axioms[0] = {P("a"), P("a b")};
  sys.rules = {{1, DripRule{{}, P("b"), {}, {}, {}}, 1}};
  const auto run = tp_run(sys, 0, {});
  CHECK(run.results == ResultSet{P("a")});
  CHECK(run.population.size() == 1);
}

TEST_CASE("oversize results are dropped with pruned set") {
  TissueSystem sys(1);
  sys.alphabet = {S("a")};
  sys.axioms[0] = {P("a")};
  sys.rules = {{1, MateRule{{}, {}, {}, {}, P("a")}, 1}};
  ExplorationBounds b;
  b.max_vesicle_size = 4;
  const auto run = tp_run(sys, 10, b);
  CHECK(run.pruned);
  for (const auto& v : run.final.contents[0]) CHECK(v.size() <= 4);
}

TEST_CASE("validate_tp") {
  TissueSystem sys(2);
  sys.alphabet = {S("a")};
  sys.output = 2;
  CHECK(ok(validate_tp(sys)));
  sys.rules = {{1, DripRule{{}, P("a"), {}, {}, {}}, 0}};
  CHECK_FALSE(ok(validate_tp(sys)));
  sys.rules = {{1, DripRule{{}, P("a"), {}, {}, {}}, 1}};
  const auto v = validate_tp(sys);
  CHECK(ok(v));
  CHECK(!v.empty());  // self-loop warning
  sys.rules.clear();
  sys.axioms[0] = {P("q")};
  CHECK_FALSE(ok(validate_tp(sys)));
}

TEST_CASE("random tissue systems: tp_step equals the naive step") {
  std::mt19937 rng(11);
  ExplorationBounds b;
  b.max_vesicle_size = 1000;
  b.max_population = 1000000;
  for (int i = 0; i < 200; ++i) {
    const auto sys = random_tissue(rng);
    REQUIRE(ok(validate_tp(sys)));
    auto st = tp_initial(sys);
    for (int k = 0; k < 4 && st.population() < 300; ++k) {
      const auto expect = oracle::naive_tp_step(sys, cells_of(st));
      st = tp_step(sys, st, b);
      CHECK(cells_of(st) == expect);
      REQUIRE_FALSE(st.pruned);
    }
  }
}

TEST_CASE("thm4 M_even: 40 steps reach the expected results") {
  const auto sys = compile_thm4(fixture("even.rm"));
  CHECK(ok(validate_tp(sys)));
  ExplorationBounds b;
  b.max_vesicle_size = 12;
  const auto run = tp_run(sys, 40, b);
  CHECK(run.results.count(P(".")));
  CHECK(run.results.count(P("a1^2")));
  CHECK(run.results.count(P("a1^4")));
  for (const auto& r : run.results) CHECK(r.count(S("a1")) % 2 == 0);
}

TEST_CASE("tp_run is deterministic") {
  const auto sys = compile_thm4(fixture("eq.rm"));
  ExplorationBounds b;
  b.max_vesicle_size = 9;
  const auto a = tp_run(sys, 20, b);
  const auto c = tp_run(sys, 20, b);
  CHECK(a.population == c.population);
  CHECK(a.final.contents == c.final.contents);
  CHECK(a.results == c.results);
}
