#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "vesicle/verify.hpp"

using namespace vesicle;

namespace {

Multiset P(const char* text) { return parse_multiset(text); }

RegisterMachine fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_machine(ss.str());
}

bool has_axiom(const std::vector<Vesicle>& axioms, const char* text) {
  return std::find(axioms.begin(), axioms.end(), P(text)) != axioms.end();
}

bool has_rule(const std::vector<Rule>& rules, const char* text) {
  const Rule r = parse_rule(text);
  return std::find(rules.begin(), rules.end(), r) != rules.end();
}

const char* const kFixtures[] = {"even.rm", "mod3.rm", "eq.rm", "trap.rm"};

}  // namespace

TEST_CASE("thm1 faithful axioms and metrics") {
  const auto tts = compile_thm1(fixture("even.rm"), {.fidelity = Fidelity::Faithful});
  CHECK(has_axiom(tts.axioms[0], "@X"));
  CHECK(has_axiom(tts.axioms[0], "@Z l0"));
  CHECK(has_axiom(tts.axioms[0], "@F"));
  const auto m = metrics(tts);
  CHECK(m.units == 3);
  CHECK(m.max_axiom_weight == 3);
  CHECK(m.max_mate_weight == 5);
  CHECK(m.drip_rules + m.drip1_rules == 0);
  CHECK(summary(m) == "tubes=3 axiom≤3 mate≤5");
  CHECK(ok(validate_tts(tts)));
}

TEST_CASE("cor2 and cor3 shapes") {
  for (const char* f : kFixtures) {
    for (auto fid : {Fidelity::Guarded, Fidelity::Faithful}) {
      const auto c2 = compile_cor2(fixture(f), {.fidelity = fid});
      const auto m2 = metrics(c2);
      CHECK(m2.max_axiom_weight == 1);
      CHECK(m2.max_drip_weight <= 4);
      CHECK(m2.max_mate_weight <= 5);
      CHECK(ok(validate_tts(c2)));
      const auto c3 = compile_cor3(fixture(f), {.fidelity = fid});
      const auto m3 = metrics(c3);
      CHECK(m3.mate_rules == 0);
      CHECK(m3.drip_rules == 0);
      CHECK(m3.max_axiom_weight == 1);
      CHECK(m3.max_drip1_weight <= 4);
      CHECK(ok(validate_tts(c3)));
    }
  }
  CHECK(has_rule(compile_cor2(fixture("even.rm"), {.fidelity = Fidelity::Faithful}).rules[0],
                 "DRIP (. | @g | . ; @X , .)"));
  CHECK(has_rule(compile_cor2(fixture("even.rm")).rules[0], "DRIP (. | @g | . ; @XH , .)"));
}

TEST_CASE("cor3 translates the ADD mate into a one-sided drip") {
  const auto c3 = compile_cor3(fixture("even.rm"));
  CHECK(has_rule(c3.rules[0], "DRIP1 (@X | ld | . ; ld b1 , .)"));
  const auto out = apply_drip1(std::get<DripRule>(parse_rule("DRIP1 (@X | ld | . ; ld b1 , .)")), P("@X ld a1 b1"));
  REQUIRE(out);
  CHECK(out->first == P("@X a1 b1^2 ld"));
  CHECK(out->second == P("."));
}

TEST_CASE("thm4 metrics per fidelity") {
  for (const char* f : kFixtures) {
    const auto g = metrics(compile_thm4(fixture(f)));
    CHECK(g.units == 5);
    CHECK(g.max_mate_weight <= 5);
    CHECK(g.max_drip_weight <= 5);
    CHECK(g.max_axiom_weight <= 3);
    const auto faithful = metrics(compile_thm4(fixture(f), {.fidelity = Fidelity::Faithful}));
    CHECK(faithful.max_mate_weight <= 5);
    CHECK(faithful.max_drip_weight == 7);  // |R| + |B'_s B_s| + |s| for a 3-symbol axiom s
    CHECK(ok(validate_tp(compile_thm4(fixture(f)))));
  }
}

TEST_CASE("compilation errors") {
  auto m = fixture("even.rm");
  m.inputs = 0;
  CHECK_THROWS_AS(compile_thm1(m), CompileError);
  m = fixture("even.rm");
  m.inputs = 2;
  CHECK_THROWS_AS(compile_thm4(m), ParseError);  // rejected by machine validation
  CHECK_THROWS_AS(parse_machine("REGISTERS 1\nINPUTS 1\nSTART @x\n@x HALT\n"), ParseError);
  auto clash = parse_machine("REGISTERS 1\nINPUTS 1\nSTART b1\nb1 HALT\n");
  CHECK_THROWS_AS(compile_cor2(clash), CompileError);
  CHECK_THROWS_AS(parse_construction("thm9"), std::invalid_argument);
  CHECK(parse_construction("cor3") == Construction::Cor3);
}

TEST_CASE("compilation is deterministic") {
  for (const char* f : kFixtures)
    for (auto c : {Construction::Thm1, Construction::Cor2, Construction::Cor3, Construction::Thm4})
      CHECK(render(compile(fixture(f), {.construction = c})) ==
            render(compile(fixture(f), {.construction = c})));
}

TEST_CASE("empty system metrics") {
  const auto m = metrics(TestTubeSystem(1));
  CHECK(m.max_axiom_weight == 0);
  CHECK(m.max_mate_weight == 0);
  CHECK(m.max_drip_weight == 0);
  CHECK(m.max_drip1_weight == 0);
}

TEST_CASE("guarded constructions agree with the interpreter on fixtures") {
  for (const char* f : kFixtures) {
    for (auto c : {Construction::Thm1, Construction::Cor2, Construction::Cor3, Construction::Thm4}) {
      VerifyOptions opts;
      opts.compile.construction = c;
      opts.bound = 3;
      opts.fuel = 500;
      opts.max_steps = 40;
      const auto m = fixture(f);
      const auto rep = verify(m, f, opts);
      INFO(render(rep));
      CHECK(rep.match());
      // The oracle is recomputed here straight from the interpreter.
      std::set<Registers> expect;
      const std::size_t k = m.inputs;
      Registers v(k, 0);
      for (;;) {
        if (run(m, v, 500).accepted()) expect.insert(v);
        std::size_t i = 0;
        while (i < k && v[i] == 3) v[i++] = 0;
        if (i == k) break;
        ++v[i];
      }
      CHECK(rep.oracle == expect);
    }
  }
}

TEST_CASE("faithful thm1 on the trap machine accepts a vector the machine rejects") {
  VerifyOptions opts;
  opts.compile.fidelity = Fidelity::Faithful;
  opts.bound = 2;
  const auto rep = verify(fixture("trap.rm"), "trap", opts);
  CHECK(rep.oracle.empty());
  CHECK(rep.system.count(Registers{1}));
  CHECK_FALSE(rep.match());
}

TEST_CASE("random machines: guarded thm1 and thm4 agree with the interpreter") {
  std::mt19937 rng(2024);
  int compared = 0;
  for (int i = 0; i < 12; ++i) {
    const auto m = oracle::random_machine(rng, 4);
    for (auto c : {Construction::Thm1, Construction::Thm4}) {
      VerifyOptions opts;
      opts.compile.construction = c;
      opts.bound = 2;
      opts.fuel = 300;
      opts.max_steps = 40;
      opts.bounds.max_vesicle_size = 9;
      opts.bounds.max_population = 20000;
      const auto rep = verify(m, "random", opts);
      INFO(render(m));
      INFO(render(rep));
      // Results outside the explored bounds may be missing; anything found
      // must be accepted by the machine.
      CHECK(rep.unexpected.empty());
      ++compared;
    }
  }
  CHECK(compared == 24);
}
