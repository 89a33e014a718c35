#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace vesicle;

namespace {

RegisterMachine fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_machine(ss.str());
}

void check_parse_error(const char* text, std::size_t line) {
  try {
    parse_system(text);
    FAIL("expected a parse error for: " << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
  }
}

}  // namespace

TEST_CASE("hand-written TTS file") {
  const char* text =
      "SYSTEM TTS\n"
      "# comment\n"
      "ALPHABET X Z l0 a1\n"
      "TERMINAL a1\n"
      "TUBES 2\n"
      "OUTPUT 2\n"
      "AXIOM 1 {X}\n"
      "AXIOM 1 {l0 Z}\n"
      "RULE 1 MATE (X | . , Z | l0 ; .)\n"
      "FILTER 1 -> 2 SUPPORT {a1}\n"
      "FILTER 1 -> 2 SUPPORT {X l0}\n";
  const auto sys = parse_system(text);
  const auto& tts = std::get<TestTubeSystem>(sys);
  CHECK(tts.tubes == 2);
  CHECK(tts.axioms[0].size() == 2);
  CHECK(tts.axioms[0][1] == parse_multiset("Z l0"));
  REQUIRE(tts.filters.size() == 1);
  CHECK(tts.filters[0].filter.branches.size() == 2);
  CHECK(render(parse_system(render(sys))) == render(sys));
}

TEST_CASE("hand-written TP file") {
  const char* text =
      "SYSTEM TP\n"
      "ALPHABET B R\n"
      "TERMINAL\n"
      "CELLS 2\n"
      "OUTPUT 2\n"
      "AXIOM 1 {B}\n"
      "RULE 1 DRIP (. | B | . ; R , B) -> 2\n";
  const auto parsed = parse_system(text);
  const auto& tp = std::get<TissueSystem>(parsed);
  REQUIRE(tp.rules.size() == 1);
  CHECK(tp.rules[0].source == 1);
  CHECK(tp.rules[0].target == 2);
  CHECK(tp.output == 2);
}

TEST_CASE("malformed files") {
  check_parse_error("TUBES 2\n", 1);
  check_parse_error("SYSTEM TTS\nAXIOM 1 {a}\n", 2);
  check_parse_error("SYSTEM TTS\nTUBES 2\nAXIOM 3 {a}\n", 3);
  check_parse_error("SYSTEM TTS\nTUBES 1\nBOGUS\n", 3);
  check_parse_error("SYSTEM TP\nCELLS 2\nRULE 1 MATE (.|.,.|.;.)\n", 3);
  check_parse_error("SYSTEM TTS\nTUBES 1\nRULE 1 MATE (a|b)\n", 3);
  check_parse_error("SYSTEM TTS\nTUBES 1\nFILTER 1 2 SUPPORT {a}\n", 3);
  CHECK_THROWS_AS(parse_system("SYSTEM TTS\nTUBES 1\n"), ParseError);  // no OUTPUT
  CHECK_THROWS_AS(parse_system(""), ParseError);
}

TEST_CASE("compiled systems round trip byte for byte") {
  for (const char* f : {"even.rm", "mod3.rm", "eq.rm", "trap.rm"}) {
    for (auto c : {Construction::Thm1, Construction::Cor2, Construction::Cor3, Construction::Thm4}) {
      for (auto fid : {Fidelity::Guarded, Fidelity::Faithful}) {
        const auto sys = compile(fixture(f), {.construction = c, .fidelity = fid});
        const std::string text = render(sys);
        const auto back = parse_system(text);
        CHECK(render(back) == text);
        CHECK(back.index() == sys.index());
      }
    }
  }
}

TEST_CASE("random systems round trip") {
  std::mt19937 rng(3);
  const std::vector<std::string> pool = {"a", "b", "c"};
  for (int i = 0; i < 200; ++i) {
    TestTubeSystem tts(1 + rng() % 3);
    for (const auto& n : pool) tts.alphabet.emplace_back(n);
    tts.outputs = {1};
    for (auto& ax : tts.axioms) ax.push_back(oracle::random_multiset(rng, pool, 4));
    tts.rules[0].push_back(DripRule{oracle::random_multiset(rng, pool, 2), oracle::random_multiset(rng, pool, 2),
                                    oracle::random_multiset(rng, pool, 2), oracle::random_multiset(rng, pool, 2),
                                    oracle::random_multiset(rng, pool, 2),
                                    rng() % 2 ? DripMode::OneSided : DripMode::TwoSided});
    const std::string text = render(tts);
    const auto back = std::get<TestTubeSystem>(parse_system(text));
    CHECK(back.axioms == tts.axioms);
    CHECK(back.rules == tts.rules);
    CHECK(render(back) == text);
  }
}
