#include "vesicle/compilers.hpp"

#include <algorithm>
#include <set>

namespace vesicle {

std::string_view to_string(Construction c) {
  switch (c) {
    case Construction::Thm1: return "thm1";
    case Construction::Cor2: return "cor2";
    case Construction::Cor3: return "cor3";
    case Construction::Thm4: return "thm4";
  }
  return "?";
}

std::string_view to_string(Fidelity f) {
  return f == Fidelity::Faithful ? "faithful" : "guarded";
}

Construction parse_construction(std::string_view name) {
  for (auto c : {Construction::Thm1, Construction::Cor2, Construction::Cor3, Construction::Thm4})
    if (to_string(c) == name) return c;
  throw std::invalid_argument("unknown construction '" + std::string(name) +
                              "' (expected thm1, cor2, cor3 or thm4)");
}

namespace {

Symbol sym(const std::string& name) { return Symbol(name); }

Multiset ms(std::initializer_list<Symbol> symbols) { return Multiset(symbols); }

MateRule mate(Multiset u, Multiset a, Multiset b, Multiset v, Multiset x = {}) {
  return MateRule{std::move(u), std::move(a), std::move(b), std::move(v), std::move(x)};
}

DripRule drip(Multiset u, Multiset c, Multiset v, Multiset y, Multiset z,
              DripMode mode = DripMode::TwoSided) {
  return DripRule{std::move(u), std::move(c), std::move(v), std::move(y), std::move(z), mode};
}

template <typename T>
void push_unique(std::vector<T>& out, T item) {
  if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(std::move(item));
}

// Names shared by all constructions.
struct Names {
  const RegisterMachine& m;

  Symbol label(const std::string& l) const { return sym(l); }
  Symbol a(std::size_t i) const { return sym("a" + std::to_string(i)); }
  Symbol b(std::size_t r) const { return sym("b" + std::to_string(r)); }
  Symbol X() const { return sym("@X"); }
  Symbol XH() const { return sym("@XH"); }
  Symbol Y() const { return sym("@Y"); }
  Symbol Z() const { return sym("@Z"); }
  Symbol F() const { return sym("@F"); }
  Symbol R() const { return sym("@R"); }
  Symbol g() const { return sym("@g"); }
  Symbol A(const std::string& l) const { return sym("@A." + l); }
  Symbol Ap(const std::string& l) const { return sym("@Ap." + l); }
  Symbol App(const std::string& l) const { return sym("@App." + l); }
  Symbol K(char which, std::size_t r) const {
    return sym(std::string("@K") + which + "." + std::to_string(r));
  }
};

RegisterMachine prepare(const RegisterMachine& input, const CompileOptions& opts) {
  input.validate();
  if (input.inputs == 0)
    throw CompileError("arity mismatch: the machine declares no input registers");
  if (input.inputs > input.registers)
    throw CompileError("arity mismatch: " + std::to_string(input.inputs) +
                       " inputs but only " + std::to_string(input.registers) + " registers");
  for (const auto& [label, instr] : input.program) {
    if (Symbol::is_reserved(label))
      throw CompileError("label '" + label + "' uses the reserved '@' prefix");
    for (std::size_t i = 1; i <= input.registers; ++i)
      if (label == "a" + std::to_string(i) || label == "b" + std::to_string(i))
        throw CompileError("label '" + label + "' collides with a generated register symbol");
  }
  return opts.auto_normalize ? normalize_clearing(input) : input;
}

template <typename T>
const T* as(const Instruction& i) {
  return std::get_if<T>(&i);
}

// ---------------------------------------------------------------------------
// thm1, recorded with the second-operand axioms of every mate rule so
// cor2 and cor3 can be derived from it.

struct MateEmission {
  std::size_t tube;  // 1 or 2
  MateRule rule;
  /// Axioms of `tube` the rule is meant to take as its second operand.
  std::vector<Multiset> partners;
};

struct Thm1Blueprint {
  std::vector<Symbol> alphabet;
  std::vector<Symbol> terminal;
  std::vector<Multiset> axioms[2];
  std::vector<MateEmission> mates;
  std::vector<FilterEdge> filters;
};

Thm1Blueprint thm1_blueprint(const RegisterMachine& m, Fidelity fidelity) {
  const Names n{m};
  const bool guarded = fidelity == Fidelity::Guarded;
  Thm1Blueprint bp;

  for (const auto& [label, instr] : m.program) bp.alphabet.push_back(n.label(label));
  for (Symbol s : {n.X(), n.Y(), n.Z(), n.F()}) bp.alphabet.push_back(s);
  if (guarded) bp.alphabet.push_back(n.XH());
  for (std::size_t i = 1; i <= m.inputs; ++i) bp.alphabet.push_back(n.a(i));
  for (std::size_t r = 1; r <= m.registers; ++r) bp.alphabet.push_back(n.b(r));
  for (const auto& [label, instr] : m.program) {
    if (std::holds_alternative<HaltInstr>(instr)) continue;
    bp.alphabet.push_back(n.A(label));
    if (as<SubInstr>(instr)) {
      bp.alphabet.push_back(n.Ap(label));
      bp.alphabet.push_back(n.App(label));
    }
  }
  for (std::size_t i = 1; i <= m.inputs; ++i) bp.terminal.push_back(n.a(i));

  const Symbol l0 = n.label(m.start);
  const Symbol lh = n.label(m.halt);
  const Symbol loader = guarded ? n.XH() : n.X();
  auto& a1 = bp.axioms[0];
  auto& a2 = bp.axioms[1];

  a1.push_back(ms({loader}));
  a1.push_back(ms({n.Z(), l0}));
  a1.push_back(ms({n.F()}));
  std::vector<Multiset> loads;
  for (std::size_t i = 1; i <= m.inputs; ++i) loads.push_back(ms({n.a(i), n.b(i), n.Y()}));
  a1.insert(a1.end(), loads.begin(), loads.end());

  // Initialization: load one more unit into every input, or attach l0.
  bp.mates.push_back({1, mate(ms({loader}), {}, ms({n.Y()}), {}), loads});
  if (guarded)
    bp.mates.push_back({1, mate({}, ms({n.XH()}), ms({n.Z()}), ms({l0}), ms({n.X()})),
                        {ms({n.Z(), l0})}});
  else
    bp.mates.push_back({1, mate(ms({n.X()}), {}, ms({n.Z()}), ms({l0})), {ms({n.Z(), l0})}});
  bp.mates.push_back({1, mate({}, ms({lh, n.X()}), ms({n.F()}), {}), {ms({n.F()})}});

  for (const auto& [label, instr] : m.program) {
    const Symbol l1 = n.label(label);
    if (const auto* add = as<AddInstr>(instr)) {
      const Multiset axiom{n.A(label), n.label(add->next), n.b(add->reg)};
      a1.push_back(axiom);
      bp.mates.push_back({1,
                          mate(ms({n.X()}), ms({l1}), ms({n.A(label)}),
                               ms({n.label(add->next), n.b(add->reg)})),
                          {axiom}});
    } else if (const auto* sub = as<SubInstr>(instr)) {
      const Multiset dec{n.A(label), n.label(sub->next_nonzero)};
      const Multiset guess{n.Ap(label)};
      const Multiset resume{n.App(label), n.label(sub->next_zero)};
      a1.push_back(dec);
      a1.push_back(guess);
      a2.push_back(resume);
      bp.mates.push_back({1,
                          mate(ms({n.X()}), ms({l1, n.b(sub->reg)}), ms({n.A(label)}),
                               ms({n.label(sub->next_nonzero)})),
                          {dec}});
      bp.mates.push_back({1, mate(ms({n.X()}), ms({l1}), {}, ms({n.Ap(label)})), {guess}});
      bp.mates.push_back({2,
                          mate(ms({n.X()}), ms({n.Ap(label)}), ms({n.App(label)}),
                               ms({n.label(sub->next_zero)})),
                          {resume}});
    }
  }

  // (1 -> 2): a vesicle guessing "register r is zero" may only leave tube 1
  // when it carries no b_r.
  Filter check;
  for (std::size_t r = 1; r <= m.registers; ++r) {
    std::vector<Symbol> w = bp.terminal;
    w.push_back(n.X());
    for (std::size_t i = 1; i <= m.registers; ++i)
      if (i != r) w.push_back(n.b(i));
    for (const auto& [label, instr] : m.program)
      if (const auto* sub = as<SubInstr>(instr); sub && sub->reg == r) w.push_back(n.Ap(label));
    check.branches.emplace_back(std::move(w));
  }
  std::vector<Symbol> back;
  for (Symbol s : bp.alphabet) {
    const bool marker = s.name().starts_with("@Ap.") || s.name().starts_with("@App.");
    if (!marker) back.push_back(s);
  }
  bp.filters.push_back({1, 2, std::move(check)});
  bp.filters.push_back({2, 1, Filter{{SupportFilter(std::move(back))}}});
  bp.filters.push_back({1, 3, Filter{{SupportFilter(bp.terminal)}}});
  return bp;
}

TestTubeSystem tts_skeleton(const Thm1Blueprint& bp) {
  TestTubeSystem tts(3);
  tts.alphabet = bp.alphabet;
  tts.terminal = bp.terminal;
  tts.outputs = {3};
  tts.filters = bp.filters;
  return tts;
}

}  // namespace

TestTubeSystem compile_thm1(const RegisterMachine& input, const CompileOptions& opts) {
  const RegisterMachine m = prepare(input, opts);
  const Thm1Blueprint bp = thm1_blueprint(m, opts.fidelity);
  TestTubeSystem tts = tts_skeleton(bp);
  for (std::size_t t = 0; t < 2; ++t) tts.axioms[t] = bp.axioms[t];
  for (const auto& e : bp.mates) tts.rules[e.tube - 1].push_back(e.rule);
  return tts;
}

TestTubeSystem compile_cor2(const RegisterMachine& input, const CompileOptions& opts) {
  const RegisterMachine m = prepare(input, opts);
  const Thm1Blueprint bp = thm1_blueprint(m, opts.fidelity);
  const Names n{m};
  TestTubeSystem tts = tts_skeleton(bp);
  tts.alphabet.push_back(n.g());
  for (const auto& e : bp.mates) tts.rules[e.tube - 1].push_back(e.rule);
  for (std::size_t t = 0; t < 2; ++t) {
    tts.axioms[t] = {ms({n.g()})};
    for (const auto& ax : bp.axioms[t]) tts.rules[t].push_back(drip({}, ms({n.g()}), {}, ax, {}));
    tts.rules[t].push_back(drip({}, ms({n.g()}), {}, ms({n.g()}), {}));
  }
  return tts;
}

TestTubeSystem compile_cor3(const RegisterMachine& input, const CompileOptions& opts) {
  const RegisterMachine m = prepare(input, opts);
  const Thm1Blueprint bp = thm1_blueprint(m, opts.fidelity);
  const Names n{m};
  TestTubeSystem tts = tts_skeleton(bp);
  tts.alphabet.push_back(n.g());

  std::set<Multiset> operands[2];
  for (const auto& e : bp.mates) {
    for (const auto& partner : e.partners) {
      // (u|a,b|v;x) on the whole axiom bv' becomes (u|a|; v'x, ) with v' = axiom - b.
      auto rest = mdiff(partner, e.rule.b);
      if (!rest || !contains(*rest, e.rule.v))
        throw std::logic_error("mate partner does not contain b+v");
      tts.rules[e.tube - 1].push_back(
          drip(e.rule.u, e.rule.a, {}, msum(*rest, e.rule.x), {}, DripMode::OneSided));
      operands[e.tube - 1].insert(partner);
    }
  }
  for (std::size_t t = 0; t < 2; ++t) {
    tts.axioms[t] = {ms({n.g()})};
    for (const auto& ax : bp.axioms[t])
      if (!operands[t].count(ax))
        tts.rules[t].push_back(drip({}, ms({n.g()}), {}, ax, {}, DripMode::OneSided));
  }
  return tts;
}

// ---------------------------------------------------------------------------
// thm4: five cells. Cell 1 simulates instructions, cell 2 returns
// vesicles to cell 1, cells 3/4 run the zero-check clock, cell 5 collects
// results. Axiom vesicles are consumed when used, so every axiom s is
// regenerated every two steps from a generator vesicle {@B.s}.

TissueSystem compile_thm4(const RegisterMachine& input, const CompileOptions& opts) {
  const RegisterMachine m = prepare(input, opts);
  const Names n{m};
  const bool guarded = opts.fidelity == Fidelity::Guarded;
  TissueSystem sys(5);
  sys.output = 5;

  const Symbol l0 = n.label(m.start);
  const Symbol lh = n.label(m.halt);
  const Symbol loader = guarded ? n.XH() : n.X();

  // The regenerated axioms s, each with a symbol that identifies it among the
  // vesicles passing through cell 2 (used by the guarded return rules).
  std::vector<std::pair<Multiset, Symbol>> axioms;
  axioms.push_back({ms({loader}), loader});
  axioms.push_back({ms({n.Z(), l0}), n.Z()});
  axioms.push_back({ms({n.F()}), n.F()});
  for (std::size_t i = 1; i <= m.inputs; ++i)
    axioms.push_back({ms({n.a(i), n.b(i), n.Y()}), n.Y()});
  std::vector<std::size_t> checked;  // registers with a SUB instruction
  for (const auto& [label, instr] : m.program) {
    if (const auto* add = as<AddInstr>(instr)) {
      axioms.push_back({ms({n.A(label), n.label(add->next), n.b(add->reg)}), n.A(label)});
    } else if (const auto* sub = as<SubInstr>(instr)) {
      axioms.push_back({ms({n.A(label), n.label(sub->next_nonzero)}), n.A(label)});
      axioms.push_back({ms({n.Ap(label)}), n.Ap(label)});
      push_unique(checked, sub->reg);
    }
  }
  if (guarded) axioms.push_back({ms({n.R()}), n.R()});

  auto mangle = [](const Multiset& s) {
    std::string out = render(s);
    std::replace(out.begin(), out.end(), ' ', '+');
    return out;
  };
  auto B = [&](const Multiset& s) { return sym("@B." + mangle(s)); };
  auto Bp = [&](const Multiset& s) { return sym("@Bp." + mangle(s)); };

  // Alphabet.
  auto& V = sys.alphabet;
  for (const auto& [label, instr] : m.program) V.push_back(n.label(label));
  for (Symbol s : {n.X(), n.Y(), n.Z(), n.F(), n.R()}) V.push_back(s);
  if (guarded) V.push_back(n.XH());
  for (std::size_t i = 1; i <= m.inputs; ++i) V.push_back(n.a(i));
  for (std::size_t r = 1; r <= m.registers; ++r) V.push_back(n.b(r));
  for (const auto& [label, instr] : m.program) {
    if (std::holds_alternative<HaltInstr>(instr)) continue;
    V.push_back(n.A(label));
    if (as<SubInstr>(instr)) V.push_back(n.Ap(label));
  }
  for (const auto& [s, anchor] : axioms) {
    V.push_back(B(s));
    if (!guarded) V.push_back(Bp(s));
  }
  for (std::size_t r : checked)
    for (char k : std::string("ABCDEF")) V.push_back(n.K(k, r));
  for (std::size_t i = 1; i <= m.inputs; ++i) sys.terminal.push_back(n.a(i));

  // Initial vesicles.
  for (const auto& [s, anchor] : axioms) sys.axioms[0].push_back(ms({B(s)}));
  for (const auto& [label, instr] : m.program)
    if (const auto* sub = as<SubInstr>(instr))
      push_unique(sys.axioms[2], ms({n.K('E', sub->reg), n.label(sub->next_zero)}));
  for (std::size_t r : checked) {
    sys.axioms[2].push_back(ms({n.K('F', r), n.K('D', r)}));
    sys.axioms[3].push_back(ms({n.K('A', r)}));
  }

  auto& R = sys.rules;
  auto add_rule = [&](std::size_t from, Rule r, std::size_t to) {
    push_unique(R, TPRule{from, std::move(r), to});
  };

  // Axiom regeneration (two steps, cell 1 -> 2 -> 1).
  for (const auto& [s, anchor] : axioms) {
    if (guarded) {
      add_rule(1, drip({}, ms({B(s)}), {}, s, ms({B(s)})), 2);
      add_rule(2, mate(ms({B(s)}), {}, ms({n.R()}), {}), 1);
      if (anchor != n.R()) add_rule(2, mate(ms({anchor}), {}, ms({n.R()}), {}), 1);
    } else {
      add_rule(1, drip({}, ms({B(s)}), {}, ms({n.R()}), msum(ms({Bp(s), B(s)}), s)), 2);
      add_rule(2, mate({}, ms({n.R()}), ms({Bp(s), B(s)}), {}), 1);
      add_rule(2, mate({}, ms({n.R()}), msum(ms({Bp(s)}), s), {}), 1);
    }
  }

  // Initialization, return from cell 2, output.
  add_rule(1, mate(ms({loader}), {}, ms({n.Y()}), {}), 2);
  if (guarded)
    add_rule(1, mate({}, ms({n.XH()}), ms({n.Z()}), ms({l0}), ms({n.X()})), 2);
  else
    add_rule(1, mate(ms({n.X()}), {}, ms({n.Z()}), ms({l0})), 2);
  add_rule(2, mate(ms({n.X()}), {}, ms({n.R()}), {}), 1);
  add_rule(1, mate({}, ms({lh, n.X()}), ms({n.F()}), {}), 5);

  for (const auto& [label, instr] : m.program) {
    const Symbol l1 = n.label(label);
    if (const auto* add = as<AddInstr>(instr)) {
      add_rule(1,
               mate(ms({n.X()}), ms({l1}), ms({n.A(label)}),
                    ms({n.label(add->next), n.b(add->reg)})),
               2);
    } else if (const auto* sub = as<SubInstr>(instr)) {
      const std::size_t r = sub->reg;
      const Symbol l2 = n.label(sub->next_nonzero);
      const Symbol l3 = n.label(sub->next_zero);
      add_rule(1, mate(ms({n.X()}), ms({l1}), {}, ms({n.Ap(label)})), 3);
      add_rule(1, mate(ms({n.X()}), ms({l1, n.b(r)}), ms({n.A(label)}), ms({l2})), 2);
      add_rule(3, mate({}, ms({n.Ap(label)}), ms({n.K('E', r)}), ms({l3})), 2);
      add_rule(4, drip({}, ms({n.K('D', r)}), {}, ms({n.K('E', r), l3}), ms({n.K('F', r), n.K('D', r)})),
               3);
      add_rule(3, mate({}, ms({n.K('E', r), l3}), ms({n.K('F', r)}), ms({n.K('D', r)})), 4);
      // Kill a wrong zero guess: the vesicle still holds b_r.
      if (guarded)
        add_rule(3, mate({}, ms({n.K('B', r)}), ms({n.X(), n.Ap(label)}), ms({n.b(r)})), 4);
      else
        add_rule(3, mate({}, ms({n.K('B', r)}), ms({n.X()}), ms({n.b(r)})), 4);
      add_rule(4, drip({}, ms({n.K('A', r)}), {}, ms({n.K('B', r)}), ms({n.K('C', r), n.K('A', r)})),
               3);
      add_rule(3, mate({}, ms({n.K('B', r)}), ms({n.K('C', r)}), ms({n.K('A', r)})), 4);
    }
  }
  return sys;
}

AnySystem compile(const RegisterMachine& m, const CompileOptions& opts) {
  switch (opts.construction) {
    case Construction::Thm1: return compile_thm1(m, opts);
    case Construction::Cor2: return compile_cor2(m, opts);
    case Construction::Cor3: return compile_cor3(m, opts);
    case Construction::Thm4: return compile_thm4(m, opts);
  }
  throw std::invalid_argument("unknown construction");
}

namespace {

void count_rule(SystemMetrics& out, const Rule& r) {
  const Count w = weight(r);
  if (std::holds_alternative<MateRule>(r)) {
    ++out.mate_rules;
    out.max_mate_weight = std::max(out.max_mate_weight, w);
  } else if (std::get<DripRule>(r).mode == DripMode::TwoSided) {
    ++out.drip_rules;
    out.max_drip_weight = std::max(out.max_drip_weight, w);
  } else {
    ++out.drip1_rules;
    out.max_drip1_weight = std::max(out.max_drip1_weight, w);
  }
}

void count_axioms(SystemMetrics& out, const std::vector<std::vector<Vesicle>>& axioms) {
  for (const auto& unit : axioms)
    for (const auto& ax : unit) out.max_axiom_weight = std::max(out.max_axiom_weight, ax.size());
}

}  // namespace

SystemMetrics metrics(const TestTubeSystem& tts) {
  SystemMetrics out;
  out.units = tts.tubes;
  count_axioms(out, tts.axioms);
  for (const auto& tube : tts.rules)
    for (const auto& r : tube) count_rule(out, r);
  for (const auto& e : tts.filters) out.filter_branches += e.filter.branches.size();
  return out;
}

SystemMetrics metrics(const TissueSystem& sys) {
  SystemMetrics out;
  out.tissue = true;
  out.units = sys.cells;
  count_axioms(out, sys.axioms);
  for (const auto& r : sys.rules) count_rule(out, r.rule);
  return out;
}

SystemMetrics metrics(const AnySystem& sys) {
  return std::visit([](const auto& s) { return metrics(s); }, sys);
}

std::string summary(const SystemMetrics& m) {
  std::string out = (m.tissue ? "cells=" : "tubes=") + std::to_string(m.units);
  out += " axiom≤" + std::to_string(m.max_axiom_weight);
  if (m.mate_rules) out += " mate≤" + std::to_string(m.max_mate_weight);
  if (m.drip_rules) out += " drip≤" + std::to_string(m.max_drip_weight);
  if (m.drip1_rules) out += " drip1≤" + std::to_string(m.max_drip1_weight);
  return out;
}

}  // namespace vesicle
