#include "vesicle/regmach.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "text_util.hpp"

namespace vesicle {

const Instruction* RegisterMachine::find(std::string_view label) const {
  for (const auto& [l, instr] : program)
    if (l == label) return &instr;
  return nullptr;
}

void RegisterMachine::validate() const {
  if (registers == 0) throw ParseError("machine needs at least one register");
  if (inputs > registers) throw ParseError("INPUTS exceeds REGISTERS");
  std::set<std::string> labels;
  for (const auto& [l, instr] : program)
    if (!labels.insert(l).second) throw ParseError("duplicate label '" + l + "'");
  if (!labels.count(start)) throw ParseError("start label '" + start + "' is not defined");
  std::size_t halts = 0;
  for (const auto& [l, instr] : program) {
    auto check_target = [&](const std::string& t) {
      if (!labels.count(t)) throw ParseError("label '" + l + "' jumps to undefined '" + t + "'");
    };
    auto check_reg = [&](std::size_t r) {
      if (r < 1 || r > registers)
        throw ParseError("label '" + l + "' uses register " + std::to_string(r) + " out of range");
    };
    if (const auto* add = std::get_if<AddInstr>(&instr)) {
      check_reg(add->reg);
      check_target(add->next);
    } else if (const auto* sub = std::get_if<SubInstr>(&instr)) {
      check_reg(sub->reg);
      check_target(sub->next_nonzero);
      check_target(sub->next_zero);
    } else {
      ++halts;
      if (l != halt) throw ParseError("HALT at '" + l + "' but halt label is '" + halt + "'");
    }
  }
  if (halts != 1) throw ParseError("machine needs exactly one HALT instruction");
}

std::variant<MachineConfig, Halted> step(const RegisterMachine& m, const MachineConfig& cfg) {
  const Instruction* instr = m.find(cfg.label);
  if (!instr) throw ParseError("unknown label '" + cfg.label + "'");
  if (std::holds_alternative<HaltInstr>(*instr)) return Halted{};
  MachineConfig next = cfg;
  if (const auto* add = std::get_if<AddInstr>(instr)) {
    ++next.regs[add->reg - 1];
    next.label = add->next;
  } else {
    const auto& sub = std::get<SubInstr>(*instr);
    Count& r = next.regs[sub.reg - 1];
    if (r > 0) {
      --r;
      next.label = sub.next_nonzero;
    } else {
      next.label = sub.next_zero;
    }
  }
  return next;
}

RunResult run(const RegisterMachine& m, const Registers& input, std::size_t fuel) {
  if (input.size() > m.registers) throw ParseError("input arity exceeds register count");
  MachineConfig cfg{m.start, Registers(m.registers, 0)};
  std::copy(input.begin(), input.end(), cfg.regs.begin());

  // Brent's cycle detection: a deterministic machine that revisits a
  // configuration never halts.
  MachineConfig anchor = cfg;
  std::size_t power = 1;
  std::size_t lambda = 0;
  std::size_t steps = 0;
  for (;;) {
    auto next = step(m, cfg);
    if (std::holds_alternative<Halted>(next)) return {RunOutcome::Accepted, steps, cfg};
    if (steps == fuel) return {RunOutcome::Timeout, steps, cfg};
    cfg = std::move(std::get<MachineConfig>(next));
    ++steps;
    ++lambda;
    if (cfg == anchor) return {RunOutcome::NonterminatingDetected, steps, cfg};
    if (lambda == power) {
      anchor = cfg;
      power *= 2;
      lambda = 0;
    }
  }
}

std::string describe(const RunResult& r) {
  switch (r.outcome) {
    case RunOutcome::Accepted: return "Accepted";
    case RunOutcome::Timeout: return "NotAccepted(timeout)";
    case RunOutcome::NonterminatingDetected: return "NotAccepted(nonterminating-detected)";
  }
  return "";
}

std::set<Registers> enumerate(const RegisterMachine& m, std::size_t bound, std::size_t fuel) {
  std::set<Registers> out;
  Registers v(m.inputs, 0);
  for (;;) {
    if (run(m, v, fuel).accepted()) out.insert(v);
    std::size_t i = 0;
    while (i < v.size() && v[i] == bound) v[i++] = 0;
    if (i == v.size()) break;
    ++v[i];
  }
  return out;
}

std::vector<bool> zero_at_halt(const RegisterMachine& m) {
  // known[label][r]: register r is zero on every path reaching label.
  // Greatest fixpoint starting from "everything known" except the entry.
  std::map<std::string, std::vector<bool>> known;
  for (const auto& [l, instr] : m.program) known[l] = std::vector<bool>(m.registers, true);
  std::vector<bool> entry(m.registers, false);
  for (std::size_t r = m.inputs; r < m.registers; ++r) entry[r] = true;

  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::string, std::vector<bool>> incoming;
    incoming[m.start] = entry;
    auto meet = [&](const std::string& target, std::vector<bool> facts) {
      auto [it, fresh] = incoming.try_emplace(target, facts);
      if (!fresh)
        for (std::size_t r = 0; r < facts.size(); ++r) it->second[r] = it->second[r] && facts[r];
    };
    for (const auto& [l, instr] : m.program) {
      const auto& here = known[l];
      if (const auto* add = std::get_if<AddInstr>(&instr)) {
        auto facts = here;
        facts[add->reg - 1] = false;
        meet(add->next, facts);
      } else if (const auto* sub = std::get_if<SubInstr>(&instr)) {
        auto nz = here;
        nz[sub->reg - 1] = false;
        meet(sub->next_nonzero, nz);
        auto z = here;
        z[sub->reg - 1] = true;
        meet(sub->next_zero, z);
      }
    }
    for (auto& [l, facts] : known) {
      // Unreachable labels keep "all known"; they never affect reachable ones.
      auto it = incoming.find(l);
      if (it == incoming.end()) continue;
      if (it->second != facts) {
        facts = it->second;
        changed = true;
      }
    }
  }
  return known[m.halt];
}

RegisterMachine normalize_clearing(const RegisterMachine& m) {
  const auto zero = zero_at_halt(m);
  std::vector<std::size_t> drain;
  for (std::size_t r = 0; r < m.registers; ++r)
    if (!zero[r]) drain.push_back(r + 1);
  if (drain.empty()) return m;

  RegisterMachine out = m;
  const std::string new_halt = "@halt";
  auto drain_label = [&](std::size_t i) {
    return i == 0 ? m.halt : "@drain." + std::to_string(drain[i]);
  };
  std::vector<std::pair<std::string, Instruction>> program;
  for (const auto& entry : m.program)
    if (!std::holds_alternative<HaltInstr>(entry.second)) program.push_back(entry);
  for (std::size_t i = 0; i < drain.size(); ++i) {
    const std::string here = drain_label(i);
    const std::string after = i + 1 < drain.size() ? drain_label(i + 1) : new_halt;
    program.emplace_back(here, SubInstr{drain[i], here, after});
  }
  program.emplace_back(new_halt, HaltInstr{});
  out.program = std::move(program);
  out.halt = new_halt;
  return out;
}

namespace {

std::size_t parse_count(const std::string& token, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(std::string("expected a non-negative integer for ") + what + ", got '" +
                         token + "'",
                     line);
  return value;
}

std::string parse_label(const std::string& token, std::size_t line) {
  try {
    return Symbol::user(token).name();
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

RegisterMachine parse_machine(std::string_view text) {
  RegisterMachine m;
  bool have_regs = false, have_inputs = false, have_start = false;
  std::size_t lineno = 0;
  for (const auto& raw : detail::split_lines(text)) {
    ++lineno;
    const auto tokens = detail::tokenize(detail::strip_comment(raw));
    if (tokens.empty()) continue;
    const std::string& head = tokens[0];
    auto expect = [&](std::size_t n) {
      if (tokens.size() != n)
        throw ParseError("expected " + std::to_string(n) + " fields in '" + raw + "'", lineno);
    };
    if (head == "REGISTERS") {
      expect(2);
      m.registers = parse_count(tokens[1], lineno, "REGISTERS");
      have_regs = true;
    } else if (head == "INPUTS") {
      expect(2);
      m.inputs = parse_count(tokens[1], lineno, "INPUTS");
      have_inputs = true;
    } else if (head == "START") {
      expect(2);
      m.start = parse_label(tokens[1], lineno);
      have_start = true;
    } else {
      if (tokens.size() < 2) throw ParseError("malformed instruction '" + raw + "'", lineno);
      std::string label = parse_label(head, lineno);
      const std::string& op = tokens[1];
      if (op == "ADD") {
        expect(4);
        m.program.emplace_back(label, AddInstr{parse_count(tokens[2], lineno, "register"),
                                               parse_label(tokens[3], lineno)});
      } else if (op == "SUB") {
        expect(5);
        m.program.emplace_back(label, SubInstr{parse_count(tokens[2], lineno, "register"),
                                               parse_label(tokens[3], lineno),
                                               parse_label(tokens[4], lineno)});
      } else if (op == "HALT") {
        expect(2);
        m.halt = label;
        m.program.emplace_back(label, HaltInstr{});
      } else {
        throw ParseError("unknown instruction '" + op + "'", lineno);
      }
    }
  }
  if (!have_regs) throw ParseError("missing REGISTERS line");
  if (!have_inputs) throw ParseError("missing INPUTS line");
  if (!have_start) throw ParseError("missing START line");
  m.validate();
  return m;
}

std::string render(const RegisterMachine& m) {
  std::ostringstream os;
  os << "REGISTERS " << m.registers << "\nINPUTS " << m.inputs << "\nSTART " << m.start << "\n";
  for (const auto& [l, instr] : m.program) {
    os << l;
    if (const auto* add = std::get_if<AddInstr>(&instr))
      os << " ADD " << add->reg << ' ' << add->next;
    else if (const auto* sub = std::get_if<SubInstr>(&instr))
      os << " SUB " << sub->reg << ' ' << sub->next_nonzero << ' ' << sub->next_zero;
    else
      os << " HALT";
    os << '\n';
  }
  return os.str();
}

}  // namespace vesicle
