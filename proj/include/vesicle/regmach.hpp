#pragma once

// Deterministic register machines (ADD / SUB / HALT) and the interpreter
// used as the acceptance oracle for compiled systems.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vesicle/multiset.hpp"

namespace vesicle {

struct AddInstr {
  std::size_t reg;  // 1-based
  std::string next;
  friend bool operator==(const AddInstr&, const AddInstr&) = default;
};

struct SubInstr {
  std::size_t reg;  // 1-based
  std::string next_nonzero;
  std::string next_zero;
  friend bool operator==(const SubInstr&, const SubInstr&) = default;
};

struct HaltInstr {
  friend bool operator==(const HaltInstr&, const HaltInstr&) = default;
};

using Instruction = std::variant<AddInstr, SubInstr, HaltInstr>;

struct RegisterMachine {
  std::size_t registers = 0;
  std::size_t inputs = 0;
  std::string start;
  std::string halt;
  /// Instructions in declaration order; labels are unique.
  std::vector<std::pair<std::string, Instruction>> program;

  const Instruction* find(std::string_view label) const;
  /// Throws ParseError on any structural violation.
  void validate() const;
};

using Registers = std::vector<Count>;

struct MachineConfig {
  std::string label;
  Registers regs;
  friend bool operator==(const MachineConfig&, const MachineConfig&) = default;
};

struct Halted {};

/// One instruction. Returns Halted at the halt label.
std::variant<MachineConfig, Halted> step(const RegisterMachine& m, const MachineConfig& cfg);

enum class RunOutcome { Accepted, Timeout, NonterminatingDetected };

struct RunResult {
  RunOutcome outcome;
  std::size_t steps = 0;
  /// Configuration at halt (or where the run stopped).
  MachineConfig final;
  bool accepted() const { return outcome == RunOutcome::Accepted; }
};

/// Runs from the start label with registers 1..k holding `input`. At most
/// `fuel` instructions are executed; reaching HALT costs nothing, so a
/// run that halts after exactly `fuel` instructions is accepted. A repeated
/// configuration is reported as NonterminatingDetected.
RunResult run(const RegisterMachine& m, const Registers& input, std::size_t fuel);

std::string describe(const RunResult& r);

/// { v in {0..bound}^k : run(m, v, fuel) accepted }, sorted.
std::set<Registers> enumerate(const RegisterMachine& m, std::size_t bound, std::size_t fuel);

/// Registers provably zero whenever the halt label is reached (must-analysis
/// over the control-flow graph; index 0 is register 1).
std::vector<bool> zero_at_halt(const RegisterMachine& m);

/// Same accepted set, and every accepting run halts with all registers zero.
/// Machines whose registers are provably zero at HALT are returned unchanged.
RegisterMachine normalize_clearing(const RegisterMachine& m);

/// Line-oriented text format: REGISTERS n / INPUTS k / START label /
/// `label ADD r next` / `label SUB r nz z` / `label HALT`; '#' comments.
RegisterMachine parse_machine(std::string_view text);
std::string render(const RegisterMachine& m);

}  // namespace vesicle
