#pragma once

// Desk-scale language check: compile a machine, explore the system within
// bounds, and compare the result vectors with the interpreter's accepted set.

#include <cstddef>
#include <optional>
#include <set>
#include <string>

#include "vesicle/compilers.hpp"

namespace vesicle {

struct VerifyOptions {
  CompileOptions compile;
  /// Input vectors are compared on {0..bound}^k.
  std::size_t bound = 4;
  /// Interpreter fuel per input vector.
  std::size_t fuel = 10000;
  ExplorationBounds bounds;
  /// Tissue systems only.
  std::size_t max_steps = 60;
};

struct VerifyReport {
  std::string machine_id;
  Construction construction = Construction::Thm1;
  Fidelity fidelity = Fidelity::Guarded;
  std::size_t bound = 0;
  ExplorationBounds bounds;
  std::size_t max_steps = 0;
  std::set<Registers> oracle;
  std::set<Registers> system;
  /// Vectors left out of the comparison (the zero vector for cor2/cor3).
  std::set<Registers> excluded;
  /// Compared sets differ here (after exclusion).
  std::set<Registers> missing;     // oracle only
  std::set<Registers> unexpected;  // system only
  bool pruned = false;
  double seconds = 0;

  bool match() const { return missing.empty() && unexpected.empty(); }
};

/// Parikh vector over a1..ak; nullopt if the multiset holds any other symbol.
std::optional<Registers> parikh(const Multiset& m, std::size_t k);

/// Runs oracle enumeration and system exploration concurrently.
VerifyReport verify(const RegisterMachine& m, const std::string& machine_id,
                    const VerifyOptions& opts);

/// Multi-line human-readable report ending with "verdict: match" or
/// "verdict: mismatch".
std::string render(const VerifyReport& r);
std::string render_vector(const Registers& v);

}  // namespace vesicle
