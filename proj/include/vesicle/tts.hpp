#pragma once

// Test tube systems with mate/drip rules under the relaxed redistribution
// reading: rules and filter passages apply at any moment, copies stay
// behind, and the contents grow monotonically towards a least fixpoint.

#include <cstddef>
#include <vector>

#include "vesicle/bounds.hpp"
#include "vesicle/rules.hpp"

namespace vesicle {

/// Passes a vesicle iff its support lies within `allowed` (the filter W*).
struct SupportFilter {
  std::vector<Symbol> allowed;  // sorted, unique
  explicit SupportFilter(std::vector<Symbol> symbols = {});
  friend bool operator==(const SupportFilter&, const SupportFilter&) = default;
};

/// Finite union of support filters.
struct Filter {
  std::vector<SupportFilter> branches;
  friend bool operator==(const Filter&, const Filter&) = default;
};

struct FilterEdge {
  std::size_t from;  // 1-based tube indices
  std::size_t to;
  Filter filter;
  friend bool operator==(const FilterEdge&, const FilterEdge&) = default;
};

struct TestTubeSystem {
  std::vector<Symbol> alphabet;
  std::vector<Symbol> terminal;
  std::size_t tubes = 1;
  std::vector<std::size_t> outputs;
  /// Indexed by tube - 1.
  std::vector<std::vector<Vesicle>> axioms;
  std::vector<std::vector<Rule>> rules;
  std::vector<FilterEdge> filters;

  /// Sizes the per-tube vectors to `n`.
  explicit TestTubeSystem(std::size_t n = 1);
};

bool filter_pass(const SupportFilter& f, const Vesicle& v);
bool filter_pass(const Filter& f, const Vesicle& v);

std::vector<Violation> validate_tts(const TestTubeSystem& tts);

/// How a vesicle first entered a tube. Parent indices refer to the
/// contents of `tube` (rules) or of `from_tube` (filters).
struct Derivation {
  enum class Kind { Axiom, Rule, Filter } kind = Kind::Axiom;
  std::size_t rule_index = 0;
  std::size_t from_tube = 0;  // 1-based
  std::vector<std::size_t> parents;
};

struct TTSState {
  /// Per tube, in order of discovery (deterministic).
  std::vector<std::vector<Vesicle>> contents;
  /// Filled when derivations are requested; parallel to `contents`.
  std::vector<std::vector<Derivation>> derivations;
  bool pruned = false;
  std::size_t iterations = 0;
  bool fixpoint = false;

  std::size_t population() const;
};

struct ClosureOptions {
  bool record_derivations = false;
};

/// Throws std::invalid_argument if the system does not validate.
TTSState closure(const TestTubeSystem& tts, const ExplorationBounds& bounds,
                 const ClosureOptions& options = {});

/// Terminal vesicles found in the output tubes of an explored state.
ResultSet results(const TestTubeSystem& tts, const TTSState& state);
ResultSet results(const TestTubeSystem& tts, const ExplorationBounds& bounds);

}  // namespace vesicle
