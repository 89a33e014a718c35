#pragma once

// Tissue-like P systems over sets of vesicles: in every step each rule
// T_i : r -> T_j fires on every vesicle (or ordered pair of vesicles) of cell i
// it applies to, the results move to cell j, and every vesicle that took part
// in at least one firing leaves cell i.

#include <cstddef>
#include <functional>
#include <vector>

#include "vesicle/bounds.hpp"
#include "vesicle/rules.hpp"

namespace vesicle {

struct TPRule {
  std::size_t source;  // 1-based cell indices
  Rule rule;
  std::size_t target;
  friend bool operator==(const TPRule&, const TPRule&) = default;
};

struct TissueSystem {
  std::vector<Symbol> alphabet;
  std::vector<Symbol> terminal;
  std::size_t cells = 1;
  /// Indexed by cell - 1.
  std::vector<std::vector<Vesicle>> axioms;
  std::vector<TPRule> rules;
  std::size_t output = 1;

  explicit TissueSystem(std::size_t n = 1);
};

/// Errors for out-of-range indices and foreign symbols; a warning for a rule
/// whose source and target coincide.
std::vector<Violation> validate_tp(const TissueSystem& sys);

struct TPState {
  std::size_t step = 0;
  /// Per cell, sorted canonical and duplicate free.
  std::vector<std::vector<Vesicle>> contents;
  /// Terminal vesicles seen in the output cell at any step so far.
  ResultSet result_log;
  bool pruned = false;

  std::size_t population() const;
};

TPState tp_initial(const TissueSystem& sys);

/// One synchronous maximal step.
TPState tp_step(const TissueSystem& sys, const TPState& state, const ExplorationBounds& bounds);

struct TPRun {
  ResultSet results;
  /// population[t][c]: number of vesicles in cell c+1 after t steps.
  std::vector<std::vector<std::size_t>> population;
  TPState final;
  bool pruned = false;
};

/// Iterates tp_step `max_steps` times from the axioms (the computation itself
/// never halts). Stops early, flagged pruned, once the population bound is
/// exceeded. `observe` sees every state including the initial one.
TPRun tp_run(const TissueSystem& sys, std::size_t max_steps, const ExplorationBounds& bounds,
             const std::function<void(const TPState&)>& observe = {});

}  // namespace vesicle
