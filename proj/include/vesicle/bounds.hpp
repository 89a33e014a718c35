#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "vesicle/multiset.hpp"

namespace vesicle {

/// Limits for exploring systems whose exact semantics is unbounded.
struct ExplorationBounds {
  std::size_t max_vesicle_size = 16;
  /// Total number of distinct (tube or cell, vesicle) pairs.
  std::size_t max_population = 50000;
  /// Closure rounds (test tube systems only).
  std::size_t max_iterations = 500;
  /// Keep empty vesicles produced by rules.
  bool keep_empty = true;

  /// Throws std::invalid_argument unless all limits are positive.
  void validate() const;
};

/// Terminal multisets extracted from output tubes / the output cell.
using ResultSet = std::set<Multiset>;

struct Violation {
  std::string location;
  std::string message;
  bool warning = false;
};

/// True iff `violations` contains no errors (warnings are allowed).
bool ok(const std::vector<Violation>& violations);
std::string describe(const Violation& v);

}  // namespace vesicle
