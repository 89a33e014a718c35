#include "vesicle/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace vesicle {

void ExplorationBounds::validate() const {
  if (max_vesicle_size == 0 || max_population == 0 || max_iterations == 0)
    throw std::invalid_argument("exploration bounds must be positive");
}

bool ok(const std::vector<Violation>& violations) {
  return std::all_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.warning; });
}

std::string describe(const Violation& v) {
  return std::string(v.warning ? "warning" : "error") + ": " + v.location + ": " + v.message;
}

}  // namespace vesicle
