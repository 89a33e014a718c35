#pragma once

// Mate, drip and one-sided drip rules on vesicles.
//
//   mate  (u|a,b|v;x):  [sua] + [bvw]  ->  [suxvw]
//   drip  (u|c|v;y,z):  [sucvw]        ->  [suy], [zvw]   (s, w any split of the rest)
//   drip1 (u|c|v;y,z):  [sucv]         ->  [suy], [vz]    (whole rest stays on the first)

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vesicle/multiset.hpp"

namespace vesicle {

using Vesicle = Multiset;

struct MateRule {
  Multiset u, a, b, v, x;
  friend bool operator==(const MateRule&, const MateRule&) = default;
};

enum class DripMode { TwoSided, OneSided };

struct DripRule {
  Multiset u, c, v, y, z;
  DripMode mode = DripMode::TwoSided;
  friend bool operator==(const DripRule&, const DripRule&) = default;
};

using Rule = std::variant<MateRule, DripRule>;

/// The three classic restrictions on drip and mate rules, evaluated
/// literally on the rule fields (classification only, never enforced).
///  1. contact/cut multisets are single symbols (a,b for mate, c for drip)
///  2. b = λ (mate) / z = λ (drip)
///  3. v ≠ λ and ux ≠ λ (a drip has no x, so this is v ≠ λ and u ≠ λ)
struct RestrictionProfile {
  bool singleton_contacts = false;
  bool empty_right_contact = false;
  bool nonempty_context = false;
  friend bool operator==(const RestrictionProfile&, const RestrictionProfile&) = default;
};

Count weight(const MateRule& r);
Count weight(const DripRule& r);
Count weight(const Rule& r);

std::optional<Vesicle> apply_mate(const MateRule& r, const Vesicle& v1, const Vesicle& v2);

/// Two-sided drip: one outcome per split of the residual, deduplicated and
/// ordered. Empty when the vesicle does not contain u+c+v.
std::vector<std::pair<Vesicle, Vesicle>> apply_drip(const DripRule& r, const Vesicle& ves);

/// One-sided drip: (s+u+y, v+z) with s = ves-u-c-v.
std::optional<std::pair<Vesicle, Vesicle>> apply_drip1(const DripRule& r, const Vesicle& ves);

RestrictionProfile classify(const MateRule& r);
RestrictionProfile classify(const DripRule& r);
RestrictionProfile classify(const Rule& r);

/// Multisets a vesicle must contain for the rule to apply to it (first
/// operand for a mate, the only operand for a drip).
Multiset left_requirement(const Rule& r);
/// Second-operand requirement of a mate rule (b+v).
Multiset right_requirement(const MateRule& r);

/// `MATE (U | A , B | V ; X)`, `DRIP (U | C | V ; Y , Z)`, `DRIP1 (...)`.
std::string render(const Rule& r);
Rule parse_rule(std::string_view text, bool allow_reserved = true);

/// Symbols mentioned anywhere in the rule, sorted and deduplicated.
std::vector<Symbol> symbols_of(const Rule& r);

}  // namespace vesicle
