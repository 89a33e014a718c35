#pragma once

// Register machine -> vesicle system constructions:
//
//   thm1  three test tubes, mate rules only (weight <= 5), axioms <= 3
//   cor2  thm1 with every axiom dripped from a single axiom @g (drip <= 4)
//   cor3  thm1 with every mate replaced by a one-sided drip (drip1 <= 4)
//   thm4  five-cell tissue system with mate and drip rules
//
// Register r holds its value as the count of symbol b{r}; input i is also
// recorded as a{i}, the terminal symbols of the generated results.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vesicle/regmach.hpp"
#include "vesicle/system_io.hpp"

namespace vesicle {

class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Construction { Thm1, Cor2, Cor3, Thm4 };
enum class Fidelity { Faithful, Guarded };

std::string_view to_string(Construction c);
std::string_view to_string(Fidelity f);
/// Accepts "thm1", "cor2", "cor3", "thm4"; throws std::invalid_argument.
Construction parse_construction(std::string_view name);

struct CompileOptions {
  Construction construction = Construction::Thm1;
  /// Guarded mode loads registers through a dedicated symbol @XH that is
  /// consumed when the start label attaches, so loading cannot resume in
  /// the middle of a simulated computation. Faithful mode transcribes the
  /// constructions literally.
  Fidelity fidelity = Fidelity::Guarded;
  /// Apply normalize_clearing first (output rules only pass b-free vesicles).
  bool auto_normalize = true;
};

TestTubeSystem compile_thm1(const RegisterMachine& m, const CompileOptions& opts = {});
TestTubeSystem compile_cor2(const RegisterMachine& m, const CompileOptions& opts = {});
TestTubeSystem compile_cor3(const RegisterMachine& m, const CompileOptions& opts = {});
TissueSystem compile_thm4(const RegisterMachine& m, const CompileOptions& opts = {});
/// Dispatches on opts.construction.
AnySystem compile(const RegisterMachine& m, const CompileOptions& opts);

struct SystemMetrics {
  bool tissue = false;
  std::size_t units = 0;  // tubes or cells
  Count max_axiom_weight = 0;
  Count max_mate_weight = 0;
  Count max_drip_weight = 0;   // two-sided
  Count max_drip1_weight = 0;  // one-sided
  std::size_t mate_rules = 0;
  std::size_t drip_rules = 0;
  std::size_t drip1_rules = 0;
  std::size_t filter_branches = 0;
  /// Every filter is a finite union of support filters (always true for the
  /// Filter type; kept so reports state it).
  bool support_filters = true;
};

SystemMetrics metrics(const TestTubeSystem& tts);
SystemMetrics metrics(const TissueSystem& sys);
SystemMetrics metrics(const AnySystem& sys);

/// e.g. "tubes=3 axiom≤3 mate≤5"; rule kinds that do not occur are omitted.
std::string summary(const SystemMetrics& m);

}  // namespace vesicle
