#pragma once

// Line-oriented text formats for test tube and tissue systems.
//
//   SYSTEM TTS                          SYSTEM TP
//   ALPHABET s1 s2 ...                  ALPHABET ...
//   TERMINAL a1 ...                     TERMINAL ...
//   TUBES n                             CELLS n
//   OUTPUT i [j ...]                    OUTPUT i0
//   AXIOM i {multiset}                  AXIOM i {multiset}
//   RULE i MATE (U | A , B | V ; X)     RULE i MATE (...) -> j
//   RULE i DRIP (U | C | V ; Y , Z)     RULE i DRIP (...) -> j
//   RULE i DRIP1 (U | C | V ; Y , Z)    RULE i DRIP1 (...) -> j
//   FILTER i -> j SUPPORT {symbols}
//
// Repeated FILTER lines for the same (i, j) form one union filter. '#'
// starts a comment. Rendering is deterministic, so parse followed by render
// reproduces a rendered file byte for byte.

#include <string>
#include <string_view>
#include <variant>

#include "vesicle/tp.hpp"
#include "vesicle/tts.hpp"

namespace vesicle {

using AnySystem = std::variant<TestTubeSystem, TissueSystem>;

AnySystem parse_system(std::string_view text);
std::string render(const TestTubeSystem& tts);
std::string render(const TissueSystem& sys);
std::string render(const AnySystem& sys);

}  // namespace vesicle
