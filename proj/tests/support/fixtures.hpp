#pragma once

#include "semcomm/language.hpp"

namespace fixtures {

/// 64 valid sentences out of the 4096 = 8^4 raw word combinations: an
/// 8-word vocabulary (3-bit fixed code, every bit pattern is a word)
/// with per-slot restrictions 4 x 4 x 2 x 2. The explicit vocabulary
/// pins word i to bit pattern i; slots take words of equal parity, so
/// any two valid sentences sit at least two code bits apart.
inline semcomm::GrammarSpec structured_grammar() {
    semcomm::GrammarSpec g;
    g.vocabulary = {"w0", "w1", "w2", "w3", "w4", "w5", "w6", "w7"};
    g.slots = {{"w0", "w3", "w5", "w6"},   // even parity patterns
               {"w1", "w2", "w4", "w7"},   // odd parity patterns
               {"w0", "w3"},
               {"w1", "w2"}};
    return g;
}

/// Every combination valid: vocabulary^L with a power-of-two vocabulary,
/// so the fixed-length code is bijective and the semantic decoder has no
/// structure to exploit.
inline semcomm::GrammarSpec unstructured_grammar() {
    semcomm::GrammarSpec g;
    g.slots = {{"a", "b", "c", "d"}, {"a", "b", "c", "d"}};
    return g;
}

}  // namespace fixtures
