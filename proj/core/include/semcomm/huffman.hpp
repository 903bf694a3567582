#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace semcomm {

/// Binary prefix code over a finite symbol set. Codewords are bit
/// vectors; a single-symbol set gets the empty codeword (zero bits,
/// nothing to transmit).
struct HuffmanCode {
    std::vector<std::vector<std::uint8_t>> codewords;

    double expected_length(std::span<const double> probs) const;

    /// Greedy prefix walk. Emits symbols until the stream is exhausted;
    /// a trailing partial codeword is reported via `clean = false`.
    struct Decoded {
        std::vector<int> symbols;
        bool clean = true;
    };
    Decoded decode(std::span<const std::uint8_t> bits) const;
};

/// Classic two-lowest merge with deterministic tie-breaking (by
/// probability, then by smallest symbol index in the subtree), so the
/// same weights always yield the same code.
HuffmanCode build_huffman(std::span<const double> probs);

}  // namespace semcomm
