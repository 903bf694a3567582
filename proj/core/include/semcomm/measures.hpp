#pragma once

#include <span>
#include <string>
#include <vector>

#include "semcomm/language.hpp"
#include "semcomm/matrix.hpp"

namespace semcomm {

/// Joint pmf with outcome labels on both axes. Rows index messages,
/// columns index symbols in every table derived from a message space.
struct JointTable {
    std::vector<std::string> rows;
    std::vector<std::string> cols;
    Matrix p;
};

/// Shannon entropy in bits; terms with p = 0 contribute 0.
double entropy_bits(std::span<const double> p);

/// H(cols | rows) of a joint table, in bits.
double conditional_entropy_cols_given_rows(const Matrix& joint);

/// H(rows | cols) of a joint table, in bits.
double conditional_entropy_rows_given_cols(const Matrix& joint);

/// I(rows; cols) of a joint table, in bits.
double mutual_information_bits(const Matrix& joint);

/// Joint p(m, x) = p(m) p(x|m) for a message space and its mapping.
JointTable joint_from(const StochasticMapping& mapping, const MessageSpace& space);

/// H_S(M): entropy of the message prior.
double message_entropy(const MessageSpace& space);

/// Per-symbol semantic information -log2 p_S(x_i). Symbols with zero
/// logical probability get +infinity.
std::vector<double> symbol_semantic_information(const StochasticMapping& mapping,
                                                const MessageSpace& space);

/// H_S(X): entropy of the logical-probability distribution over symbols.
double semantic_entropy(const StochasticMapping& mapping, const MessageSpace& space);

/// The full entropy split of a (message, symbol) pair:
///   H_X = H_M + redundancy - ambiguity
/// where redundancy = H(X|M) (one-to-many mass) and
/// ambiguity = H(M|X) (many-to-one mass).
struct Decomposition {
    double message_entropy;    // H_M
    double symbol_entropy;     // H_X
    double redundancy;         // H(X|M)
    double ambiguity;          // H(M|X)
    double mutual_information; // I(M;X)
};

Decomposition decomposition(const StochasticMapping& mapping, const MessageSpace& space);

/// Average-rate claim for a semantic block encoder, checked through a
/// prefix code built on the meaning-class marginal: a shared partition
/// lets the encoder ship class indices instead of messages.
struct BlockEncoderRate {
    double rate_bound;          // I(M;X)
    double class_entropy;       // H of the meaning-class marginal
    double huffman_avg_length;  // expected codeword length on classes
};

BlockEncoderRate semantic_block_encoder_rate(const StochasticMapping& mapping,
                                             const MessageSpace& space);

/// Prior mass per meaning class, classes relabeled to 0..C-1 in first-
/// appearance order.
std::vector<double> meaning_class_distribution(const MessageSpace& space);

}  // namespace semcomm
