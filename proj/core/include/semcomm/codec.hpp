#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semcomm/channel.hpp"
#include "semcomm/huffman.hpp"
#include "semcomm/language.hpp"

namespace semcomm {

using Bits = std::vector<std::uint8_t>;

enum class SourceCodeKind { fixed_length, huffman };
enum class ChannelCodeKind { none, repetition, hamming74 };

/// Syntactic encoder description: a prefix-free source code over words
/// followed by a channel code. Affects the form of a sentence, never
/// its meaning.
struct SyntacticCodec {
    SourceCodeKind source_code = SourceCodeKind::fixed_length;
    ChannelCodeKind channel_code = ChannelCodeKind::none;
    int repetition_factor = 3;  // odd, >= 1
};

void check_valid(const SyntacticCodec& codec);

/// Encodes 4 info bits into the systematic (7,4) Hamming codeword
/// d1 d2 d3 d4 p1 p2 p3. Input length must be a multiple of 4.
Bits hamming74_encode(std::span<const std::uint8_t> info);

/// Syndrome decoding, one flipped bit per 7-bit block at most. Input
/// length must be a multiple of 7 (framing error otherwise).
Bits hamming74_decode(std::span<const std::uint8_t> received);

/// Outcome of the syntactic path: channel decode then source decode.
struct SyntacticDecode {
    std::vector<int> words;  // at most sentence-length words
    Bits info_bits;          // channel-decoded bits incl. any padding
    bool clean = true;       // decoded exactly L words
};

/// Source + channel coder bound to one sentence language. Word
/// codewords are fixed at construction: fixed-length uses
/// ceil(log2 |V|) bits per word, huffman is built on the word marginal
/// of the sentence prior.
class LinkCodec {
  public:
    LinkCodec(const SentenceLanguage& lang, const SyntacticCodec& spec);

    Bits encode(const std::vector<int>& words) const;
    Bits source_encode(const std::vector<int>& words) const;
    Bits channel_decode(const Bits& received) const;
    SyntacticDecode syntactic_decode(const Bits& received) const;

    const SyntacticCodec& spec() const { return spec_; }
    std::size_t coded_block_bits() const { return block_bits_; }
    const std::vector<Bits>& word_codewords() const { return word_bits_; }

  private:
    SyntacticCodec spec_;
    int sentence_length_;
    std::size_t vocab_size_;
    std::size_t fixed_bits_per_word_ = 0;
    std::vector<Bits> word_bits_;   // per word index
    HuffmanCode huffman_;           // only for huffman source codes
    std::size_t block_bits_ = 1;    // channel-code block size
};

/// Posterior over candidate messages after decoding one observation.
/// The syntactic_* fields describe the conventional decode path for the
/// same observation; simulation drivers fill them in.
struct DecodeResult {
    int message_hat = -1;
    std::vector<double> posterior;  // over the valid message/sentence set
    double confidence = 0.0;        // max posterior entry
    long syntactic_bits_in_error = 0;
    std::vector<int> syntactic_words;
    bool syntactic_clean = true;
};

/// Posterior-maximizing decode over an explicit message set:
/// m' = argmax_m sum_x p(y|x) p(x|m) p(m), ties to the lowest message
/// index. Mapping symbols are strings over the channel input alphabet,
/// one character per channel use; candidates whose length differs from
/// y contribute zero likelihood.
DecodeResult semantic_map_decode(const std::vector<int>& y, const MessageSpace& space,
                                 const StochasticMapping& mapping,
                                 const DiscreteChannel& channel);

/// Sentence-set MAP decoder over a bit channel. Candidate encodings are
/// precomputed and bit-packed once; each decode is a popcount sweep.
class SemanticDecoder {
  public:
    SemanticDecoder(const SentenceLanguage& lang, const LinkCodec& codec);

    /// Exact posterior over the valid-sentence set given received bits
    /// y and BSC crossover epsilon.
    DecodeResult decode(const Bits& y, double epsilon) const;

    /// Fading variant: per-bit crossover probabilities (receiver-side
    /// CSI), one entry per received bit.
    DecodeResult decode(const Bits& y, const std::vector<double>& eps_per_bit) const;

    std::size_t encoded_bits(int sentence) const { return bit_count_[sentence]; }
    const Bits& encoding(int sentence) const { return encodings_[sentence]; }

  private:
    std::vector<Bits> encodings_;
    std::vector<std::vector<std::uint64_t>> packed_;
    std::vector<std::size_t> bit_count_;
    std::vector<double> log_prior_;
};

/// Retransmission trigger for semantic feedback: ask again only when
/// the syntactic decode is not a valid sentence and the semantic
/// decoder could not repair it with confidence at least tau.
bool semantic_error_detect(const DecodeResult& result, const SentenceLanguage& lang,
                           double tau);

}  // namespace semcomm
