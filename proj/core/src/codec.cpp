#include "semcomm/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

namespace semcomm {

namespace {

std::size_t bits_needed(std::size_t n) {
    std::size_t bits = 0;
    std::size_t span = 1;
    while (span < n) {
        span <<= 1;
        ++bits;
    }
    return std::max<std::size_t>(bits, 1);
}

// Parity equations for the systematic (7,4) code; H columns are
// distinct and nonzero, so every single-bit error has a unique syndrome.
constexpr std::uint8_t kParity[3][4] = {
    {1, 1, 0, 1},  // p1 = d1+d2+d4
    {1, 0, 1, 1},  // p2 = d1+d3+d4
    {0, 1, 1, 1},  // p3 = d2+d3+d4
};

int syndrome_to_position(int s1, int s2, int s3) {
    // Syndrome bits (s1,s2,s3) match the H column of the flipped position.
    static constexpr int kLut[8] = {-1, 6, 5, 2, 4, 1, 0, 3};
    return kLut[(s1 << 2) | (s2 << 1) | s3];
}

}  // namespace

void check_valid(const SyntacticCodec& codec) {
    if (codec.channel_code == ChannelCodeKind::repetition) {
        if (codec.repetition_factor < 1 || codec.repetition_factor % 2 == 0)
            throw config_error("SyntacticCodec: repetition factor must be odd and >= 1");
    }
}

Bits hamming74_encode(std::span<const std::uint8_t> info) {
    if (info.size() % 4 != 0) throw config_error("hamming74_encode: info length not multiple of 4");
    Bits out;
    out.reserve(info.size() / 4 * 7);
    for (std::size_t b = 0; b < info.size(); b += 4) {
        for (int i = 0; i < 4; ++i) out.push_back(info[b + i] & 1);
        for (const auto& row : kParity) {
            std::uint8_t p = 0;
            for (int i = 0; i < 4; ++i) p ^= static_cast<std::uint8_t>(row[i] & info[b + i]);
            out.push_back(p);
        }
    }
    return out;
}

Bits hamming74_decode(std::span<const std::uint8_t> received) {
    if (received.size() % 7 != 0)
        throw config_error("hamming74_decode: stream length not multiple of 7");
    Bits out;
    out.reserve(received.size() / 7 * 4);
    std::uint8_t block[7];
    for (std::size_t b = 0; b < received.size(); b += 7) {
        for (int i = 0; i < 7; ++i) block[i] = received[b + i] & 1;
        int syn[3];
        for (int r = 0; r < 3; ++r) {
            std::uint8_t s = block[4 + r];
            for (int i = 0; i < 4; ++i) s ^= static_cast<std::uint8_t>(kParity[r][i] & block[i]);
            syn[r] = s;
        }
        const int pos = syndrome_to_position(syn[0], syn[1], syn[2]);
        if (pos >= 0) block[pos] ^= 1;
        for (int i = 0; i < 4; ++i) out.push_back(block[i]);
    }
    return out;
}

LinkCodec::LinkCodec(const SentenceLanguage& lang, const SyntacticCodec& spec)
    : spec_(spec), sentence_length_(lang.length), vocab_size_(lang.vocabulary.size()) {
    check_valid(lang);
    check_valid(spec);

    if (spec.source_code == SourceCodeKind::fixed_length) {
        fixed_bits_per_word_ = bits_needed(vocab_size_);
        word_bits_.resize(vocab_size_);
        for (std::size_t w = 0; w < vocab_size_; ++w) {
            Bits bits(fixed_bits_per_word_);
            for (std::size_t i = 0; i < fixed_bits_per_word_; ++i)
                bits[i] = static_cast<std::uint8_t>((w >> (fixed_bits_per_word_ - 1 - i)) & 1);
            word_bits_[w] = std::move(bits);
        }
    } else {
        // Word marginal over all positions, weighted by the sentence prior.
        std::vector<double> marginal(vocab_size_, 0.0);
        for (std::size_t s = 0; s < lang.sentences.size(); ++s)
            for (int w : lang.sentences[s])
                marginal[static_cast<std::size_t>(w)] += lang.prior[s] / lang.length;
        huffman_ = build_huffman(marginal);
        word_bits_ = huffman_.codewords;
        // A one-word vocabulary would yield empty codewords; keep the
        // stream non-degenerate so framing stays well-defined.
        if (vocab_size_ == 1 && word_bits_[0].empty()) word_bits_[0] = {0};
    }

    switch (spec.channel_code) {
        case ChannelCodeKind::none: block_bits_ = 1; break;
        case ChannelCodeKind::repetition:
            block_bits_ = static_cast<std::size_t>(spec.repetition_factor);
            break;
        case ChannelCodeKind::hamming74: block_bits_ = 7; break;
    }
}

Bits LinkCodec::source_encode(const std::vector<int>& words) const {
    Bits bits;
    for (int w : words) {
        if (w < 0 || static_cast<std::size_t>(w) >= vocab_size_)
            throw config_error("source_encode: word index out of range");
        const Bits& cw = word_bits_[static_cast<std::size_t>(w)];
        bits.insert(bits.end(), cw.begin(), cw.end());
    }
    return bits;
}

Bits LinkCodec::encode(const std::vector<int>& words) const {
    Bits info = source_encode(words);
    switch (spec_.channel_code) {
        case ChannelCodeKind::none: return info;
        case ChannelCodeKind::repetition: {
            Bits out;
            out.reserve(info.size() * block_bits_);
            for (std::uint8_t b : info)
                out.insert(out.end(), block_bits_, b);
            return out;
        }
        case ChannelCodeKind::hamming74: {
            while (info.size() % 4 != 0) info.push_back(0);
            return hamming74_encode(info);
        }
    }
    throw config_error("encode: unknown channel code");
}

Bits LinkCodec::channel_decode(const Bits& received) const {
    switch (spec_.channel_code) {
        case ChannelCodeKind::none: return received;
        case ChannelCodeKind::repetition: {
            if (received.size() % block_bits_ != 0)
                throw config_error("channel_decode: stream length not multiple of repetition factor");
            Bits out;
            out.reserve(received.size() / block_bits_);
            for (std::size_t b = 0; b < received.size(); b += block_bits_) {
                int ones = 0;
                for (std::size_t i = 0; i < block_bits_; ++i) ones += received[b + i] & 1;
                out.push_back(static_cast<std::uint8_t>(2 * ones > static_cast<int>(block_bits_)));
            }
            return out;
        }
        case ChannelCodeKind::hamming74: return hamming74_decode(received);
    }
    throw config_error("channel_decode: unknown channel code");
}

SyntacticDecode LinkCodec::syntactic_decode(const Bits& received) const {
    SyntacticDecode result;
    result.info_bits = channel_decode(received);
    const Bits& info = result.info_bits;

    if (spec_.source_code == SourceCodeKind::fixed_length) {
        const std::size_t bpw = fixed_bits_per_word_;
        for (int w = 0; w < sentence_length_; ++w) {
            const std::size_t at = static_cast<std::size_t>(w) * bpw;
            if (at + bpw > info.size()) {
                result.clean = false;
                break;
            }
            std::size_t value = 0;
            for (std::size_t i = 0; i < bpw; ++i) value = (value << 1) | (info[at + i] & 1);
            if (value >= vocab_size_) {
                // Out-of-range pattern: nearest valid codeword, ties to
                // the lowest word index.
                std::size_t best = 0;
                int best_dist = static_cast<int>(bpw) + 1;
                for (std::size_t cand = 0; cand < vocab_size_; ++cand) {
                    const auto diff = value ^ cand;
                    const int dist = std::popcount(diff);
                    if (dist < best_dist) {
                        best_dist = dist;
                        best = cand;
                    }
                }
                value = best;
            }
            result.words.push_back(static_cast<int>(value));
        }
    } else {
        auto decoded = huffman_.decode(info);
        if (static_cast<int>(decoded.symbols.size()) > sentence_length_)
            decoded.symbols.resize(sentence_length_);  // padding decoded as extra words
        result.words = std::move(decoded.symbols);
        result.clean = static_cast<int>(result.words.size()) == sentence_length_;
    }
    if (static_cast<int>(result.words.size()) != sentence_length_) result.clean = false;
    return result;
}

DecodeResult semantic_map_decode(const std::vector<int>& y, const MessageSpace& space,
                                 const StochasticMapping& mapping,
                                 const DiscreteChannel& channel) {
    check_valid(space);
    check_valid(mapping, space);
    check_valid(channel);

    // Symbol strings are sequences of single-character channel inputs.
    std::map<char, std::size_t> input_index;
    for (std::size_t i = 0; i < channel.input_alphabet.size(); ++i) {
        if (channel.input_alphabet[i].size() != 1)
            throw config_error("semantic_map_decode: channel input labels must be single characters");
        input_index[channel.input_alphabet[i][0]] = i;
    }

    const std::size_t n_sym = mapping.alphabet.size();
    std::vector<double> symbol_like(n_sym, 0.0);  // p(y | x) per mapping symbol
    for (std::size_t x = 0; x < n_sym; ++x) {
        const std::string& label = mapping.alphabet[x];
        if (label.size() != y.size()) continue;  // length mismatch: zero likelihood
        double like = 1.0;
        for (std::size_t t = 0; t < label.size(); ++t) {
            const auto it = input_index.find(label[t]);
            if (it == input_index.end())
                throw config_error("semantic_map_decode: mapping symbol uses unknown channel input");
            if (y[t] < 0 || y[t] >= static_cast<int>(channel.transition.cols()))
                throw config_error("semantic_map_decode: observation outside output alphabet");
            like *= channel.transition(it->second, static_cast<std::size_t>(y[t]));
        }
        symbol_like[x] = like;
    }

    DecodeResult result;
    result.posterior.assign(space.size(), 0.0);
    double total = 0.0;
    for (std::size_t m = 0; m < space.size(); ++m) {
        double like = 0.0;
        for (std::size_t x = 0; x < n_sym; ++x) {
            const double px_m = mapping.cond(m, x);
            if (px_m > 0.0) like += px_m * symbol_like[x];
        }
        result.posterior[m] = space.prior[m] * like;
        total += result.posterior[m];
    }
    if (!(total > 0.0)) throw numeric_error("semantic_map_decode: observation has zero likelihood");

    for (std::size_t m = 0; m < space.size(); ++m) {
        result.posterior[m] /= total;
        if (result.posterior[m] > result.confidence) {
            result.confidence = result.posterior[m];
            result.message_hat = static_cast<int>(m);
        }
    }
    return result;
}

SemanticDecoder::SemanticDecoder(const SentenceLanguage& lang, const LinkCodec& codec) {
    const std::size_t n = lang.sentences.size();
    encodings_.resize(n);
    packed_.resize(n);
    bit_count_.resize(n);
    log_prior_.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        encodings_[s] = codec.encode(lang.sentences[s]);
        bit_count_[s] = encodings_[s].size();
        auto& packed = packed_[s];
        packed.assign((bit_count_[s] + 63) / 64, 0);
        for (std::size_t i = 0; i < bit_count_[s]; ++i)
            if (encodings_[s][i] & 1) packed[i / 64] |= (1ULL << (i % 64));
        log_prior_[s] = lang.prior[s] > 0.0 ? std::log(lang.prior[s])
                                            : -std::numeric_limits<double>::infinity();
    }
}

DecodeResult SemanticDecoder::decode(const Bits& y, double epsilon) const {
    if (!(epsilon >= 0.0 && epsilon <= 0.5))
        throw config_error("SemanticDecoder: epsilon must lie in [0, 0.5]");
    const std::size_t n = log_prior_.size();

    std::vector<std::uint64_t> ypacked((y.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] & 1) ypacked[i / 64] |= (1ULL << (i % 64));

    DecodeResult result;
    result.posterior.assign(n, 0.0);

    std::vector<double> score(n, -std::numeric_limits<double>::infinity());
    double best = -std::numeric_limits<double>::infinity();
    const double log_flip = epsilon > 0.0 ? std::log(epsilon / (1.0 - epsilon)) : 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        if (bit_count_[s] != y.size()) continue;  // zero likelihood
        int dist = 0;
        for (std::size_t w = 0; w < ypacked.size(); ++w)
            dist += std::popcount(packed_[s][w] ^ ypacked[w]);
        if (epsilon == 0.0) {
            if (dist != 0) continue;
            score[s] = log_prior_[s];
        } else {
            score[s] = log_prior_[s] + dist * log_flip;
        }
        best = std::max(best, score[s]);
    }
    if (!std::isfinite(best))
        throw numeric_error("SemanticDecoder: observation has zero likelihood");

    double total = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        if (std::isfinite(score[s])) {
            result.posterior[s] = std::exp(score[s] - best);
            total += result.posterior[s];
        }
    }
    for (std::size_t s = 0; s < n; ++s) {
        result.posterior[s] /= total;
        if (result.posterior[s] > result.confidence) {
            result.confidence = result.posterior[s];
            result.message_hat = static_cast<int>(s);
        }
    }
    return result;
}

DecodeResult SemanticDecoder::decode(const Bits& y,
                                     const std::vector<double>& eps_per_bit) const {
    if (eps_per_bit.size() != y.size())
        throw config_error("SemanticDecoder: per-bit epsilon length mismatch");
    for (double e : eps_per_bit)
        if (!(e >= 0.0 && e <= 0.5))
            throw config_error("SemanticDecoder: epsilon must lie in [0, 0.5]");

    const std::size_t n = log_prior_.size();
    DecodeResult result;
    result.posterior.assign(n, 0.0);

    std::vector<double> score(n, -std::numeric_limits<double>::infinity());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < n; ++s) {
        if (bit_count_[s] != y.size()) continue;
        double acc = log_prior_[s];
        for (std::size_t i = 0; i < y.size(); ++i) {
            const bool differ = ((encodings_[s][i] ^ y[i]) & 1) != 0;
            const double e = eps_per_bit[i];
            if (differ) {
                if (e == 0.0) {
                    acc = -std::numeric_limits<double>::infinity();
                    break;
                }
                acc += std::log(e) - std::log1p(-e);
            }
        }
        score[s] = acc;
        best = std::max(best, acc);
    }
    if (!std::isfinite(best))
        throw numeric_error("SemanticDecoder: observation has zero likelihood");

    double total = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        if (std::isfinite(score[s])) {
            result.posterior[s] = std::exp(score[s] - best);
            total += result.posterior[s];
        }
    }
    for (std::size_t s = 0; s < n; ++s) {
        result.posterior[s] /= total;
        if (result.posterior[s] > result.confidence) {
            result.confidence = result.posterior[s];
            result.message_hat = static_cast<int>(s);
        }
    }
    return result;
}

bool semantic_error_detect(const DecodeResult& result, const SentenceLanguage& lang,
                           double tau) {
    if (!(tau >= 0.0 && tau <= 1.0))
        throw config_error("semantic_error_detect: tau must lie in [0, 1]");
    const bool valid_sentence = lang.find_sentence(result.syntactic_words) >= 0;
    if (valid_sentence) return false;
    return result.confidence < tau;
}

}  // namespace semcomm
