#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "semcomm/matrix.hpp"

namespace semcomm {

using ClassId = int;

/// Finite message set with a prior and a meaning-class partition.
/// The partition is the knowledge base: two messages are semantically
/// equivalent exactly when they share a class.
struct MessageSpace {
    std::vector<std::string> messages;
    std::vector<double> prior;            // sums to 1
    std::vector<ClassId> meaning_class;   // one class per message

    std::size_t size() const { return messages.size(); }

    /// Uniform prior, identity partition (every message its own meaning).
    static MessageSpace uniform(std::vector<std::string> messages);

    std::size_t index_of(const std::string& message) const;
};

/// Source / destination knowledge bases over the same message set.
/// The two partitions may disagree; that disagreement is the semantic
/// misinterpretation channel, separate from transmission noise.
struct KnowledgeBasePair {
    std::vector<ClassId> kb_source;
    std::vector<ClassId> kb_destination;
};

/// Conditional table p(x|m) from messages to symbols. Deterministic
/// mappings x = f(m) are the rows-are-one-hot special case; one-to-many
/// mappings have several nonzero entries per row, many-to-one mappings
/// have columns touched by several rows.
struct StochasticMapping {
    std::vector<std::string> alphabet;    // symbols, size |X|
    Matrix cond;                          // K x |X|, row-stochastic

    bool is_deterministic() const;

    /// Builds the deterministic mapping m -> alphabet[assignment[m]].
    static StochasticMapping deterministic(std::vector<std::string> alphabet,
                                           const std::vector<std::size_t>& assignment);
};

/// Explicitly enumerated sentence language: the shared a-priori
/// structure that the semantic decoder exploits. Sentences are stored
/// as vocabulary-index tuples of fixed length.
struct SentenceLanguage {
    std::vector<std::string> vocabulary;
    int length = 0;                               // words per sentence
    std::vector<std::vector<int>> sentences;      // the valid set
    std::vector<double> prior;                    // over valid sentences
    std::vector<ClassId> meaning_class;           // per sentence

    std::size_t size() const { return sentences.size(); }

    /// Index of a word sequence in the valid set, or -1.
    int find_sentence(const std::vector<int>& words) const;

    /// Internal lookup table, filled by build_sentence_language/loaders.
    std::unordered_map<std::string, int> sentence_index;
};

/// Positional grammar: admissible words per slot plus pairwise
/// exclusions (word A at slot i never co-occurs with word B at slot j).
/// An explicit vocabulary fixes the word indexing (and therefore the
/// fixed-length bit patterns downstream); when omitted, words are
/// indexed in order of first appearance across slots.
struct GrammarSpec {
    struct Exclusion {
        int slot_a = 0;
        std::string word_a;
        int slot_b = 0;
        std::string word_b;
    };
    std::vector<std::string> vocabulary;  // optional explicit ordering
    std::vector<std::vector<std::string>> slots;
    std::vector<Exclusion> exclusions;
};

void check_valid(const MessageSpace& space);
void check_valid(const StochasticMapping& mapping, const MessageSpace& space);
void check_valid(const SentenceLanguage& lang);

/// Logical probability of each symbol: p_S(x) = sum_m p(x|m) p(m).
std::vector<double> logical_probability(const StochasticMapping& mapping,
                                        const MessageSpace& space);

/// Enumerates the valid-sentence set of a grammar. Uniform prior,
/// identity meaning partition. Desk-scale bounds enforced: the raw slot
/// product may not exceed 10^6 candidates and the valid set 10^5.
SentenceLanguage build_sentence_language(const GrammarSpec& spec);

/// True iff the knowledge base puts both messages in the same class.
/// `kb` maps message index -> class id; unknown indices are lookup errors.
bool semantically_equivalent(std::size_t m, std::size_t m_prime,
                             const std::vector<ClassId>& kb);

/// Meaning partition induced by projecting sentences onto a subset of
/// slots: sentences agreeing on those positions share a class
/// (synonymous variation lives in the ignored slots).
std::vector<ClassId> project_meaning(const SentenceLanguage& lang,
                                     const std::vector<int>& keep_slots);

}  // namespace semcomm
