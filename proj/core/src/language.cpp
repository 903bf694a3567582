#include "semcomm/language.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace semcomm {

namespace {

std::string sentence_key(const std::vector<int>& words) {
    std::string key;
    key.reserve(words.size() * 4);
    for (int w : words) {
        key += std::to_string(w);
        key += ',';
    }
    return key;
}

}  // namespace

MessageSpace MessageSpace::uniform(std::vector<std::string> messages) {
    MessageSpace space;
    const std::size_t k = messages.size();
    space.messages = std::move(messages);
    space.prior.assign(k, k ? 1.0 / static_cast<double>(k) : 0.0);
    space.meaning_class.resize(k);
    for (std::size_t i = 0; i < k; ++i) space.meaning_class[i] = static_cast<ClassId>(i);
    return space;
}

std::size_t MessageSpace::index_of(const std::string& message) const {
    for (std::size_t i = 0; i < messages.size(); ++i)
        if (messages[i] == message) return i;
    throw config_error("unknown message '" + message + "'");
}

bool StochasticMapping::is_deterministic() const {
    for (std::size_t r = 0; r < cond.rows(); ++r) {
        std::size_t ones = 0;
        for (std::size_t c = 0; c < cond.cols(); ++c) {
            const double v = cond(r, c);
            if (v == 1.0)
                ++ones;
            else if (v != 0.0)
                return false;
        }
        if (ones != 1) return false;
    }
    return true;
}

StochasticMapping StochasticMapping::deterministic(std::vector<std::string> alphabet,
                                                   const std::vector<std::size_t>& assignment) {
    StochasticMapping mapping;
    mapping.cond = Matrix(assignment.size(), alphabet.size());
    for (std::size_t m = 0; m < assignment.size(); ++m) {
        if (assignment[m] >= alphabet.size())
            throw config_error("deterministic mapping: symbol index out of range");
        mapping.cond(m, assignment[m]) = 1.0;
    }
    mapping.alphabet = std::move(alphabet);
    return mapping;
}

int SentenceLanguage::find_sentence(const std::vector<int>& words) const {
    if (!sentence_index.empty()) {
        const auto it = sentence_index.find(sentence_key(words));
        return it == sentence_index.end() ? -1 : it->second;
    }
    for (std::size_t i = 0; i < sentences.size(); ++i)
        if (sentences[i] == words) return static_cast<int>(i);
    return -1;
}

void check_valid(const MessageSpace& space) {
    if (space.messages.empty()) throw config_error("MessageSpace: empty message set");
    if (space.prior.size() != space.messages.size())
        throw config_error("MessageSpace: prior size does not match message count");
    if (space.meaning_class.size() != space.messages.size())
        throw config_error("MessageSpace: meaning_class size does not match message count");
    check_distribution(space.prior, "MessageSpace.prior");
}

void check_valid(const StochasticMapping& mapping, const MessageSpace& space) {
    if (mapping.cond.rows() != space.size())
        throw config_error("StochasticMapping: row count does not match message count");
    if (mapping.cond.cols() != mapping.alphabet.size())
        throw config_error("StochasticMapping: column count does not match alphabet size");
    check_row_stochastic(mapping.cond, "StochasticMapping.cond");
}

void check_valid(const SentenceLanguage& lang) {
    if (lang.sentences.empty()) throw config_error("SentenceLanguage: empty valid set");
    if (lang.prior.size() != lang.sentences.size())
        throw config_error("SentenceLanguage: prior size does not match sentence count");
    if (lang.meaning_class.size() != lang.sentences.size())
        throw config_error("SentenceLanguage: meaning_class size does not match sentence count");
    check_distribution(lang.prior, "SentenceLanguage.prior");
    for (const auto& s : lang.sentences) {
        if (static_cast<int>(s.size()) != lang.length)
            throw config_error("SentenceLanguage: sentence length mismatch");
        for (int w : s)
            if (w < 0 || w >= static_cast<int>(lang.vocabulary.size()))
                throw config_error("SentenceLanguage: word index out of range");
    }
}

std::vector<double> logical_probability(const StochasticMapping& mapping,
                                        const MessageSpace& space) {
    check_valid(space);
    check_valid(mapping, space);
    std::vector<double> p(mapping.alphabet.size(), 0.0);
    for (std::size_t m = 0; m < space.size(); ++m)
        for (std::size_t x = 0; x < p.size(); ++x) p[x] += space.prior[m] * mapping.cond(m, x);
    return p;
}

SentenceLanguage build_sentence_language(const GrammarSpec& spec) {
    if (spec.slots.empty()) throw config_error("grammar: no slots");
    constexpr std::size_t kMaxProduct = 1000000;
    constexpr std::size_t kMaxValid = 100000;

    std::size_t product = 1;
    for (const auto& slot : spec.slots) {
        if (slot.empty()) throw config_error("grammar: empty slot");
        if (slot.size() > kMaxProduct / product)
            throw config_error("grammar: slot product exceeds desk-scale bound");
        product *= slot.size();
    }

    SentenceLanguage lang;
    lang.length = static_cast<int>(spec.slots.size());

    // Word indices either follow the declared vocabulary or the order
    // of first appearance across slots.
    std::map<std::string, int> word_id;
    if (!spec.vocabulary.empty()) {
        for (const auto& w : spec.vocabulary) {
            const auto [it, inserted] =
                word_id.try_emplace(w, static_cast<int>(lang.vocabulary.size()));
            if (!inserted) throw config_error("grammar: duplicate vocabulary word '" + w + "'");
            lang.vocabulary.push_back(w);
        }
    }
    std::vector<std::vector<int>> slot_words(spec.slots.size());
    std::vector<bool> used(lang.vocabulary.size(), false);
    for (std::size_t s = 0; s < spec.slots.size(); ++s) {
        for (const auto& w : spec.slots[s]) {
            if (!spec.vocabulary.empty()) {
                const auto it = word_id.find(w);
                if (it == word_id.end())
                    throw config_error("grammar: slot word '" + w + "' not in vocabulary");
                used[static_cast<std::size_t>(it->second)] = true;
                slot_words[s].push_back(it->second);
            } else {
                auto [it, inserted] =
                    word_id.try_emplace(w, static_cast<int>(lang.vocabulary.size()));
                if (inserted) lang.vocabulary.push_back(w);
                slot_words[s].push_back(it->second);
            }
        }
    }
    if (!spec.vocabulary.empty())
        for (std::size_t w = 0; w < used.size(); ++w)
            if (!used[w])
                throw config_error("grammar: vocabulary word '" + lang.vocabulary[w] +
                                   "' appears in no slot");

    struct Pair {
        int slot_a, word_a, slot_b, word_b;
    };
    std::vector<Pair> banned;
    for (const auto& e : spec.exclusions) {
        if (e.slot_a < 0 || e.slot_a >= lang.length || e.slot_b < 0 || e.slot_b >= lang.length)
            throw config_error("grammar: exclusion slot out of range");
        const auto a = word_id.find(e.word_a);
        const auto b = word_id.find(e.word_b);
        if (a == word_id.end() || b == word_id.end())
            throw config_error("grammar: exclusion references unknown word");
        banned.push_back({e.slot_a, a->second, e.slot_b, b->second});
    }

    std::vector<int> current(spec.slots.size());
    std::vector<std::size_t> pos(spec.slots.size(), 0);
    for (std::size_t n = 0; n < product; ++n) {
        std::size_t rem = n;
        for (std::size_t s = spec.slots.size(); s-- > 0;) {
            pos[s] = rem % slot_words[s].size();
            rem /= slot_words[s].size();
            current[s] = slot_words[s][pos[s]];
        }
        bool ok = true;
        for (const auto& p : banned) {
            if (current[p.slot_a] == p.word_a && current[p.slot_b] == p.word_b) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (lang.sentences.size() >= kMaxValid)
            throw config_error("grammar: valid set exceeds desk-scale bound of 100000");
        lang.sentence_index.emplace(sentence_key(current), static_cast<int>(lang.sentences.size()));
        lang.sentences.push_back(current);
    }

    if (lang.sentences.empty()) throw config_error("grammar: valid set is empty");

    lang.prior.assign(lang.sentences.size(), 1.0 / static_cast<double>(lang.sentences.size()));
    lang.meaning_class.resize(lang.sentences.size());
    for (std::size_t i = 0; i < lang.sentences.size(); ++i)
        lang.meaning_class[i] = static_cast<ClassId>(i);
    return lang;
}

bool semantically_equivalent(std::size_t m, std::size_t m_prime,
                             const std::vector<ClassId>& kb) {
    if (m >= kb.size() || m_prime >= kb.size())
        throw config_error("semantically_equivalent: message not in knowledge base");
    return kb[m] == kb[m_prime];
}

std::vector<ClassId> project_meaning(const SentenceLanguage& lang,
                                     const std::vector<int>& keep_slots) {
    for (int s : keep_slots)
        if (s < 0 || s >= lang.length) throw config_error("project_meaning: slot out of range");
    std::map<std::vector<int>, ClassId> classes;
    std::vector<ClassId> out(lang.sentences.size());
    for (std::size_t i = 0; i < lang.sentences.size(); ++i) {
        std::vector<int> proj;
        proj.reserve(keep_slots.size());
        for (int s : keep_slots) proj.push_back(lang.sentences[i][s]);
        const auto [it, inserted] =
            classes.try_emplace(std::move(proj), static_cast<ClassId>(classes.size()));
        out[i] = it->second;
    }
    return out;
}

}  // namespace semcomm
