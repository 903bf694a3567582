#include "semcomm/measures.hpp"

#include <cmath>

#include "doctest.h"
#include "semcomm/huffman.hpp"
#include "semcomm/rng.hpp"
#include "support/oracles.hpp"

using namespace semcomm;

namespace {

// Three uniform messages, two of them mapped onto the same symbol:
// pure many-to-one ambiguity.
struct AmbiguityInstance {
    MessageSpace space = MessageSpace::uniform({"m1", "m2", "m3"});
    StochasticMapping mapping = StochasticMapping::deterministic({"x1", "x2"}, {0, 0, 1});
};

// Two uniform messages, the first spread over two symbols: pure
// one-to-many redundancy.
struct RedundancyInstance {
    MessageSpace space = MessageSpace::uniform({"m1", "m2"});
    StochasticMapping mapping;
    RedundancyInstance() {
        mapping.alphabet = {"x1", "x2", "x3"};
        mapping.cond = Matrix{{0.5, 0.5, 0.0}, {0.0, 0.0, 1.0}};
    }
};

oracle::Joint oracle_joint(const StochasticMapping& mapping, const MessageSpace& space) {
    oracle::Joint j;
    for (std::size_t m = 0; m < space.size(); ++m)
        for (std::size_t x = 0; x < mapping.alphabet.size(); ++x)
            j.add(m, x, space.prior[m] * mapping.cond(m, x));
    return j;
}

StochasticMapping random_mapping(Rng& rng, std::size_t k, std::size_t nx) {
    StochasticMapping m;
    for (std::size_t x = 0; x < nx; ++x) m.alphabet.push_back("x" + std::to_string(x));
    m.cond = Matrix(k, nx);
    for (std::size_t r = 0; r < k; ++r) {
        const auto row = rng.dirichlet(nx);
        for (std::size_t c = 0; c < nx; ++c) m.cond(r, c) = row[c];
    }
    return m;
}

}  // namespace

TEST_CASE("message entropy worked values") {
    // log2(3), frozen after checking the closed form and the oracle.
    const double kLog2Of3 = 1.5849625007211562;
    const auto space = MessageSpace::uniform({"a", "b", "c"});
    CHECK(std::log2(3.0) == doctest::Approx(kLog2Of3).epsilon(1e-15));
    CHECK(message_entropy(space) == doctest::Approx(kLog2Of3).epsilon(1e-12));

    MessageSpace point = MessageSpace::uniform({"a", "b"});
    point.prior = {1.0, 0.0};
    CHECK(message_entropy(point) == doctest::Approx(0.0));

    CHECK(message_entropy(MessageSpace::uniform({"a", "b"})) == doctest::Approx(1.0));
}

TEST_CASE("semantic entropy: ambiguity instance") {
    const AmbiguityInstance inst;
    // H(2/3, 1/3), computed with the joint-pmf oracle and frozen.
    const double kExpected = 0.9182958340544896;
    const auto j = oracle_joint(inst.mapping, inst.space);
    CHECK(j.h_col() == doctest::Approx(kExpected).epsilon(1e-12));
    CHECK(semantic_entropy(inst.mapping, inst.space) ==
          doctest::Approx(kExpected).epsilon(1e-12));
}

TEST_CASE("semantic entropy: identity mapping reduces to message entropy") {
    MessageSpace space = MessageSpace::uniform({"a", "b", "c", "d"});
    space.prior = {0.4, 0.3, 0.2, 0.1};
    const auto mapping =
        StochasticMapping::deterministic({"a", "b", "c", "d"}, {0, 1, 2, 3});
    CHECK(semantic_entropy(mapping, space) ==
          doctest::Approx(message_entropy(space)).epsilon(1e-12));
}

TEST_CASE("semantic entropy: redundancy instance") {
    const RedundancyInstance inst;
    const auto j = oracle_joint(inst.mapping, inst.space);
    CHECK(j.h_col() == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(semantic_entropy(inst.mapping, inst.space) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("per-symbol semantic information accessor") {
    const AmbiguityInstance inst;
    const auto info = symbol_semantic_information(inst.mapping, inst.space);
    REQUIRE(info.size() == 2);
    CHECK(info[0] == doctest::Approx(-std::log2(2.0 / 3.0)).epsilon(1e-12));
    CHECK(info[1] == doctest::Approx(-std::log2(1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("decomposition: ambiguity instance") {
    const AmbiguityInstance inst;
    const auto d = decomposition(inst.mapping, inst.space);
    const auto j = oracle_joint(inst.mapping, inst.space);

    CHECK(d.message_entropy == doctest::Approx(1.584963).epsilon(1e-6));
    CHECK(d.symbol_entropy == doctest::Approx(0.918296).epsilon(1e-6));
    CHECK(d.redundancy == 0.0);  // deterministic mapping, exactly zero
    CHECK(d.ambiguity == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    CHECK(d.redundancy == doctest::Approx(j.h_col_given_row()).epsilon(1e-12));
    CHECK(d.ambiguity == doctest::Approx(j.h_row_given_col()).epsilon(1e-12));
    // H_X = H_M + H(X|M) - H(M|X)
    CHECK(d.symbol_entropy ==
          doctest::Approx(d.message_entropy + d.redundancy - d.ambiguity).epsilon(1e-12));
}

TEST_CASE("decomposition: redundancy instance") {
    const RedundancyInstance inst;
    const auto d = decomposition(inst.mapping, inst.space);
    CHECK(d.redundancy == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.ambiguity == 0.0);  // injective symbol support, exactly zero
    CHECK(d.mutual_information == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("decomposition: identity mapping has no redundancy or ambiguity") {
    MessageSpace space = MessageSpace::uniform({"a", "b", "c"});
    space.prior = {0.5, 0.25, 0.25};
    const auto mapping = StochasticMapping::deterministic({"a", "b", "c"}, {0, 1, 2});
    const auto d = decomposition(mapping, space);
    CHECK(d.redundancy == 0.0);
    CHECK(d.ambiguity == 0.0);
    CHECK(d.mutual_information == doctest::Approx(d.message_entropy).epsilon(1e-12));
}

TEST_CASE("entropy identity and information bounds on 1000 random instances") {
    Rng rng(99);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t k = 1 + rng.next_below(10);
        const std::size_t nx = 1 + rng.next_below(8);
        std::vector<std::string> names;
        for (std::size_t m = 0; m < k; ++m) names.push_back("m" + std::to_string(m));
        MessageSpace space = MessageSpace::uniform(names);
        space.prior = rng.dirichlet(k);
        const auto mapping = random_mapping(rng, k, nx);

        const auto d = decomposition(mapping, space);
        CHECK(d.symbol_entropy ==
              doctest::Approx(d.message_entropy + d.redundancy - d.ambiguity).epsilon(1e-12));
        CHECK(d.mutual_information >= -1e-12);
        CHECK(d.mutual_information <= d.message_entropy + 1e-12);
        CHECK(d.mutual_information <= d.symbol_entropy + 1e-12);

        const auto j = oracle_joint(mapping, space);
        CHECK(d.symbol_entropy == doctest::Approx(j.h_col()).epsilon(1e-9));
        CHECK(d.mutual_information == doctest::Approx(j.mutual()).epsilon(1e-9));
    }
}

TEST_CASE("deterministic mapping has exactly zero redundancy, injective zero ambiguity") {
    Rng rng(123);
    for (int i = 0; i < 100; ++i) {
        const std::size_t k = 1 + rng.next_below(12);
        std::vector<std::string> names;
        std::vector<std::size_t> assign(k);
        for (std::size_t m = 0; m < k; ++m) {
            names.push_back("m" + std::to_string(m));
            assign[m] = rng.next_below(4);
        }
        std::vector<std::string> alphabet = {"x0", "x1", "x2", "x3"};
        MessageSpace space = MessageSpace::uniform(names);
        space.prior = rng.dirichlet(k);
        const auto det = StochasticMapping::deterministic(alphabet, assign);
        CHECK(decomposition(det, space).redundancy == 0.0);

        // Injective: distinct symbols per message.
        std::vector<std::string> wide_alphabet;
        std::vector<std::size_t> inj(k);
        for (std::size_t m = 0; m < k; ++m) {
            wide_alphabet.push_back("y" + std::to_string(m));
            inj[m] = m;
        }
        const auto injective = StochasticMapping::deterministic(wide_alphabet, inj);
        CHECK(decomposition(injective, space).ambiguity == 0.0);
    }
}

TEST_CASE("semantic block encoder rate: worked instances") {
    // Redundancy instance with one class per message.
    const RedundancyInstance inst;
    const auto r = semantic_block_encoder_rate(inst.mapping, inst.space);
    CHECK(r.rate_bound == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.class_entropy == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.huffman_avg_length == doctest::Approx(1.0).epsilon(1e-12));

    // All messages share one meaning: nothing to transmit.
    MessageSpace merged = inst.space;
    merged.meaning_class = {0, 0};
    const auto r0 = semantic_block_encoder_rate(inst.mapping, merged);
    CHECK(r0.class_entropy == doctest::Approx(0.0));
    CHECK(r0.huffman_avg_length == doctest::Approx(0.0));

    // Four equiprobable classes: dyadic, both exactly two bits.
    const auto space4 = MessageSpace::uniform({"a", "b", "c", "d"});
    const auto map4 = StochasticMapping::deterministic({"a", "b", "c", "d"}, {0, 1, 2, 3});
    const auto r4 = semantic_block_encoder_rate(map4, space4);
    CHECK(r4.class_entropy == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r4.huffman_avg_length == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("huffman satisfies the entropy bound on random partitions") {
    Rng rng(321);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 2 + rng.next_below(12);
        const auto probs = rng.dirichlet(n);
        const auto code = build_huffman(probs);
        const double len = code.expected_length(probs);
        const double h = entropy_bits(probs);
        CHECK(len >= h - 1e-9);
        CHECK(len < h + 1.0);
        // Prefix-free: no codeword prefixes another.
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b) continue;
                const auto& ca = code.codewords[a];
                const auto& cb = code.codewords[b];
                if (ca.size() > cb.size()) continue;
                bool prefix = true;
                for (std::size_t t = 0; t < ca.size(); ++t)
                    if (ca[t] != cb[t]) {
                        prefix = false;
                        break;
                    }
                CHECK_FALSE(prefix);
            }
    }
}

TEST_CASE("huffman is optimal among prefix codes for small alphabets") {
    Rng rng(654);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 2 + rng.next_below(4);  // up to 5 symbols
        const auto probs = rng.dirichlet(n);
        const double len = build_huffman(probs).expected_length(probs);
        CHECK(len == doctest::Approx(oracle::optimal_prefix_length(probs)).epsilon(1e-9));
    }
}

TEST_CASE("joint table from space and mapping is a valid pmf") {
    const AmbiguityInstance inst;
    const auto t = joint_from(inst.mapping, inst.space);
    CHECK(t.p.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.rows.size() == 3);
    CHECK(t.cols.size() == 2);
}
