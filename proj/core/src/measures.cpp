#include "semcomm/measures.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "semcomm/huffman.hpp"

namespace semcomm {

namespace {

inline double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

double entropy_bits(std::span<const double> p) {
    double h = 0.0;
    for (double v : p) h -= xlog2x(v);
    return h;
}

double conditional_entropy_cols_given_rows(const Matrix& joint) {
    // H(C|R) = -sum_{r,c} p(r,c) log2 p(c|r)
    double h = 0.0;
    for (std::size_t r = 0; r < joint.rows(); ++r) {
        const double pr = joint.row_sum(r);
        if (pr <= 0.0) continue;
        for (std::size_t c = 0; c < joint.cols(); ++c) {
            const double v = joint(r, c);
            if (v > 0.0) h -= v * std::log2(v / pr);
        }
    }
    return h;
}

double conditional_entropy_rows_given_cols(const Matrix& joint) {
    double h = 0.0;
    const auto col = joint.col_sums();
    for (std::size_t c = 0; c < joint.cols(); ++c) {
        if (col[c] <= 0.0) continue;
        for (std::size_t r = 0; r < joint.rows(); ++r) {
            const double v = joint(r, c);
            if (v > 0.0) h -= v * std::log2(v / col[c]);
        }
    }
    return h;
}

double mutual_information_bits(const Matrix& joint) {
    const auto row = joint.row_sums();
    const auto col = joint.col_sums();
    double mi = 0.0;
    for (std::size_t r = 0; r < joint.rows(); ++r)
        for (std::size_t c = 0; c < joint.cols(); ++c) {
            const double v = joint(r, c);
            if (v > 0.0) mi += v * std::log2(v / (row[r] * col[c]));
        }
    return mi;
}

JointTable joint_from(const StochasticMapping& mapping, const MessageSpace& space) {
    check_valid(space);
    check_valid(mapping, space);
    JointTable t;
    t.rows = space.messages;
    t.cols = mapping.alphabet;
    t.p = Matrix(space.size(), mapping.alphabet.size());
    for (std::size_t m = 0; m < space.size(); ++m)
        for (std::size_t x = 0; x < mapping.alphabet.size(); ++x)
            t.p(m, x) = space.prior[m] * mapping.cond(m, x);
    return t;
}

double message_entropy(const MessageSpace& space) {
    check_valid(space);
    return entropy_bits(space.prior);
}

std::vector<double> symbol_semantic_information(const StochasticMapping& mapping,
                                                const MessageSpace& space) {
    const auto ps = logical_probability(mapping, space);
    std::vector<double> info(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i)
        info[i] = ps[i] > 0.0 ? -std::log2(ps[i]) : std::numeric_limits<double>::infinity();
    return info;
}

double semantic_entropy(const StochasticMapping& mapping, const MessageSpace& space) {
    return entropy_bits(logical_probability(mapping, space));
}

Decomposition decomposition(const StochasticMapping& mapping, const MessageSpace& space) {
    const JointTable t = joint_from(mapping, space);
    Decomposition d;
    d.message_entropy = entropy_bits(space.prior);
    d.symbol_entropy = entropy_bits(t.p.col_sums());
    d.redundancy = conditional_entropy_cols_given_rows(t.p);
    d.ambiguity = conditional_entropy_rows_given_cols(t.p);
    d.mutual_information = mutual_information_bits(t.p);
    return d;
}

std::vector<double> meaning_class_distribution(const MessageSpace& space) {
    check_valid(space);
    std::map<ClassId, std::size_t> id;
    std::vector<double> mass;
    for (std::size_t m = 0; m < space.size(); ++m) {
        const auto [it, inserted] = id.try_emplace(space.meaning_class[m], mass.size());
        if (inserted) mass.push_back(0.0);
        mass[it->second] += space.prior[m];
    }
    return mass;
}

BlockEncoderRate semantic_block_encoder_rate(const StochasticMapping& mapping,
                                             const MessageSpace& space) {
    BlockEncoderRate r;
    r.rate_bound = decomposition(mapping, space).mutual_information;
    const auto classes = meaning_class_distribution(space);
    r.class_entropy = entropy_bits(classes);
    r.huffman_avg_length = build_huffman(classes).expected_length(classes);
    return r;
}

}  // namespace semcomm
