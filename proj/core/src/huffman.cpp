#include "semcomm/huffman.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "semcomm/errors.hpp"

namespace semcomm {

double HuffmanCode::expected_length(std::span<const double> probs) const {
    if (probs.size() != codewords.size())
        throw config_error("HuffmanCode: probability vector size mismatch");
    double len = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i)
        len += probs[i] * static_cast<double>(codewords[i].size());
    return len;
}

HuffmanCode::Decoded HuffmanCode::decode(std::span<const std::uint8_t> bits) const {
    // Rebuild the trie per call; streams are short at desk scale and
    // this keeps the code struct a plain value.
    struct Node {
        int child[2] = {-1, -1};
        int symbol = -1;
    };
    std::vector<Node> trie(1);
    for (std::size_t s = 0; s < codewords.size(); ++s) {
        int at = 0;
        for (std::uint8_t b : codewords[s]) {
            int next = trie[static_cast<std::size_t>(at)].child[b];
            if (next < 0) {
                next = static_cast<int>(trie.size());
                trie.emplace_back();
                trie[static_cast<std::size_t>(at)].child[b] = next;
            }
            at = next;
        }
        trie[static_cast<std::size_t>(at)].symbol = static_cast<int>(s);
    }

    Decoded out;
    int at = 0;
    for (std::uint8_t b : bits) {
        const int next = trie[at].child[b & 1];
        if (next < 0) {
            // Dead branch: cannot happen with a complete Huffman trie,
            // but tolerate truncated/foreign codes.
            out.clean = false;
            return out;
        }
        at = next;
        if (trie[at].symbol >= 0) {
            out.symbols.push_back(trie[at].symbol);
            at = 0;
        }
    }
    out.clean = (at == 0);
    return out;
}

HuffmanCode build_huffman(std::span<const double> probs) {
    const std::size_t n = probs.size();
    if (n == 0) throw config_error("build_huffman: empty symbol set");

    HuffmanCode code;
    code.codewords.resize(n);
    if (n == 1) return code;  // empty codeword; nothing to transmit

    struct Node {
        double prob;
        int tie;  // smallest symbol index in the subtree
        int left = -1, right = -1;
        int symbol = -1;
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * n);
    using Entry = std::tuple<double, int, int>;  // (prob, tie, node index)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(probs[i] >= 0.0)) throw config_error("build_huffman: negative probability");
        nodes.push_back({probs[i], static_cast<int>(i), -1, -1, static_cast<int>(i)});
        heap.emplace(probs[i], static_cast<int>(i), static_cast<int>(i));
    }
    while (heap.size() > 1) {
        const auto [pa, ta, a] = heap.top();
        heap.pop();
        const auto [pb, tb, b] = heap.top();
        heap.pop();
        nodes.push_back({pa + pb, std::min(ta, tb), a, b, -1});
        heap.emplace(pa + pb, std::min(ta, tb), static_cast<int>(nodes.size()) - 1);
    }

    // Walk the tree; first-popped child gets bit 0.
    std::vector<std::pair<int, std::vector<std::uint8_t>>> stack;
    stack.emplace_back(std::get<2>(heap.top()), std::vector<std::uint8_t>{});
    while (!stack.empty()) {
        auto [at, prefix] = std::move(stack.back());
        stack.pop_back();
        const Node& node = nodes[at];
        if (node.symbol >= 0) {
            code.codewords[node.symbol] = std::move(prefix);
            continue;
        }
        auto left = prefix;
        left.push_back(0);
        prefix.push_back(1);
        stack.emplace_back(node.left, std::move(left));
        stack.emplace_back(node.right, std::move(prefix));
    }
    return code;
}

}  // namespace semcomm
