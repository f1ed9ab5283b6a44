#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "treeh2/graph.hpp"

namespace treeh2 {

/// Center node(s) of a tree (one or two, found by repeatedly stripping leaves).
inline std::vector<int> tree_centers(const WeightedDigraph& g) {
    const int n = g.node_count();
    if (n == 1) return {0};
    std::vector<int> deg(n);
    for (int i = 0; i < n; ++i) deg[i] = g.degree(i);
    std::vector<int> layer;
    std::vector<char> removed(n, 0);
    for (int i = 0; i < n; ++i)
        if (deg[i] == 1) layer.push_back(i);
    int remaining = n;
    while (remaining > 2) {
        std::vector<int> next;
        for (int u : layer) {
            removed[u] = 1;
            --remaining;
            for (const auto& [v, w] : g.out_neighbors(u)) {
                (void)w;
                if (!removed[v] && --deg[v] == 1) next.push_back(v);
            }
        }
        layer = std::move(next);
    }
    std::vector<int> centers;
    for (int i = 0; i < n; ++i)
        if (!removed[i]) centers.push_back(i);
    return centers;
}

/// Canonical level sequence of a rooted tree: preorder levels (root = 1) with
/// the subtrees of every node arranged in lexicographically decreasing order.
/// Two rooted trees are isomorphic iff their sequences are equal.
inline std::vector<int> rooted_level_sequence(const WeightedDigraph& g, int root) {
    std::function<std::vector<int>(int, int, int)> enc = [&](int u, int parent,
                                                             int depth) -> std::vector<int> {
        std::vector<std::vector<int>> kids;
        for (const auto& [v, w] : g.out_neighbors(u)) {
            (void)w;
            if (v != parent) kids.push_back(enc(v, u, depth + 1));
        }
        std::sort(kids.begin(), kids.end(), std::greater<>());
        std::vector<int> out;
        out.push_back(depth);
        for (const auto& k : kids) out.insert(out.end(), k.begin(), k.end());
        return out;
    };
    return enc(root, -1, 1);
}

/// Canonical key of a free (unrooted) tree: root at the center; for bicentral
/// trees take the lexicographically smaller of the two rooted encodings.
inline std::vector<int> canonical_level_sequence(const WeightedDigraph& g) {
    std::vector<int> centers = tree_centers(g);
    std::vector<int> best = rooted_level_sequence(g, centers[0]);
    if (centers.size() == 2) {
        std::vector<int> other = rooted_level_sequence(g, centers[1]);
        if (other < best) best = std::move(other);
    }
    return best;
}

inline std::string level_sequence_string(const std::vector<int>& seq) {
    std::string s;
    for (size_t i = 0; i < seq.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(seq[i]);
    }
    return s;
}

/// Materialize a unit-weight tree from a preorder level sequence: node i sits
/// at level seq[i] and attaches to the most recent node at level seq[i] - 1.
inline WeightedDigraph tree_from_level_sequence(const std::vector<int>& seq) {
    const int n = static_cast<int>(seq.size());
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(n > 0 ? n - 1 : 0);
    std::vector<int> last_at_level(n + 2, -1);
    for (int i = 0; i < n; ++i) {
        int level = seq[i];
        if (level >= 2) pairs.emplace_back(last_at_level[level - 1], i);
        last_at_level[level] = i;
    }
    return tree_from_pairs(n, pairs);
}

/// AHU isomorphism check for trees.
inline bool trees_isomorphic(const WeightedDigraph& a, const WeightedDigraph& b) {
    if (a.node_count() != b.node_count()) return false;
    return canonical_level_sequence(a) == canonical_level_sequence(b);
}

} // namespace treeh2
