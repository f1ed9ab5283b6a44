#pragma once

// Shared test oracles. Everything here is intentionally independent of the
// library code paths it cross-checks: Floyd-Warshall instead of BFS for
// distance sums, Prufer sequences instead of level-sequence generation for
// tree enumeration, backtracking search instead of canonical forms for
// isomorphism.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "treeh2/canonical.hpp"
#include "treeh2/graph.hpp"
#include "treeh2/projection.hpp"

namespace testutil {

/// Pairwise distance sum via Floyd-Warshall (doubles), rounded to integer.
inline long long kf_floyd(const treeh2::WeightedDigraph& g) {
    const int n = g.node_count();
    const double inf = 1e18;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (int i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const treeh2::Edge& e : g.edges()) d[e.src][e.dst] = e.weight;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) sum += d[i][j];
    return std::llround(sum);
}

/// Decode a Prufer sequence into a labeled tree on n nodes (min-heap variant).
inline treeh2::WeightedDigraph prufer_decode(const std::vector<int>& seq, int n) {
    std::vector<int> degree(n, 1);
    for (int x : seq) ++degree[x];
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int i = 0; i < n; ++i)
        if (degree[i] == 1) leaves.push(i);
    std::vector<std::pair<int, int>> pairs;
    for (int x : seq) {
        int leaf = leaves.top();
        leaves.pop();
        pairs.emplace_back(leaf, x);
        if (--degree[x] == 1) leaves.push(x);
    }
    int a = leaves.top();
    leaves.pop();
    int b = leaves.top();
    pairs.emplace_back(a, b);
    return treeh2::tree_from_pairs(n, pairs);
}

/// Number of non-isomorphic trees on n nodes by exhausting all n^(n-2)
/// labeled trees via Prufer sequences and deduplicating canonical keys.
inline long long prufer_tree_count(int n) {
    if (n == 1 || n == 2) return 1;
    std::set<std::vector<int>> keys;
    std::vector<int> seq(n - 2, 0);
    while (true) {
        keys.insert(treeh2::canonical_level_sequence(prufer_decode(seq, n)));
        int pos = n - 3;
        while (pos >= 0 && seq[pos] == n - 1) seq[pos--] = 0;
        if (pos < 0) break;
        ++seq[pos];
    }
    return static_cast<long long>(keys.size());
}

/// Backtracking tree-isomorphism test (degree-pruned), independent of the
/// canonical encoding.
inline bool brute_isomorphic(const treeh2::WeightedDigraph& a, const treeh2::WeightedDigraph& b) {
    const int n = a.node_count();
    if (b.node_count() != n) return false;
    std::vector<int> da(n), db(n);
    for (int i = 0; i < n; ++i) {
        da[i] = a.degree(i);
        db[i] = b.degree(i);
    }
    {
        std::vector<int> sa = da, sb = db;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    std::vector<int> map(n, -1), used(n, 0);
    // match nodes in BFS order from node 0 of `a` so each new node has a
    // mapped neighbor to anchor on
    std::vector<int> order;
    std::vector<int> parent(n, -1);
    {
        std::vector<char> seen(n, 0);
        std::vector<int> queue{0};
        seen[0] = 1;
        for (size_t h = 0; h < queue.size(); ++h) {
            int u = queue[h];
            order.push_back(u);
            for (const auto& [v, w] : a.out_neighbors(u)) {
                (void)w;
                if (!seen[v]) {
                    seen[v] = 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
    }
    std::function<bool(size_t)> rec = [&](size_t idx) -> bool {
        if (idx == order.size()) return true;
        int u = order[idx];
        if (parent[u] < 0) {
            for (int cand = 0; cand < n; ++cand) {
                if (used[cand] || db[cand] != da[u]) continue;
                map[u] = cand;
                used[cand] = 1;
                if (rec(idx + 1)) return true;
                used[cand] = 0;
                map[u] = -1;
            }
            return false;
        }
        int anchor = map[parent[u]];
        for (const auto& [cand, w] : b.out_neighbors(anchor)) {
            (void)w;
            if (used[cand] || db[cand] != da[u]) continue;
            map[u] = cand;
            used[cand] = 1;
            if (rec(idx + 1)) return true;
            used[cand] = 0;
            map[u] = -1;
        }
        return false;
    };
    return rec(0);
}

/// A second valid projection basis (Householder onto the last axis) for
/// basis-invariance checks; differs from the library's deterministic choice.
inline Eigen::MatrixXd alt_projection_basis(int n) {
    Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    Eigen::VectorXd v = u;
    v(n - 1) -= 1.0;
    Eigen::MatrixXd h =
        Eigen::MatrixXd::Identity(n, n) - (2.0 / v.squaredNorm()) * v * v.transpose();
    return h.topRows(n - 1);
}

/// Seeded random connected undirected graph: a random recursive spanning tree
/// plus a random subset of extra edges. Weights are dyadic rationals (exact
/// binary fractions), so degree sums and Laplacian row sums are exact.
inline treeh2::WeightedDigraph random_connected_graph(std::mt19937_64& rng, int n,
                                                      double extra_edge_prob,
                                                      bool unit_weights) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> dyadic(16, 256); // weight = k/64 in [0.25, 4]
    auto weight = [&]() { return unit_weights ? 1.0 : dyadic(rng) / 64.0; };
    std::vector<treeh2::Edge> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        edges.push_back(treeh2::Edge{pick(rng), v, weight()});
    }
    std::set<std::pair<int, int>> present;
    for (const auto& e : edges) present.insert(std::minmax(e.src, e.dst));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (present.count({i, j})) continue;
            if (coin(rng) < extra_edge_prob) edges.push_back(treeh2::Edge{i, j, weight()});
        }
    return treeh2::build_graph(n, edges, true);
}

} // namespace testutil
