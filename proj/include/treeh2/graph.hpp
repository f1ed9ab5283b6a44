#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "treeh2/errors.hpp"

namespace treeh2 {

/// Directed weighted edge (i, j): node i receives information from node j.
struct Edge {
    int src = 0;
    int dst = 0;
    double weight = 1.0;
};

/// Immutable weighted directed graph. Node ids are 0..N-1, weights are
/// strictly positive, no self-loops, at most one edge per ordered pair.
/// Undirected graphs are stored as symmetric edge pairs with equal weights.
class WeightedDigraph {
public:
    WeightedDigraph() = default;

    int node_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool is_undirected() const { return undirected_; }
    bool unit_weights() const { return unit_; }

    const std::vector<std::pair<int, double>>& out_neighbors(int i) const { return out_[i]; }
    const std::vector<std::pair<int, double>>& in_neighbors(int i) const { return in_[i]; }

    bool has_edge(int i, int j) const {
        const auto& row = out_[i];
        auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const auto& p, int v) { return p.first < v; });
        return it != row.end() && it->first == j;
    }

    double weight(int i, int j) const {
        const auto& row = out_[i];
        auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const auto& p, int v) { return p.first < v; });
        return (it != row.end() && it->first == j) ? it->second : 0.0;
    }

    /// Weighted out-degree d_i = sum_j a_{i,j}.
    double out_degree(int i) const {
        double d = 0.0;
        for (const auto& [j, w] : out_[i]) {
            (void)j;
            d += w;
        }
        return d;
    }

    /// Number of neighbors (unweighted degree); for undirected graphs this is
    /// the ordinary node degree.
    int degree(int i) const { return static_cast<int>(out_[i].size()); }

    int undirected_edge_count() const { return static_cast<int>(edges_.size() / 2); }

private:
    friend WeightedDigraph build_graph(int, const std::vector<Edge>&, bool);

    int n_ = 0;
    std::vector<Edge> edges_; // sorted by (src, dst)
    std::vector<std::vector<std::pair<int, double>>> out_, in_;
    bool undirected_ = true;
    bool unit_ = true;
};

/// Validate and canonicalize an edge list. With `undirected` set, every
/// listed edge is expanded to its symmetric pair before validation.
inline WeightedDigraph build_graph(int node_count, const std::vector<Edge>& edge_list,
                                   bool undirected) {
    if (node_count <= 0) fail(Errc::IdOutOfRange, "node count must be positive");

    std::vector<Edge> all;
    all.reserve(edge_list.size() * (undirected ? 2 : 1));
    for (const Edge& e : edge_list) {
        if (e.src < 0 || e.src >= node_count || e.dst < 0 || e.dst >= node_count)
            fail(Errc::IdOutOfRange, "edge (" + std::to_string(e.src) + "," +
                                         std::to_string(e.dst) + ") outside 0.." +
                                         std::to_string(node_count - 1));
        if (e.src == e.dst)
            fail(Errc::SelfLoop, "self-loop at node " + std::to_string(e.src));
        if (!(e.weight > 0.0))
            fail(Errc::NonpositiveWeight, "edge (" + std::to_string(e.src) + "," +
                                              std::to_string(e.dst) + ") has weight " +
                                              std::to_string(e.weight));
        all.push_back(e);
        if (undirected) all.push_back(Edge{e.dst, e.src, e.weight});
    }

    std::sort(all.begin(), all.end(), [](const Edge& a, const Edge& b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    for (size_t i = 1; i < all.size(); ++i)
        if (all[i].src == all[i - 1].src && all[i].dst == all[i - 1].dst)
            fail(Errc::DuplicateEdge, "duplicate edge (" + std::to_string(all[i].src) + "," +
                                          std::to_string(all[i].dst) + ")");

    WeightedDigraph g;
    g.n_ = node_count;
    g.edges_ = std::move(all);
    g.out_.assign(node_count, {});
    g.in_.assign(node_count, {});
    for (const Edge& e : g.edges_) {
        g.out_[e.src].emplace_back(e.dst, e.weight);
        g.in_[e.dst].emplace_back(e.src, e.weight);
        if (e.weight != 1.0) g.unit_ = false;
    }
    for (auto& row : g.in_) std::sort(row.begin(), row.end());

    g.undirected_ = true;
    for (const Edge& e : g.edges_) {
        if (g.weight(e.dst, e.src) != e.weight) {
            g.undirected_ = false;
            break;
        }
    }
    return g;
}

/// Laplacian L = D - A with D the diagonal of weighted out-degrees.
/// Row sums are zero by construction.
inline Eigen::MatrixXd laplacian(const WeightedDigraph& g) {
    const int n = g.node_count();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double deg = 0.0;
        for (const auto& [j, w] : g.out_neighbors(i)) {
            l(i, j) = -w;
            deg += w;
        }
        l(i, i) = deg;
    }
    return l;
}

namespace detail {

/// Strongly connected components, Kosaraju with explicit stacks.
/// Returns component id per node.
inline std::vector<int> scc_ids(const WeightedDigraph& g) {
    const int n = g.node_count();
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    std::vector<std::pair<int, size_t>> stack;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        stack.clear();
        stack.emplace_back(s, 0);
        while (!stack.empty()) {
            auto& [u, idx] = stack.back();
            const auto& nbrs = g.out_neighbors(u);
            if (idx < nbrs.size()) {
                int v = nbrs[idx++].first;
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.emplace_back(v, 0);
                }
            } else {
                order.push_back(u);
                stack.pop_back();
            }
        }
    }
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    std::vector<int> dfs;
    for (int k = n - 1; k >= 0; --k) {
        int s = order[k];
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        dfs.assign(1, s);
        while (!dfs.empty()) {
            int u = dfs.back();
            dfs.pop_back();
            for (const auto& [v, w] : g.in_neighbors(u)) {
                (void)w;
                if (comp[v] < 0) {
                    comp[v] = ncomp;
                    dfs.push_back(v);
                }
            }
        }
        ++ncomp;
    }
    return comp;
}

} // namespace detail

/// A graph is connected when it contains a globally reachable node, i.e. the
/// condensation of the graph has exactly one sink component. For undirected
/// graphs this coincides with ordinary connectivity.
inline bool is_connected(const WeightedDigraph& g) {
    std::vector<int> comp = detail::scc_ids(g);
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    if (ncomp <= 1) return g.node_count() >= 1;
    std::vector<char> has_out(ncomp, 0);
    for (const Edge& e : g.edges())
        if (comp[e.src] != comp[e.dst]) has_out[comp[e.src]] = 1;
    int sinks = 0;
    for (int c = 0; c < ncomp; ++c)
        if (!has_out[c]) ++sinks;
    return sinks == 1;
}

/// All-pairs shortest path lengths along edge direction; +infinity marks an
/// unreachable pair. The diameter is the maximum entry over distinct pairs.
struct DistanceMatrix {
    Eigen::MatrixXd d;
    double diameter = 0.0;
};

/// Exact integer single-source BFS distances; requires unit weights.
/// Unreachable nodes get -1.
inline std::vector<int> bfs_distances(const WeightedDigraph& g, int src) {
    std::vector<int> dist(g.node_count(), -1);
    std::vector<int> queue;
    queue.reserve(g.node_count());
    dist[src] = 0;
    queue.push_back(src);
    for (size_t h = 0; h < queue.size(); ++h) {
        int u = queue[h];
        for (const auto& [v, w] : g.out_neighbors(u)) {
            (void)w;
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

/// Exact integer all-pairs distances for unit-weight graphs.
inline std::vector<std::vector<int>> unit_distances(const WeightedDigraph& g) {
    if (!g.unit_weights()) fail(Errc::NonUnitWeights, "integer distances need unit weights");
    std::vector<std::vector<int>> d(g.node_count());
    for (int s = 0; s < g.node_count(); ++s) d[s] = bfs_distances(g, s);
    return d;
}

inline DistanceMatrix distances(const WeightedDigraph& g) {
    const int n = g.node_count();
    const double inf = std::numeric_limits<double>::infinity();
    DistanceMatrix dm;
    dm.d = Eigen::MatrixXd::Constant(n, n, inf);

    if (g.unit_weights()) {
        // integer BFS fast path: exact integer distances
        for (int s = 0; s < n; ++s) {
            std::vector<int> row = bfs_distances(g, s);
            for (int j = 0; j < n; ++j)
                if (row[j] >= 0) dm.d(s, j) = static_cast<double>(row[j]);
        }
    } else {
        using Item = std::pair<double, int>;
        for (int s = 0; s < n; ++s) {
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            dm.d(s, s) = 0.0;
            pq.emplace(0.0, s);
            while (!pq.empty()) {
                auto [du, u] = pq.top();
                pq.pop();
                if (du > dm.d(s, u)) continue;
                for (const auto& [v, w] : g.out_neighbors(u)) {
                    double dv = du + w;
                    if (dv < dm.d(s, v)) {
                        dm.d(s, v) = dv;
                        pq.emplace(dv, v);
                    }
                }
            }
        }
    }

    dm.diameter = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && dm.d(i, j) > dm.diameter) dm.diameter = dm.d(i, j);
    return dm;
}

/// An undirected graph with N-1 undirected edges is a tree iff connected.
inline bool is_tree(const WeightedDigraph& g) {
    return g.is_undirected() && g.undirected_edge_count() == g.node_count() - 1 &&
           is_connected(g);
}

/// Neighbor ids of a node (undirected view).
inline std::vector<int> neighbor_ids(const WeightedDigraph& g, int i) {
    std::vector<int> ids;
    ids.reserve(g.out_neighbors(i).size());
    for (const auto& [j, w] : g.out_neighbors(i)) {
        (void)w;
        ids.push_back(j);
    }
    return ids;
}

/// Undirected edge list as (i, j) pairs with i < j. Requires an undirected graph.
inline std::vector<std::pair<int, int>> undirected_edges(const WeightedDigraph& g) {
    if (!g.is_undirected()) fail(Errc::NotUndirected, "undirected edge list of a directed graph");
    std::vector<std::pair<int, int>> out;
    out.reserve(g.undirected_edge_count());
    for (const Edge& e : g.edges())
        if (e.src < e.dst) out.emplace_back(e.src, e.dst);
    return out;
}

/// Rebuild a unit-weight tree from undirected (i, j) pairs.
inline WeightedDigraph tree_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [i, j] : pairs) edges.push_back(Edge{i, j, 1.0});
    return build_graph(n, edges, true);
}

} // namespace treeh2
