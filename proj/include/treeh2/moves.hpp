#pragma once

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include "treeh2/families.hpp"
#include "treeh2/metrics.hpp"

namespace treeh2 {

/// A single local topology change: one or more leaves re-attached.
struct LocalMove {
    enum class Kind {
        BouquetLeafTransfer,   // smaller palm bouquet -> larger one
        VineLeafTransfer,      // short-chain end leaf -> long-chain end
        BouquetShiftInward,    // whole bouquet one node toward the path center
        BouquetDropTowardPath, // whole (or all-but-one) bouquet one node closer to the path
        PendantDrop,           // the lone depth-2 node re-attached to the path
        RewireStep,            // decentralized candidate move
    };
    Kind kind = Kind::RewireStep;
    int from_node = -1;
    int to_node = -1;
    std::vector<int> moved;
    long long delta_kf = 0;      // K_f(after) - K_f(before)
    bool expects_decrease = true; // predicted sign where the move has one
};

struct MoveResult {
    WeightedDigraph tree;
    long long delta_kf = 0;
    LocalMove move;
};

namespace detail {

/// Re-attach leaves: each (node, old_neighbor, new_neighbor) edit replaces one
/// unit edge. The node set N is preserved; callers guarantee the result stays
/// a tree.
inline WeightedDigraph reattach(const WeightedDigraph& g,
                                const std::vector<std::tuple<int, int, int>>& edits) {
    std::vector<std::pair<int, int>> pairs = undirected_edges(g);
    for (auto [node, old_nbr, new_nbr] : edits) {
        auto key = std::minmax(node, old_nbr);
        auto it = std::find(pairs.begin(), pairs.end(), std::make_pair(key.first, key.second));
        if (it == pairs.end()) fail(Errc::HypothesesViolated, "edit references a missing edge");
        *it = std::minmax(node, new_nbr);
    }
    return tree_from_pairs(g.node_count(), pairs);
}

/// Distance of every node to a fixed path, plus the neighbor one step closer.
struct PathContext {
    std::vector<int> path;
    std::vector<char> on_path;
    std::vector<int> dist;   // distance to the nearest path node
    std::vector<int> toward; // neighbor one step closer to the path (-1 on the path)
    std::vector<int> pos;    // index along the path (-1 off the path)
};

inline PathContext path_context(const WeightedDigraph& g, std::vector<int> path) {
    PathContext ctx;
    ctx.path = std::move(path);
    const int n = g.node_count();
    ctx.on_path.assign(n, 0);
    ctx.dist.assign(n, -1);
    ctx.toward.assign(n, -1);
    ctx.pos.assign(n, -1);
    std::vector<int> queue;
    for (size_t idx = 0; idx < ctx.path.size(); ++idx) {
        int v = ctx.path[idx];
        ctx.on_path[v] = 1;
        ctx.dist[v] = 0;
        ctx.pos[v] = static_cast<int>(idx);
        queue.push_back(v);
    }
    for (size_t h = 0; h < queue.size(); ++h) {
        int u = queue[h];
        for (const auto& [v, w] : g.out_neighbors(u)) {
            (void)w;
            if (ctx.dist[v] < 0) {
                ctx.dist[v] = ctx.dist[u] + 1;
                ctx.toward[v] = u;
                queue.push_back(v);
            }
        }
    }
    return ctx;
}

/// Distance from a backbone position to the nearer of the path's center
/// positions floor(d/2) and ceil(d/2).
inline int dist_to_path_center(int j, int d) {
    return std::min(std::abs(j - d / 2), std::abs(j - (d + 1) / 2));
}

inline const TreeBlueprint* find_family(const Classification& c, TreeBlueprint::Kind kind) {
    for (const auto& b : c.families)
        if (b.kind == kind) return &b;
    return nullptr;
}

} // namespace detail

/// Move one leaf of a double palm D_{N,p,q} (1 < p <= q, p+q <= N-2) from the
/// smaller bouquet to the larger, producing D_{N,p-1,q+1}.
/// Exact change: delta K_f = -(N-p-q-1)(q-p+1) < 0.
inline MoveResult move_bouquet_leaf(const WeightedDigraph& g) {
    Classification c = classify(g);
    const TreeBlueprint* palm = detail::find_family(c, TreeBlueprint::Kind::DoublePalm);
    if (!palm) fail(Errc::HypothesesViolated, "input is not a double palm");
    const int n = palm->n, p = palm->p, q = palm->q;
    if (p <= 1) fail(Errc::HypothesesViolated, "double palm leaf transfer needs p > 1");

    CaterpillarView cv = caterpillar_view(g);
    const int d = cv.d();
    int p_end = 1, q_end = d - 1;
    if (static_cast<int>(cv.bouquets[p_end].size()) + 1 != p) std::swap(p_end, q_end);

    MoveResult res;
    res.move.kind = LocalMove::Kind::BouquetLeafTransfer;
    res.move.from_node = cv.backbone[p_end];
    res.move.to_node = cv.backbone[q_end];
    res.move.moved = {cv.bouquets[p_end].back()};
    res.move.expects_decrease = true;
    res.delta_kf = -static_cast<long long>(n - p - q - 1) * (q - p + 1);
    res.move.delta_kf = res.delta_kf;
    res.tree = detail::reattach(g, {{res.move.moved[0], res.move.from_node, res.move.to_node}});
    return res;
}

/// Move the end leaf of the short chain of a vine T^r_{l,k} (1 <= l <= k,
/// |T| >= 2) to the end of the long chain, producing T^r_{l-1,k+1}.
/// Exact change: delta K_f = +(N-l-k-1)(k-l+1) > 0.
inline MoveResult move_vine_leaf(const WeightedDigraph& g, const VineDecomposition& vd) {
    const int l = static_cast<int>(vd.short_path.size());
    const int k = static_cast<int>(vd.long_path.size());
    const int n = g.node_count();
    if (l < 1) fail(Errc::HypothesesViolated, "vine leaf transfer needs l >= 1");
    if (n - l - k < 2) fail(Errc::HypothesesViolated, "vine subtree must keep more than one node");

    int leaf = vd.short_path.back();
    int old_nbr = vd.short_path.size() >= 2 ? vd.short_path[vd.short_path.size() - 2] : vd.root;

    MoveResult res;
    res.move.kind = LocalMove::Kind::VineLeafTransfer;
    res.move.from_node = old_nbr;
    res.move.to_node = vd.long_path.back();
    res.move.moved = {leaf};
    res.move.expects_decrease = false; // this direction strictly increases K_f
    res.delta_kf = static_cast<long long>(n - l - k - 1) * (k - l + 1);
    res.move.delta_kf = res.delta_kf;
    res.tree = detail::reattach(g, {{leaf, old_nbr, res.move.to_node}});
    return res;
}

/// The K_f-decreasing direction of the vine move: end leaf of the long chain
/// re-attached to the end of the short chain, T^r_{l,k} -> T^r_{l+1,k-1}.
/// Needs k >= l + 2 to change the isomorphism class; delta = -(N-l-k-1)(k-l-1).
inline MoveResult rebalance_vine(const WeightedDigraph& g, const VineDecomposition& vd) {
    const int l = static_cast<int>(vd.short_path.size());
    const int k = static_cast<int>(vd.long_path.size());
    const int n = g.node_count();
    if (k < l + 2) fail(Errc::HypothesesViolated, "vine already balanced");
    if (n - l - k < 2) fail(Errc::HypothesesViolated, "vine subtree must keep more than one node");

    int leaf = vd.long_path.back();
    int old_nbr = vd.long_path.size() >= 2 ? vd.long_path[vd.long_path.size() - 2] : vd.root;
    int new_nbr = l >= 1 ? vd.short_path.back() : vd.root;

    MoveResult res;
    res.move.kind = LocalMove::Kind::VineLeafTransfer;
    res.move.from_node = old_nbr;
    res.move.to_node = new_nbr;
    res.move.moved = {leaf};
    res.move.expects_decrease = true;
    res.delta_kf = -static_cast<long long>(n - l - k - 1) * (k - l - 1);
    res.move.delta_kf = res.delta_kf;
    res.tree = detail::reattach(g, {{leaf, old_nbr, new_nbr}});
    return res;
}

/// Shift the bouquet of a multi-bouquet caterpillar that sits furthest from
/// the center of the longest path one node further from its closest end.
/// Strictly decreases K_f; repeated application ends at a single-bouquet
/// caterpillar. The two-argument form validates the chosen attachment node.
inline MoveResult shift_bouquet_inward(const WeightedDigraph& g, int attach_node = -1) {
    CaterpillarView cv = caterpillar_view(g);
    if (cv.bouquet_count <= 1)
        fail(Errc::SingleBouquet, "bouquet shift needs at least two bouquets");
    const int d = cv.d();

    int best = -1, best_dist = -1;
    for (int j = 1; j <= d - 1; ++j) {
        if (cv.bouquets[j].empty()) continue;
        int cd = detail::dist_to_path_center(j, d);
        if (cd > best_dist) {
            best_dist = cd;
            best = j;
        }
    }
    if (attach_node >= 0) {
        int j = -1;
        for (int t = 1; t <= d - 1; ++t)
            if (cv.backbone[t] == attach_node && !cv.bouquets[t].empty()) j = t;
        if (j < 0) fail(Errc::HypothesesViolated, "node carries no bouquet");
        if (detail::dist_to_path_center(j, d) != best_dist)
            fail(Errc::HypothesesViolated, "bouquet is not furthest from the path center");
        best = j;
    }

    const int dir = best <= d - best ? 1 : -1;
    const int target = best + dir;
    long long before = kirchhoff_tree_exact(g);

    MoveResult res;
    res.move.kind = LocalMove::Kind::BouquetShiftInward;
    res.move.from_node = cv.backbone[best];
    res.move.to_node = cv.backbone[target];
    res.move.moved = cv.bouquets[best];
    res.move.expects_decrease = true;
    std::vector<std::tuple<int, int, int>> edits;
    for (int leaf : cv.bouquets[best]) edits.emplace_back(leaf, res.move.from_node, res.move.to_node);
    res.tree = detail::reattach(g, edits);
    res.delta_kf = kirchhoff_tree_exact(res.tree) - before;
    res.move.delta_kf = res.delta_kf;
    return res;
}

/// One strict-decrease step on a non-caterpillar tree in T_{N,d}: move a
/// furthest bouquet (whole, or all but one leaf when it is the unique bouquet
/// at depth 2) one node closer to the longest path, or, when only one node
/// sits at depth 2, shift the furthest loaded path node's attachments toward
/// the center. Ends at the terminal tree N_{N,d}.
inline MoveResult drop_bouquet_toward_path(const WeightedDigraph& g) {
    if (!is_tree(g) || !g.unit_weights()) fail(Errc::NotTree, "bouquet drop needs a unit tree");
    if (is_caterpillar_tree(g)) fail(Errc::IsCaterpillar, "tree is already a caterpillar");

    const int n = g.node_count();
    const int d = tree_diameter_int(g);
    if (d >= 4 && n >= d + 3) {
        WeightedDigraph terminal = materialize(blueprint_bouquet_pendant(n, d));
        if (canonical_level_sequence(g) == canonical_level_sequence(terminal))
            fail(Errc::IsTerminal, "tree already is the terminal non-caterpillar form");
    }

    detail::PathContext ctx = detail::path_context(g, longest_path(g));
    long long before = kirchhoff_tree_exact(g);

    int m = 0, depth_max = 0;
    for (int v = 0; v < n; ++v) {
        if (ctx.dist[v] > 1) ++m;
        depth_max = std::max(depth_max, ctx.dist[v]);
    }

    MoveResult res;
    res.move.expects_decrease = true;
    std::vector<std::tuple<int, int, int>> edits;

    if (m > 1) {
        res.move.kind = LocalMove::Kind::BouquetDropTowardPath;
        // bouquets at maximum depth, grouped by their shared attachment node
        std::map<int, std::vector<int>> groups;
        for (int v = 0; v < n; ++v)
            if (ctx.dist[v] == depth_max) groups[ctx.toward[v]].push_back(v);
        auto [parent, leaves] = *groups.begin();
        const int closer = ctx.toward[parent];
        res.move.from_node = parent;
        res.move.to_node = closer;
        if (depth_max == 2 && groups.size() == 1) {
            // unique depth-2 bouquet: keep one leaf so the tree stays
            // non-caterpillar, move the rest
            for (size_t i = 0; i + 1 < leaves.size(); ++i) {
                res.move.moved.push_back(leaves[i]);
                edits.emplace_back(leaves[i], parent, closer);
            }
        } else {
            for (int leaf : leaves) {
                res.move.moved.push_back(leaf);
                edits.emplace_back(leaf, parent, closer);
            }
        }
    } else {
        // m == 1: everything hangs directly off the path except one depth-2
        // node; shift the furthest loaded path node's attachments inward.
        res.move.kind = LocalMove::Kind::BouquetShiftInward;
        int best = -1, best_dist = -1;
        for (int j = 1; j <= d - 1; ++j) {
            int node = ctx.path[j];
            bool loaded = false;
            for (const auto& [v, w] : g.out_neighbors(node)) {
                (void)w;
                if (!ctx.on_path[v]) loaded = true;
            }
            if (!loaded) continue;
            int cd = detail::dist_to_path_center(j, d);
            if (cd > best_dist) {
                best_dist = cd;
                best = j;
            }
        }
        const int dir = best <= d - best ? 1 : -1;
        res.move.from_node = ctx.path[best];
        res.move.to_node = ctx.path[best + dir];
        for (const auto& [v, w] : g.out_neighbors(res.move.from_node)) {
            (void)w;
            if (!ctx.on_path[v]) {
                res.move.moved.push_back(v);
                edits.emplace_back(v, res.move.from_node, res.move.to_node);
            }
        }
    }

    res.tree = detail::reattach(g, edits);
    res.delta_kf = kirchhoff_tree_exact(res.tree) - before;
    res.move.delta_kf = res.delta_kf;
    return res;
}

/// Final non-caterpillar step: in N_{N,d}, re-attach the lone depth-2 node to
/// the longest path, yielding P_{N,d,floor(d/2)} with delta K_f = -(N-3).
inline MoveResult pendant_drop(const WeightedDigraph& g) {
    if (!is_tree(g) || !g.unit_weights()) fail(Errc::NotTree, "pendant drop needs a unit tree");
    const int n = g.node_count();
    const int d = tree_diameter_int(g);
    if (d < 4 || n < d + 3) fail(Errc::WrongShape, "input is not an N_{N,d} tree");
    WeightedDigraph reference = materialize(blueprint_bouquet_pendant(n, d));
    if (canonical_level_sequence(g) != canonical_level_sequence(reference))
        fail(Errc::WrongShape, "input is not an N_{N,d} tree");

    detail::PathContext ctx = detail::path_context(g, longest_path(g));
    int z = -1;
    for (int v = 0; v < n; ++v)
        if (ctx.dist[v] == 2) z = v;
    const int parent = ctx.toward[z];
    const int target = ctx.toward[parent];

    long long before = kirchhoff_tree_exact(g);
    MoveResult res;
    res.move.kind = LocalMove::Kind::PendantDrop;
    res.move.from_node = parent;
    res.move.to_node = target;
    res.move.moved = {z};
    res.move.expects_decrease = true;
    res.tree = detail::reattach(g, {{z, parent, target}});
    res.delta_kf = kirchhoff_tree_exact(res.tree) - before;
    res.move.delta_kf = res.delta_kf;
    return res;
}

/// Iterated descent of a caterpillar: bouquet shifts until a single bouquet
/// remains, then vine rebalancing until the bouquet reaches floor(d/2).
/// Terminal tree is P_{N,d,floor(d/2)}; K_f strictly decreases at every step.
struct DescentResult {
    WeightedDigraph terminal;
    std::vector<long long> kf_trace; // kirchhoff after each move (front = initial)
    std::vector<LocalMove> moves;
};

inline DescentResult descend_caterpillar(const WeightedDigraph& g) {
    DescentResult res;
    res.terminal = g;
    res.kf_trace.push_back(kirchhoff_tree_exact(g));
    while (true) {
        CaterpillarView cv = caterpillar_view(res.terminal);
        if (cv.bouquet_count > 1) {
            MoveResult step = shift_bouquet_inward(res.terminal);
            res.terminal = std::move(step.tree);
            res.kf_trace.push_back(res.kf_trace.back() + step.delta_kf);
            res.moves.push_back(std::move(step.move));
            continue;
        }
        if (cv.bouquet_count == 1) {
            const int d = cv.d();
            int pos = -1;
            for (int j = 1; j <= d - 1; ++j)
                if (!cv.bouquets[j].empty()) pos = j;
            if (std::min(pos, d - pos) < d / 2) {
                VineDecomposition vd;
                vd.root = cv.backbone[pos];
                std::vector<int> left(cv.backbone.begin(), cv.backbone.begin() + pos);
                std::reverse(left.begin(), left.end());
                std::vector<int> right(cv.backbone.begin() + pos + 1, cv.backbone.end());
                vd.short_path = left.size() <= right.size() ? left : right;
                vd.long_path = left.size() <= right.size() ? right : left;
                MoveResult step = rebalance_vine(res.terminal, vd);
                res.terminal = std::move(step.tree);
                res.kf_trace.push_back(res.kf_trace.back() + step.delta_kf);
                res.moves.push_back(std::move(step.move));
                continue;
            }
        }
        break;
    }
    return res;
}

/// Iterated descent of a non-caterpillar tree to the terminal form N_{N,d}.
inline DescentResult descend_noncaterpillar(const WeightedDigraph& g) {
    DescentResult res;
    res.terminal = g;
    res.kf_trace.push_back(kirchhoff_tree_exact(g));
    while (true) {
        try {
            MoveResult step = drop_bouquet_toward_path(res.terminal);
            res.terminal = std::move(step.tree);
            res.kf_trace.push_back(res.kf_trace.back() + step.delta_kf);
            res.moves.push_back(std::move(step.move));
        } catch (const Error& e) {
            if (e.code() == Errc::IsTerminal) break;
            throw;
        }
    }
    return res;
}

} // namespace treeh2
