#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "treeh2/families.hpp"
#include "treeh2/metrics.hpp"
#include "treeh2/moves.hpp"

namespace treeh2 {

struct RewireMove {
    int round = 0;
    int node = -1;
    int old_parent = -1;
    int new_parent = -1;
    long long kf_before = 0;
    long long kf_after = 0;
};

struct RewireState {
    WeightedDigraph tree;
    int hop_radius = 0;
    int rounds = 0; // rounds in which at least one move was applied
    std::vector<RewireMove> log;
    bool terminal_is_star = false;
    bool hit_round_cap = false;
};

namespace detail {

struct RewireCandidate {
    int node = -1;
    int connector = -1;
    std::vector<char> ball; // membership mask of the k-hop neighborhood
};

/// Candidacy rule, evaluated on the current tree: the k-hop neighborhood of a
/// leaf i must connect to the rest of the tree through a single node j, and i
/// must be strictly the furthest node from j within the neighborhood (a tie
/// would make the move direction arbitrary and possibly not improving).
inline std::vector<RewireCandidate> rewire_candidates(const WeightedDigraph& g, int hops) {
    const int n = g.node_count();
    std::vector<RewireCandidate> cands;
    for (int i = 0; i < n; ++i) {
        if (g.degree(i) != 1) continue;
        std::vector<int> dist_i = bfs_distances(g, i);
        std::vector<char> ball(n, 0);
        int ball_size = 0;
        for (int v = 0; v < n; ++v)
            if (dist_i[v] <= hops) {
                ball[v] = 1;
                ++ball_size;
            }
        if (ball_size == n) continue; // full view: no "rest of the tree"
        int connector = -1;
        bool unique = true;
        for (int v = 0; v < n && unique; ++v) {
            if (!ball[v]) continue;
            for (const auto& [w, wt] : g.out_neighbors(v)) {
                (void)wt;
                if (!ball[w]) {
                    if (connector < 0)
                        connector = v;
                    else if (connector != v)
                        unique = false;
                    break;
                }
            }
        }
        if (!unique || connector < 0) continue;
        if (dist_i[connector] < 2) continue; // already adjacent, nothing to move
        std::vector<int> dist_j = bfs_distances(g, connector);
        bool strictly_furthest = true;
        for (int v = 0; v < n; ++v)
            if (v != i && ball[v] && dist_j[v] >= dist_j[i]) strictly_furthest = false;
        if (!strictly_furthest) continue;
        cands.push_back(RewireCandidate{i, connector, std::move(ball)});
    }
    return cands;
}

} // namespace detail

/// Round-based decentralized rewiring of a unit tree. Per round every node
/// tests the candidacy rule on its k-hop view; accepted candidates re-attach
/// one node closer to their connector. Candidates are processed in ascending
/// node id and skipped when their neighborhood overlaps one that already
/// moved this round. Terminates when no candidates exist or after max_rounds.
inline RewireState decentralized_rewire(const WeightedDigraph& t, int hops, int max_rounds) {
    if (!is_tree(t)) fail(Errc::NotTree, "rewiring needs a tree");
    if (!t.unit_weights()) fail(Errc::NonUnitWeights, "rewiring needs unit weights");
    if (hops < 2) fail(Errc::InvalidParameters, "rewiring needs hop radius k >= 2");
    if (max_rounds < 0) fail(Errc::InvalidParameters, "max rounds must be >= 0");

    RewireState state;
    state.tree = t;
    state.hop_radius = hops;

    const int n = t.node_count();
    long long kf = kirchhoff_tree_exact(t);
    while (true) {
        if (state.rounds >= max_rounds) {
            state.hit_round_cap = true;
            break;
        }
        std::vector<detail::RewireCandidate> cands =
            detail::rewire_candidates(state.tree, hops);
        if (cands.empty()) break;

        std::vector<char> claimed(n, 0);
        int applied = 0;
        for (const auto& cand : cands) {
            bool overlap = false;
            for (int v = 0; v < n; ++v)
                if (cand.ball[v] && claimed[v]) overlap = true;
            if (overlap) continue;

            int parent = neighbor_ids(state.tree, cand.node)[0];
            std::vector<int> path = tree_path_between(state.tree, parent, cand.connector);
            int target = path[1]; // one node closer to the connector

            RewireMove mv;
            mv.round = state.rounds + 1;
            mv.node = cand.node;
            mv.old_parent = parent;
            mv.new_parent = target;
            mv.kf_before = kf;
            state.tree = detail::reattach(state.tree, {{cand.node, parent, target}});
            kf = kirchhoff_tree_exact(state.tree);
            mv.kf_after = kf;
            state.log.push_back(mv);
            ++applied;
            for (int v = 0; v < n; ++v)
                if (cand.ball[v]) claimed[v] = 1;
        }
        if (applied == 0) break;
        ++state.rounds;
    }
    state.terminal_is_star = tree_diameter_int(state.tree) <= 2;
    return state;
}

inline std::string rewire_log_csv(const RewireState& state) {
    std::ostringstream out;
    out << "round,node_moved,old_parent,new_parent,kf_before,kf_after\n";
    for (const RewireMove& mv : state.log)
        out << mv.round << "," << mv.node << "," << mv.old_parent << "," << mv.new_parent << ","
            << mv.kf_before << "," << mv.kf_after << "\n";
    return out.str();
}

} // namespace treeh2
