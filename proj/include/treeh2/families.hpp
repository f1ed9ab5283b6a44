#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "treeh2/canonical.hpp"
#include "treeh2/graph.hpp"

namespace treeh2 {

/// Symbolic descriptor of a named tree-family instance before materialization.
///   Star          K_{1,N-1}
///   Path          P_N
///   Caterpillar   path of length d, n_j >= 0 extra leaves on internal node j
///   PathBouquet   P_{N,d,i}: one bouquet of N-d-1 leaves on internal node i
///   BouquetPendant N_{N,d}: P_{N-1,d,floor(d/2)} plus one node hung off a
///                 central-bouquet leaf
///   DoublePalm    D_{N,p,q}: bouquets of p and q leaves at the two ends of a path
///   Vine          T^r_{l,k}: rooted tree T with chains of l and k nodes at the root
struct TreeBlueprint {
    enum class Kind { Star, Path, Caterpillar, PathBouquet, BouquetPendant, DoublePalm, Vine };

    Kind kind = Kind::Path;
    int n = 0;
    int d = 0;
    int i = 0;
    int p = 0, q = 0;
    int l = 0, k = 0;
    std::vector<int> bouquet_sizes; // caterpillar: n_1 .. n_{d-1}
    WeightedDigraph subtree;        // vine
    int root = 0;                   // vine
};

inline TreeBlueprint blueprint_star(int n) {
    TreeBlueprint b;
    b.kind = TreeBlueprint::Kind::Star;
    b.n = n;
    return b;
}

inline TreeBlueprint blueprint_path(int n) {
    TreeBlueprint b;
    b.kind = TreeBlueprint::Kind::Path;
    b.n = n;
    return b;
}

inline TreeBlueprint blueprint_caterpillar(int d, std::vector<int> sizes) {
    TreeBlueprint b;
    b.kind = TreeBlueprint::Kind::Caterpillar;
    b.d = d;
    b.bouquet_sizes = std::move(sizes);
    b.n = d + 1 + std::accumulate(b.bouquet_sizes.begin(), b.bouquet_sizes.end(), 0);
    return b;
}

inline TreeBlueprint blueprint_path_bouquet(int n, int d, int i) {
    TreeBlueprint b;
    b.kind = TreeBlueprint::Kind::PathBouquet;
    b.n = n;
    b.d = d;
    b.i = i;
    return b;
}

inline TreeBlueprint blueprint_bouquet_pendant(int n, int d) {
    TreeBlueprint b;
    b.kind = TreeBlueprint::Kind::BouquetPendant;
    b.n = n;
    b.d = d;
    return b;
}

/// Canonicalized to p <= q (the two orders give isomorphic trees).
inline TreeBlueprint blueprint_double_palm(int n, int p, int q) {
    TreeBlueprint b;
    b.kind = TreeBlueprint::Kind::DoublePalm;
    b.n = n;
    b.p = std::min(p, q);
    b.q = std::max(p, q);
    return b;
}

/// Canonicalized to l <= k.
inline TreeBlueprint blueprint_vine(WeightedDigraph subtree, int root, int l, int k) {
    TreeBlueprint b;
    b.kind = TreeBlueprint::Kind::Vine;
    b.subtree = std::move(subtree);
    b.root = root;
    b.l = std::min(l, k);
    b.k = std::max(l, k);
    b.n = b.subtree.node_count() + b.l + b.k;
    return b;
}

/// Build the unit-weight tree a blueprint describes, with deterministic node
/// numbering: backbone nodes first in path order, then bouquet leaves grouped
/// by attachment point. Throws InvalidParameters naming the violated constraint.
inline WeightedDigraph materialize(const TreeBlueprint& b) {
    using Kind = TreeBlueprint::Kind;
    std::vector<std::pair<int, int>> pairs;
    auto chain = [&](int from, int count, int first_id) {
        int prev = from;
        for (int t = 0; t < count; ++t) {
            pairs.emplace_back(prev, first_id + t);
            prev = first_id + t;
        }
    };

    switch (b.kind) {
        case Kind::Star: {
            if (b.n < 2) fail(Errc::InvalidParameters, "star needs N >= 2");
            for (int v = 1; v < b.n; ++v) pairs.emplace_back(0, v);
            return tree_from_pairs(b.n, pairs);
        }
        case Kind::Path: {
            if (b.n < 1) fail(Errc::InvalidParameters, "path needs N >= 1");
            chain(0, b.n - 1, 1);
            return tree_from_pairs(b.n, pairs);
        }
        case Kind::Caterpillar: {
            if (b.d < 1) fail(Errc::InvalidParameters, "caterpillar needs d >= 1");
            if (static_cast<int>(b.bouquet_sizes.size()) != b.d - 1)
                fail(Errc::InvalidParameters, "caterpillar needs d-1 bouquet sizes");
            for (int s : b.bouquet_sizes)
                if (s < 0) fail(Errc::InvalidParameters, "bouquet sizes must be >= 0");
            chain(0, b.d, 1);
            int next = b.d + 1;
            for (int j = 1; j <= b.d - 1; ++j)
                for (int t = 0; t < b.bouquet_sizes[j - 1]; ++t) pairs.emplace_back(j, next++);
            return tree_from_pairs(next, pairs);
        }
        case Kind::PathBouquet: {
            if (b.d < 2) fail(Errc::InvalidParameters, "P_{N,d,i} needs d >= 2");
            if (b.n < b.d + 2)
                fail(Errc::InvalidParameters, "P_{N,d,i} needs N >= d+2 (bouquet size N-d-1 >= 1)");
            if (b.i < 1 || b.i > b.d / 2)
                fail(Errc::InvalidParameters, "P_{N,d,i} requires 1 <= i <= floor(d/2)");
            chain(0, b.d, 1);
            for (int v = b.d + 1; v < b.n; ++v) pairs.emplace_back(b.i, v);
            return tree_from_pairs(b.n, pairs);
        }
        case Kind::BouquetPendant: {
            if (b.d < 4) fail(Errc::InvalidParameters, "N_{N,d} needs d >= 4");
            if (b.n < b.d + 3) fail(Errc::InvalidParameters, "N_{N,d} needs N >= d+3 (N-d-3 >= 0)");
            const int m = b.d / 2;
            chain(0, b.d, 1);
            // central bouquet of P_{N-1,d,m}: nodes d+1 .. N-2
            for (int v = b.d + 1; v <= b.n - 2; ++v) pairs.emplace_back(m, v);
            // extra node on the first central-bouquet leaf
            pairs.emplace_back(b.d + 1, b.n - 1);
            return tree_from_pairs(b.n, pairs);
        }
        case Kind::DoublePalm: {
            if (b.p < 1 || b.q < 1) fail(Errc::InvalidParameters, "D_{N,p,q} needs p, q >= 1");
            if (b.p + b.q > b.n - 2) fail(Errc::InvalidParameters, "D_{N,p,q} requires p + q <= N - 2");
            const int backbone = b.n - b.p - b.q; // >= 2
            chain(0, backbone - 1, 1);
            int next = backbone;
            for (int t = 0; t < b.p; ++t) pairs.emplace_back(0, next++);
            for (int t = 0; t < b.q; ++t) pairs.emplace_back(backbone - 1, next++);
            return tree_from_pairs(b.n, pairs);
        }
        case Kind::Vine: {
            const int t = b.subtree.node_count();
            if (t < 2) fail(Errc::InvalidParameters, "vine subtree needs more than one node");
            if (!is_tree(b.subtree) || !b.subtree.unit_weights())
                fail(Errc::InvalidParameters, "vine subtree must be a unit-weight tree");
            if (b.root < 0 || b.root >= t) fail(Errc::InvalidParameters, "vine root id out of range");
            if (b.l < 0 || b.k < 0) fail(Errc::InvalidParameters, "vine path sizes must be >= 0");
            for (auto [x, y] : undirected_edges(b.subtree)) pairs.emplace_back(x, y);
            chain(b.root, b.l, t);
            chain(b.root, b.k, t + b.l);
            return tree_from_pairs(b.n, pairs);
        }
    }
    fail(Errc::InvalidParameters, "unknown blueprint kind");
}

/// Integer diameter of a unit-weight tree.
inline int tree_diameter_int(const WeightedDigraph& g) {
    int d = 0;
    for (int s = 0; s < g.node_count(); ++s) {
        std::vector<int> dist = bfs_distances(g, s);
        for (int x : dist) d = std::max(d, x);
    }
    return d;
}

/// Unique path between two nodes of a tree, as a node sequence.
inline std::vector<int> tree_path_between(const WeightedDigraph& g, int u, int v) {
    std::vector<int> parent(g.node_count(), -2);
    std::vector<int> queue{u};
    parent[u] = -1;
    for (size_t h = 0; h < queue.size(); ++h) {
        int x = queue[h];
        for (const auto& [y, w] : g.out_neighbors(x)) {
            (void)w;
            if (parent[y] == -2) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    std::vector<int> path;
    for (int x = v; x != -1; x = parent[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
}

/// Deterministic longest path of a unit tree: among all diameter paths, the
/// lexicographically smallest node-id sequence (considering both directions).
inline std::vector<int> longest_path(const WeightedDigraph& g) {
    const int n = g.node_count();
    std::vector<std::vector<int>> dist(n);
    int diam = 0;
    for (int s = 0; s < n; ++s) {
        dist[s] = bfs_distances(g, s);
        for (int x : dist[s]) diam = std::max(diam, x);
    }
    std::vector<int> best;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (dist[u][v] != diam) continue;
            std::vector<int> path = tree_path_between(g, u, v);
            std::vector<int> rev(path.rbegin(), path.rend());
            if (rev < path) path = std::move(rev);
            if (best.empty() || path < best) best = std::move(path);
        }
    if (best.empty()) best.push_back(0); // single node
    return best;
}

/// A tree is a caterpillar when removing all leaves leaves a path.
inline bool is_caterpillar_tree(const WeightedDigraph& g) {
    const int n = g.node_count();
    for (int u = 0; u < n; ++u) {
        if (g.degree(u) <= 1) continue;
        int internal_neighbors = 0;
        for (const auto& [v, w] : g.out_neighbors(u)) {
            (void)w;
            if (g.degree(v) > 1) ++internal_neighbors;
        }
        if (internal_neighbors > 2) return false;
    }
    return true;
}

/// Caterpillar structure relative to its (deterministic) longest path:
/// backbone node ids and the bouquet leaves at each internal position.
struct CaterpillarView {
    std::vector<int> backbone;              // d+1 node ids in path order
    std::vector<std::vector<int>> bouquets; // index 1..d-1 (0 and d unused)
    int bouquet_count = 0;                  // positions with a non-empty bouquet

    int d() const { return static_cast<int>(backbone.size()) - 1; }
    std::vector<int> profile() const {
        std::vector<int> p;
        for (int j = 1; j + 1 < static_cast<int>(backbone.size()); ++j)
            p.push_back(static_cast<int>(bouquets[j].size()));
        return p;
    }
};

inline CaterpillarView caterpillar_view(const WeightedDigraph& g) {
    if (!is_tree(g) || !g.unit_weights()) fail(Errc::NotTree, "caterpillar view needs a unit tree");
    if (!is_caterpillar_tree(g)) fail(Errc::NotCaterpillar, "tree is not a caterpillar");
    CaterpillarView cv;
    cv.backbone = longest_path(g);
    const int d = cv.d();
    cv.bouquets.assign(d + 1, {});
    std::vector<char> on_path(g.node_count(), 0);
    for (int x : cv.backbone) on_path[x] = 1;
    for (int j = 1; j <= d - 1; ++j) {
        for (const auto& [v, w] : g.out_neighbors(cv.backbone[j])) {
            (void)w;
            if (!on_path[v]) cv.bouquets[j].push_back(v);
        }
        std::sort(cv.bouquets[j].begin(), cv.bouquets[j].end());
        if (!cv.bouquets[j].empty()) ++cv.bouquet_count;
    }
    return cv;
}

/// A way of reading a tree as a vine T^r_{l,k}: two pendant chains hanging at
/// a root, everything else forming the rooted subtree T (|T| >= 2).
struct VineDecomposition {
    int root = 0;
    std::vector<int> short_path; // l nodes, from the root outward
    std::vector<int> long_path;  // k nodes, from the root outward
};

inline std::vector<VineDecomposition> vine_decompositions(const WeightedDigraph& g) {
    const int n = g.node_count();
    std::vector<VineDecomposition> out;
    for (int r = 0; r < n; ++r) {
        if (g.degree(r) < 2) continue;
        std::vector<std::vector<int>> chains;
        for (int b : neighbor_ids(g, r)) {
            std::vector<int> chain;
            int prev = r, cur = b;
            while (g.degree(cur) == 2) {
                chain.push_back(cur);
                for (int nb : neighbor_ids(g, cur))
                    if (nb != prev) {
                        prev = cur;
                        cur = nb;
                        break;
                    }
            }
            if (g.degree(cur) == 1) {
                chain.push_back(cur);
                chains.push_back(std::move(chain));
            }
        }
        for (size_t a = 0; a < chains.size(); ++a)
            for (size_t b = a + 1; b < chains.size(); ++b) {
                int t = n - static_cast<int>(chains[a].size() + chains[b].size());
                if (t < 2) continue;
                VineDecomposition vd;
                vd.root = r;
                const bool a_short =
                    chains[a].size() != chains[b].size()
                        ? chains[a].size() < chains[b].size()
                        : chains[a].front() < chains[b].front();
                vd.short_path = a_short ? chains[a] : chains[b];
                vd.long_path = a_short ? chains[b] : chains[a];
                out.push_back(std::move(vd));
            }
    }
    return out;
}

/// Extract the rooted subtree T of a vine decomposition, relabelled to
/// 0..|T|-1 in ascending original-id order. Returns the new root id too.
inline std::pair<WeightedDigraph, int> vine_subtree(const WeightedDigraph& g,
                                                    const VineDecomposition& vd) {
    std::vector<char> dropped(g.node_count(), 0);
    for (int x : vd.short_path) dropped[x] = 1;
    for (int x : vd.long_path) dropped[x] = 1;
    std::vector<int> relabel(g.node_count(), -1);
    int next = 0;
    for (int v = 0; v < g.node_count(); ++v)
        if (!dropped[v]) relabel[v] = next++;
    std::vector<std::pair<int, int>> pairs;
    for (auto [x, y] : undirected_edges(g))
        if (!dropped[x] && !dropped[y]) pairs.emplace_back(relabel[x], relabel[y]);
    return {tree_from_pairs(next, pairs), relabel[vd.root]};
}

/// All family memberships of a unit tree. A tree may match several kinds
/// (e.g. P_4 is a path, a caterpillar and D_{4,1,1}).
struct Classification {
    bool is_caterpillar = false;
    std::vector<TreeBlueprint> families;      // star/path/cat/pndi/nnd/dpalm labels
    std::vector<VineDecomposition> vines;     // all vine readings
};

inline Classification classify(const WeightedDigraph& g) {
    if (!is_tree(g)) fail(Errc::NotTree, "classify needs a tree");
    if (!g.unit_weights()) fail(Errc::NonUnitWeights, "classify needs unit weights");
    const int n = g.node_count();
    Classification c;
    c.is_caterpillar = is_caterpillar_tree(g);

    if (n == 1) {
        c.families.push_back(blueprint_path(1));
        return c;
    }

    const int d = tree_diameter_int(g);
    int max_degree = 0;
    for (int v = 0; v < n; ++v) max_degree = std::max(max_degree, g.degree(v));

    if (d <= 2) c.families.push_back(blueprint_star(n));
    if (max_degree <= 2) c.families.push_back(blueprint_path(n));

    if (c.is_caterpillar && d >= 1) {
        CaterpillarView cv = caterpillar_view(g);
        std::vector<int> profile = cv.profile();
        std::vector<int> reversed(profile.rbegin(), profile.rend());
        c.families.push_back(
            blueprint_caterpillar(d, reversed < profile ? reversed : profile));

        int loaded = 0, pos = -1;
        for (int j = 0; j < static_cast<int>(profile.size()); ++j)
            if (profile[j] > 0) {
                ++loaded;
                pos = j + 1;
            }
        if (loaded == 1) c.families.push_back(blueprint_path_bouquet(n, d, std::min(pos, d - pos)));
        if (d >= 3) {
            bool interior_clear = true;
            for (int j = 1; j + 1 < static_cast<int>(profile.size()); ++j)
                if (profile[j] > 0) interior_clear = false;
            if (interior_clear)
                c.families.push_back(blueprint_double_palm(n, profile.front() + 1, profile.back() + 1));
        }
    }

    if (!c.is_caterpillar && d >= 4 && n >= d + 3) {
        WeightedDigraph reference = materialize(blueprint_bouquet_pendant(n, d));
        if (canonical_level_sequence(g) == canonical_level_sequence(reference))
            c.families.push_back(blueprint_bouquet_pendant(n, d));
    }

    c.vines = vine_decompositions(g);
    return c;
}

/// Blueprint in the CLI's textual syntax (vines get a descriptive form since
/// their subtree lives in a file).
inline std::string blueprint_to_string(const TreeBlueprint& b) {
    using Kind = TreeBlueprint::Kind;
    switch (b.kind) {
        case Kind::Star: return "star:" + std::to_string(b.n);
        case Kind::Path: return "path:" + std::to_string(b.n);
        case Kind::Caterpillar: {
            std::string s = "cat:" + std::to_string(b.d);
            for (int x : b.bouquet_sizes) s += "," + std::to_string(x);
            return s;
        }
        case Kind::PathBouquet:
            return "pndi:" + std::to_string(b.n) + "," + std::to_string(b.d) + "," +
                   std::to_string(b.i);
        case Kind::BouquetPendant:
            return "nnd:" + std::to_string(b.n) + "," + std::to_string(b.d);
        case Kind::DoublePalm:
            return "dpalm:" + std::to_string(b.n) + "," + std::to_string(b.p) + "," +
                   std::to_string(b.q);
        case Kind::Vine:
            return "vine:l=" + std::to_string(b.l) + ",k=" + std::to_string(b.k) +
                   ",T=" + level_sequence_string(rooted_level_sequence(b.subtree, b.root));
    }
    return "?";
}

} // namespace treeh2
