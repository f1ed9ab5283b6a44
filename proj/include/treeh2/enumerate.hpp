#pragma once

#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "treeh2/canonical.hpp"
#include "treeh2/families.hpp"
#include "treeh2/format.hpp"
#include "treeh2/metrics.hpp"

namespace treeh2 {

/// One representative per isomorphism class of unlabeled trees.
struct CanonicalTree {
    std::vector<int> key; // canonical level sequence (total order on classes)
    WeightedDigraph graph;
    int n = 0;
    int diameter = 0;
    long long kirchhoff = 0;
    bool is_caterpillar = false;

    std::string key_string() const { return level_sequence_string(key); }
};

inline constexpr int kEnumerationMaxNodes = 16;

namespace detail {

/// Enumerate canonical level sequences of all rooted trees on n nodes
/// (successor algorithm on level sequences, starting from the path and ending
/// at the star). Calls fn once per rooted tree.
template <typename Fn>
inline void for_each_rooted_level_sequence(int n, Fn&& fn) {
    std::vector<int> seq(n);
    std::iota(seq.begin(), seq.end(), 1);
    while (true) {
        fn(seq);
        int p = -1;
        for (int i = n - 1; i >= 0; --i)
            if (seq[i] > 2) {
                p = i;
                break;
            }
        if (p < 0) break;
        int q = -1;
        for (int i = p - 1; i >= 0; --i)
            if (seq[i] == seq[p] - 1) {
                q = i;
                break;
            }
        for (int i = p; i < n; ++i) seq[i] = seq[i - (p - q)];
    }
}

} // namespace detail

/// All non-isomorphic unlabeled trees on n nodes, in ascending canonical-key
/// order. Rooted trees are generated by the level-sequence successor algorithm
/// and deduplicated by the center-rooted canonical form.
inline std::vector<CanonicalTree> enumerate_trees(int n) {
    if (n < 1) fail(Errc::NTooSmall, "enumeration needs N >= 1");
    if (n > kEnumerationMaxNodes)
        fail(Errc::NTooLarge,
             "enumeration guarded to N <= " + std::to_string(kEnumerationMaxNodes));

    std::set<std::vector<int>> keys;
    detail::for_each_rooted_level_sequence(n, [&](const std::vector<int>& seq) {
        keys.insert(canonical_level_sequence(tree_from_level_sequence(seq)));
    });

    std::vector<CanonicalTree> out;
    out.reserve(keys.size());
    for (const auto& key : keys) {
        CanonicalTree t;
        t.key = key;
        t.graph = tree_from_level_sequence(key);
        t.n = n;
        t.diameter = tree_diameter_int(t.graph);
        t.kirchhoff = kirchhoff_tree_exact(t.graph);
        t.is_caterpillar = is_caterpillar_tree(t.graph);
        out.push_back(std::move(t));
    }
    return out;
}

/// The class T_{N,d}: all trees with N nodes and diameter exactly d.
inline std::vector<CanonicalTree> trees_by_diameter(int n, int d) {
    if (n < 3 || d < 2 || d > n - 1)
        fail(Errc::InvalidDiameter, "tree diameter classes need N >= 3 and 2 <= d <= N-1");
    std::vector<CanonicalTree> out;
    for (auto& t : enumerate_trees(n))
        if (t.diameter == d) out.push_back(std::move(t));
    return out;
}

struct ClassDescriptor {
    int n = 0;
    std::optional<int> diameter;
    bool caterpillars_only = false;
};

struct RankingRow {
    CanonicalTree tree;
    long long kirchhoff = 0;
    double h2 = 0.0;
    int rank = 0;      // competition ranking; ties share a rank
    int tie_group = 0; // index of the distinct kirchhoff value
};

/// Trees of a class ordered by exact integer Kirchhoff index, ties explicit.
struct RankingTable {
    ClassDescriptor cls;
    std::vector<RankingRow> rows;
};

inline RankingTable rank_class(const ClassDescriptor& cls) {
    std::vector<CanonicalTree> trees =
        cls.diameter ? trees_by_diameter(cls.n, *cls.diameter) : enumerate_trees(cls.n);
    if (cls.caterpillars_only)
        std::erase_if(trees, [](const CanonicalTree& t) { return !t.is_caterpillar; });

    std::sort(trees.begin(), trees.end(), [](const CanonicalTree& a, const CanonicalTree& b) {
        return a.kirchhoff != b.kirchhoff ? a.kirchhoff < b.kirchhoff : a.key < b.key;
    });

    RankingTable table;
    table.cls = cls;
    table.rows.reserve(trees.size());
    for (size_t i = 0; i < trees.size(); ++i) {
        RankingRow row;
        row.kirchhoff = trees[i].kirchhoff;
        row.h2 = h2_from_kirchhoff(static_cast<double>(trees[i].kirchhoff), cls.n);
        if (i == 0) {
            row.rank = 1;
            row.tie_group = 0;
        } else if (trees[i].kirchhoff == table.rows.back().kirchhoff) {
            row.rank = table.rows.back().rank;
            row.tie_group = table.rows.back().tie_group;
        } else {
            row.rank = static_cast<int>(i) + 1;
            row.tie_group = table.rows.back().tie_group + 1;
        }
        row.tree = std::move(trees[i]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

/// Family labels for display: the named-family memberships in blueprint syntax.
inline std::string family_labels(const WeightedDigraph& g) {
    Classification c = classify(g);
    std::string s;
    for (const auto& b : c.families) {
        if (!s.empty()) s += ';';
        s += blueprint_to_string(b);
    }
    return s;
}

inline std::string ranking_csv(const RankingTable& table) {
    std::ostringstream out;
    out << "rank,canonical_key,n,diameter,kirchhoff,h2,is_caterpillar,family_labels\n";
    for (const RankingRow& row : table.rows) {
        out << row.rank << "," << row.tree.key_string() << "," << row.tree.n << ","
            << row.tree.diameter << "," << row.kirchhoff << "," << fmt12(row.h2) << ","
            << (row.tree.is_caterpillar ? "true" : "false") << ",\""
            << family_labels(row.tree.graph) << "\"\n";
    }
    return out.str();
}

inline std::string tree_list_csv(const std::vector<CanonicalTree>& trees) {
    std::ostringstream out;
    out << "index,canonical_key,n,diameter,kirchhoff,is_caterpillar\n";
    for (size_t i = 0; i < trees.size(); ++i) {
        const CanonicalTree& t = trees[i];
        out << i << "," << t.key_string() << "," << t.n << "," << t.diameter << ","
            << t.kirchhoff << "," << (t.is_caterpillar ? "true" : "false") << "\n";
    }
    return out.str();
}

} // namespace treeh2
