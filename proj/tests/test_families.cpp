#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "treeh2/canonical.hpp"
#include "treeh2/families.hpp"
#include "treeh2/metrics.hpp"

#include "test_util.hpp"

using namespace treeh2;

namespace {

bool has_family(const Classification& c, TreeBlueprint::Kind kind) {
    return std::any_of(c.families.begin(), c.families.end(),
                       [&](const TreeBlueprint& b) { return b.kind == kind; });
}

const TreeBlueprint* family_of(const Classification& c, TreeBlueprint::Kind kind) {
    for (const auto& b : c.families)
        if (b.kind == kind) return &b;
    return nullptr;
}

std::vector<int> degree_sequence(const WeightedDigraph& g) {
    std::vector<int> deg;
    for (int v = 0; v < g.node_count(); ++v) deg.push_back(g.degree(v));
    std::sort(deg.begin(), deg.end(), std::greater<>());
    return deg;
}

} // namespace

TEST_CASE("materialize star, path and pndi shapes", "[families]") {
    WeightedDigraph star4 = materialize(blueprint_star(4));
    CHECK(degree_sequence(star4) == std::vector<int>{3, 1, 1, 1});
    CHECK(tree_diameter_int(star4) == 2);

    WeightedDigraph p = materialize(blueprint_path_bouquet(7, 4, 2));
    CHECK(p.node_count() == 7);
    CHECK(tree_diameter_int(p) == 4);
    CHECK(p.degree(2) == 4); // backbone node 2 carries the two extra leaves
    CHECK(is_tree(p));
}

TEST_CASE("materialize rejects invalid parameters naming the constraint", "[families]") {
    auto message = [](const TreeBlueprint& b) {
        try {
            materialize(b);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::InvalidParameters);
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message(blueprint_path_bouquet(7, 4, 3)).find("floor(d/2)") != std::string::npos);
    CHECK(message(blueprint_star(1)).find("N >= 2") != std::string::npos);
    CHECK(message(blueprint_path_bouquet(5, 4, 1)).find("N >= d+2") != std::string::npos);
    CHECK(message(blueprint_bouquet_pendant(6, 4)).find("N >= d+3") != std::string::npos);
    CHECK(message(blueprint_bouquet_pendant(7, 3)).find("d >= 4") != std::string::npos);
    CHECK(message(blueprint_double_palm(5, 2, 2)).find("p + q <= N - 2") != std::string::npos);
    CHECK(message(blueprint_caterpillar(3, {1})).find("d-1 bouquet sizes") != std::string::npos);
}

TEST_CASE("double palm values and symmetry", "[families]") {
    WeightedDigraph d = materialize(blueprint_double_palm(6, 1, 3));
    CHECK(kirchhoff_tree_exact(d) == 28);
    CHECK(testutil::kf_floyd(d) == 28);

    WeightedDigraph a = materialize(blueprint_double_palm(8, 2, 4));
    WeightedDigraph b = materialize(blueprint_double_palm(8, 4, 2));
    CHECK(canonical_level_sequence(a) == canonical_level_sequence(b));
    CHECK(testutil::brute_isomorphic(a, b));
}

TEST_CASE("materialized families have declared N and diameter", "[families]") {
    for (int n = 4; n <= 12; ++n) {
        for (int d = 2; d <= n - 2; ++d) {
            for (int i = 1; i <= d / 2; ++i) {
                WeightedDigraph g = materialize(blueprint_path_bouquet(n, d, i));
                CHECK(g.node_count() == n);
                CHECK(tree_diameter_int(g) == d);
                CHECK(is_tree(g));
            }
            if (d >= 4 && n >= d + 3) {
                WeightedDigraph g = materialize(blueprint_bouquet_pendant(n, d));
                CHECK(g.node_count() == n);
                CHECK(tree_diameter_int(g) == d);
            }
        }
        for (int p = 1; 2 * p <= n - 2; ++p) {
            WeightedDigraph g = materialize(blueprint_double_palm(n, p, n - 2 - p));
            CHECK(g.node_count() == n);
            CHECK(tree_diameter_int(g) == 3);
        }
    }
}

TEST_CASE("classify: star doubles as P_{N,2,1}", "[families]") {
    Classification c = classify(materialize(blueprint_star(5)));
    CHECK(has_family(c, TreeBlueprint::Kind::Star));
    const TreeBlueprint* pb = family_of(c, TreeBlueprint::Kind::PathBouquet);
    REQUIRE(pb != nullptr);
    CHECK(pb->n == 5);
    CHECK(pb->d == 2);
    CHECK(pb->i == 1);
    CHECK(c.is_caterpillar);
}

TEST_CASE("classify: path is not a PathBouquet but is D_{N,1,1}", "[families]") {
    Classification c = classify(materialize(blueprint_path(6)));
    CHECK(has_family(c, TreeBlueprint::Kind::Path));
    CHECK_FALSE(has_family(c, TreeBlueprint::Kind::PathBouquet));
    const TreeBlueprint* dp = family_of(c, TreeBlueprint::Kind::DoublePalm);
    REQUIRE(dp != nullptr);
    CHECK(dp->p == 1);
    CHECK(dp->q == 1);
}

TEST_CASE("classify: the 3-leg spider fails the caterpillar test", "[families]") {
    // three legs of length 2 hanging off one hub: leaf removal leaves a star,
    // so no caterpillar-based label applies. (The tree itself is N_{7,4} with
    // an empty residual bouquet, which the classifier does report.)
    WeightedDigraph spider = tree_from_pairs(
        7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
    Classification c = classify(spider);
    CHECK_FALSE(c.is_caterpillar);
    CHECK_FALSE(has_family(c, TreeBlueprint::Kind::Star));
    CHECK_FALSE(has_family(c, TreeBlueprint::Kind::Path));
    CHECK_FALSE(has_family(c, TreeBlueprint::Kind::Caterpillar));
    CHECK_FALSE(has_family(c, TreeBlueprint::Kind::PathBouquet));
    CHECK_FALSE(has_family(c, TreeBlueprint::Kind::DoublePalm));
    const TreeBlueprint* b = family_of(c, TreeBlueprint::Kind::BouquetPendant);
    REQUIRE(b != nullptr);
    CHECK(b->n == 7);
    CHECK(b->d == 4);
    CHECK(canonical_level_sequence(spider) ==
          canonical_level_sequence(materialize(blueprint_bouquet_pendant(7, 4))));
    CHECK_FALSE(c.vines.empty()); // it still reads as a vine in several ways

    // a genuinely unnamed tree: 4-leg spider on 9 nodes
    WeightedDigraph spider4 = tree_from_pairs(
        9, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}, {0, 7}, {7, 8}});
    Classification c4 = classify(spider4);
    CHECK_FALSE(c4.is_caterpillar);
    CHECK(c4.families.empty());
}

TEST_CASE("classify recognizes N_{N,d}", "[families]") {
    for (int n = 7; n <= 11; ++n)
        for (int d = 4; d <= n - 3; ++d) {
            Classification c = classify(materialize(blueprint_bouquet_pendant(n, d)));
            const TreeBlueprint* b = family_of(c, TreeBlueprint::Kind::BouquetPendant);
            REQUIRE(b != nullptr);
            CHECK(b->n == n);
            CHECK(b->d == d);
            CHECK_FALSE(c.is_caterpillar);
        }
}

TEST_CASE("materialize then classify round-trips", "[families]") {
    // pndi
    for (int n = 4; n <= 10; ++n)
        for (int d = 2; d <= n - 2; ++d)
            for (int i = 1; i <= d / 2; ++i) {
                Classification c = classify(materialize(blueprint_path_bouquet(n, d, i)));
                const TreeBlueprint* b = family_of(c, TreeBlueprint::Kind::PathBouquet);
                REQUIRE(b != nullptr);
                CHECK(b->n == n);
                CHECK(b->d == d);
                CHECK(b->i == i);
            }
    // dpalm (canonicalized p <= q)
    for (int n = 4; n <= 10; ++n)
        for (int p = 1; p <= n - 2; ++p)
            for (int q = p; p + q <= n - 2; ++q) {
                Classification c = classify(materialize(blueprint_double_palm(n, q, p)));
                const TreeBlueprint* b = family_of(c, TreeBlueprint::Kind::DoublePalm);
                REQUIRE(b != nullptr);
                CHECK(b->p == p);
                CHECK(b->q == q);
            }
    // caterpillar (profile canonicalized to the lexicographically smaller
    // orientation)
    std::vector<std::vector<int>> profiles = {{1, 0, 1}, {0, 2, 1}, {2, 0, 0, 1}, {0, 0, 3}};
    for (const auto& profile : profiles) {
        int d = static_cast<int>(profile.size()) + 1;
        Classification c = classify(materialize(blueprint_caterpillar(d, profile)));
        const TreeBlueprint* b = family_of(c, TreeBlueprint::Kind::Caterpillar);
        REQUIRE(b != nullptr);
        std::vector<int> want = profile;
        std::vector<int> rev(want.rbegin(), want.rend());
        if (rev < want) want = rev;
        CHECK(b->d == d);
        CHECK(b->bouquet_sizes == want);
    }
}

TEST_CASE("vine materialization and round-trip", "[families]") {
    WeightedDigraph t = materialize(blueprint_path(3)); // subtree P3
    for (int root : {0, 1}) {
        for (auto [l, k] : std::vector<std::pair<int, int>>{{1, 1}, {1, 3}, {2, 2}, {2, 4}}) {
            TreeBlueprint vb = blueprint_vine(t, root, l, k);
            WeightedDigraph g = materialize(vb);
            CHECK(g.node_count() == 3 + l + k);
            CHECK(is_tree(g));

            // the construction's own decomposition must be rediscovered
            std::vector<int> want_t = rooted_level_sequence(t, root);
            bool found = false;
            for (const VineDecomposition& vd : vine_decompositions(g)) {
                if (static_cast<int>(vd.short_path.size()) != std::min(l, k)) continue;
                if (static_cast<int>(vd.long_path.size()) != std::max(l, k)) continue;
                auto [sub, sub_root] = vine_subtree(g, vd);
                if (sub.node_count() == 3 && rooted_level_sequence(sub, sub_root) == want_t)
                    found = true;
            }
            CHECK(found);
        }
    }
    CHECK_THROWS_AS(materialize(blueprint_vine(materialize(blueprint_path(1)), 0, 1, 1)), Error);
}

TEST_CASE("every materialized family member passes the tree recognizer", "[families]") {
    std::vector<TreeBlueprint> blueprints = {
        blueprint_star(2),           blueprint_star(9),
        blueprint_path(1),           blueprint_path(8),
        blueprint_caterpillar(5, {0, 2, 0, 1}),
        blueprint_path_bouquet(9, 5, 2),
        blueprint_bouquet_pendant(9, 4),
        blueprint_double_palm(9, 3, 4),
        blueprint_vine(materialize(blueprint_star(3)), 0, 2, 3),
    };
    for (const auto& b : blueprints) {
        WeightedDigraph g = materialize(b);
        CHECK(is_tree(g));
        CHECK(g.unit_weights());
        CHECK(g.undirected_edge_count() == g.node_count() - 1);
    }
}

TEST_CASE("classify rejects non-trees", "[families]") {
    CHECK_THROWS_AS(classify(build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}, true)),
                    Error);
    CHECK_THROWS_AS(classify(build_graph(2, {{0, 1, 2.0}}, true)), Error);
}

TEST_CASE("longest path is deterministic and canonical", "[families]") {
    // P5 relabeled: longest path must be the lex-smallest orientation
    WeightedDigraph g = tree_from_pairs(5, {{4, 2}, {2, 0}, {0, 1}, {1, 3}});
    std::vector<int> lp = longest_path(g);
    std::vector<int> rev(lp.rbegin(), lp.rend());
    CHECK(lp <= rev);
    CHECK(lp.size() == 5);
    CHECK(lp.front() == 3); // 3-1-0-2-4 beats 4-2-0-1-3
}
