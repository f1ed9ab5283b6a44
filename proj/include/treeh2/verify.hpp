#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "treeh2/enumerate.hpp"
#include "treeh2/moves.hpp"

namespace treeh2 {

/// Theorem-id mapping printed in every verification report, so the numeric
/// ids used here never drift from what is actually checked.
inline nlohmann::ordered_json theorem_id_mapping() {
    nlohmann::ordered_json m;
    m["1"] = "complete ordering of T_{N,3}: the double-palm chain D_{N,1,N-3} < ... < D_{N,floor((N-2)/2),ceil((N-2)/2)}";
    m["2"] = "the path P_N uniquely maximizes K_f over all trees on N nodes";
    m["3"] = "complete ordering of T_{N,N-2}: P_{N,N-2,i} decreasing in i";
    m["5"] = "P_{N,d,floor(d/2)} uniquely minimizes K_f within T_{N,d} for 2 <= d <= N-2";
    m["6"] = "every tree in T_{N,d} is beaten by some tree in T_{N,d-1}; the star is the unique global minimizer";
    m["lemmas"] = "local-move delta formulas (bouquet/vine transfers) and descent terminations";
    return m;
}

struct VerifyCell {
    int n = 0;
    std::optional<int> d;
    bool pass = true;
    std::vector<std::string> witnesses;
};

struct VerifyReport {
    std::string id;
    int max_nodes = 0;
    bool pass = true;
    std::vector<VerifyCell> cells;
};

namespace detail {

inline std::string kf_witness(const std::string& label, long long kf) {
    return label + " kf=" + std::to_string(kf);
}

inline bool same_class(const WeightedDigraph& a, const WeightedDigraph& b) {
    return canonical_level_sequence(a) == canonical_level_sequence(b);
}

// Theorem "1": T_{N,3} is exactly the double palms with a 2-node backbone,
// strictly ordered by the bouquet split.
inline void verify_d3_ordering(VerifyReport& rep) {
    for (int n = 4; n <= rep.max_nodes; ++n) {
        VerifyCell cell;
        cell.n = n;
        cell.d = 3;
        std::vector<CanonicalTree> cls = trees_by_diameter(n, 3);
        std::sort(cls.begin(), cls.end(),
                  [](const CanonicalTree& a, const CanonicalTree& b) {
                      return a.kirchhoff < b.kirchhoff;
                  });
        const int expected = (n - 2) / 2;
        if (static_cast<int>(cls.size()) != expected) cell.pass = false;
        long long prev = -1;
        for (int p = 1; p <= expected && cell.pass; ++p) {
            const CanonicalTree& t = cls[p - 1];
            WeightedDigraph want = materialize(blueprint_double_palm(n, p, n - 2 - p));
            if (!same_class(t.graph, want)) cell.pass = false;
            if (t.kirchhoff <= prev) cell.pass = false;
            prev = t.kirchhoff;
            cell.witnesses.push_back(kf_witness(
                "D(" + std::to_string(n) + "," + std::to_string(p) + "," +
                    std::to_string(n - 2 - p) + ") key=" + t.key_string(),
                t.kirchhoff));
        }
        rep.pass &= cell.pass;
        rep.cells.push_back(std::move(cell));
    }
}

// Theorem "2": the path uniquely maximizes K_f.
inline void verify_path_is_max(VerifyReport& rep) {
    for (int n = 3; n <= rep.max_nodes; ++n) {
        VerifyCell cell;
        cell.n = n;
        std::vector<CanonicalTree> all = enumerate_trees(n);
        long long max_kf = -1;
        int count_at_max = 0;
        const CanonicalTree* argmax = nullptr;
        for (const CanonicalTree& t : all) {
            if (t.kirchhoff > max_kf) {
                max_kf = t.kirchhoff;
                count_at_max = 1;
                argmax = &t;
            } else if (t.kirchhoff == max_kf) {
                ++count_at_max;
            }
        }
        WeightedDigraph path = materialize(blueprint_path(n));
        cell.pass = count_at_max == 1 && argmax && same_class(argmax->graph, path);
        cell.witnesses.push_back(kf_witness("max key=" + argmax->key_string(), max_kf));
        rep.pass &= cell.pass;
        rep.cells.push_back(std::move(cell));
    }
}

// Theorem "3": T_{N,N-2} = { P_{N,N-2,i} } with K_f strictly decreasing in i.
inline void verify_dn2_ordering(VerifyReport& rep) {
    for (int n = 4; n <= rep.max_nodes; ++n) {
        VerifyCell cell;
        cell.n = n;
        cell.d = n - 2;
        std::vector<CanonicalTree> cls = trees_by_diameter(n, n - 2);
        const int imax = (n - 2) / 2;
        if (static_cast<int>(cls.size()) != imax) cell.pass = false;
        long long prev = -1;
        for (int i = 1; i <= imax && cell.pass; ++i) {
            WeightedDigraph want = materialize(blueprint_path_bouquet(n, n - 2, i));
            long long kf = kirchhoff_tree_exact(want);
            bool found = false;
            for (const CanonicalTree& t : cls)
                if (same_class(t.graph, want) && t.kirchhoff == kf) found = true;
            if (!found) cell.pass = false;
            if (i > 1 && kf >= prev) cell.pass = false; // strictly decreasing in i
            prev = kf;
            cell.witnesses.push_back(kf_witness(
                "P(" + std::to_string(n) + "," + std::to_string(n - 2) + "," +
                    std::to_string(i) + ")",
                kf));
        }
        rep.pass &= cell.pass;
        rep.cells.push_back(std::move(cell));
    }
}

// Theorem "5": unique K_f minimizer of T_{N,d} is P_{N,d,floor(d/2)}.
inline void verify_class_min(VerifyReport& rep) {
    for (int n = 4; n <= rep.max_nodes; ++n) {
        for (int d = 2; d <= n - 2; ++d) {
            VerifyCell cell;
            cell.n = n;
            cell.d = d;
            std::vector<CanonicalTree> cls = trees_by_diameter(n, d);
            long long min_kf = -1;
            int count_at_min = 0;
            const CanonicalTree* argmin = nullptr;
            for (const CanonicalTree& t : cls) {
                if (min_kf < 0 || t.kirchhoff < min_kf) {
                    min_kf = t.kirchhoff;
                    count_at_min = 1;
                    argmin = &t;
                } else if (t.kirchhoff == min_kf) {
                    ++count_at_min;
                }
            }
            WeightedDigraph want = materialize(blueprint_path_bouquet(n, d, d / 2));
            cell.pass = count_at_min == 1 && argmin && same_class(argmin->graph, want);
            cell.witnesses.push_back(kf_witness("min key=" + argmin->key_string(), min_kf));
            rep.pass &= cell.pass;
            rep.cells.push_back(std::move(cell));
        }
    }
}

// Theorem "6": min over T_{N,d-1} beats min over T_{N,d}; star is the unique
// global minimizer.
inline void verify_diameter_domination(VerifyReport& rep) {
    for (int n = 3; n <= rep.max_nodes; ++n) {
        VerifyCell cell;
        cell.n = n;
        std::vector<long long> class_min(n, -1); // index d
        for (int d = 2; d <= n - 1; ++d) {
            for (const CanonicalTree& t : trees_by_diameter(n, d))
                if (class_min[d] < 0 || t.kirchhoff < class_min[d]) class_min[d] = t.kirchhoff;
            cell.witnesses.push_back(
                kf_witness("min T_{" + std::to_string(n) + "," + std::to_string(d) + "}",
                           class_min[d]));
        }
        for (int d = 3; d <= n - 1; ++d)
            if (!(class_min[d - 1] < class_min[d])) cell.pass = false;

        std::vector<CanonicalTree> all = enumerate_trees(n);
        WeightedDigraph star = materialize(blueprint_star(n));
        long long star_kf = kirchhoff_tree_exact(star);
        for (const CanonicalTree& t : all)
            if (!same_class(t.graph, star) && t.kirchhoff <= star_kf) cell.pass = false;
        cell.witnesses.push_back(kf_witness("star", star_kf));
        rep.pass &= cell.pass;
        rep.cells.push_back(std::move(cell));
    }
}

} // namespace detail

/// Lemma sweeps: exact delta formulas and descent terminations, all checked
/// against the integer distance-sum oracle.
namespace lemma {

/// Bouquet transfer formula over all valid (N, p, q) with N <= max_nodes:
/// oracle delta equals -(N-p-q-1)(q-p+1) and the result is D_{N,p-1,q+1}.
inline bool bouquet_transfer_formula(int max_nodes, std::vector<std::string>* failures = nullptr) {
    bool ok = true;
    for (int n = 6; n <= max_nodes; ++n)
        for (int p = 2; 2 * p <= n - 2; ++p)
            for (int q = p; p + q <= n - 2; ++q) {
                WeightedDigraph palm = materialize(blueprint_double_palm(n, p, q));
                long long before = kirchhoff_tree_exact(palm);
                MoveResult mv = move_bouquet_leaf(palm);
                long long oracle = kirchhoff_tree_exact(mv.tree) - before;
                long long formula = -static_cast<long long>(n - p - q - 1) * (q - p + 1);
                WeightedDigraph want = materialize(blueprint_double_palm(n, p - 1, q + 1));
                bool good = oracle == formula && mv.delta_kf == formula && oracle < 0 &&
                            detail::same_class(mv.tree, want);
                if (!good && failures)
                    failures->push_back("D(" + std::to_string(n) + "," + std::to_string(p) + "," +
                                        std::to_string(q) + ") oracle=" + std::to_string(oracle) +
                                        " formula=" + std::to_string(formula));
                ok &= good;
            }
    return ok;
}

/// Vine transfer formula for T = path of 2..4 nodes (all roots) and all valid
/// (l, k) with N <= max_nodes: oracle delta equals +(N-l-k-1)(k-l+1).
inline bool vine_transfer_formula(int max_nodes, std::vector<std::string>* failures = nullptr) {
    bool ok = true;
    for (int t = 2; t <= 4; ++t)
        for (int root = 0; root < t; ++root)
            for (int l = 1; l <= max_nodes; ++l)
                for (int k = l; t + l + k <= max_nodes; ++k) {
                    if (t + l + k - 1 < l + k + 1) continue; // need N-l-k >= 2, implied by t >= 2
                    TreeBlueprint vb =
                        blueprint_vine(materialize(blueprint_path(t)), root, l, k);
                    WeightedDigraph vine = materialize(vb);
                    // the chains occupy ids t..t+l-1 and t+l..t+l+k-1
                    VineDecomposition vd;
                    vd.root = root;
                    for (int x = 0; x < vb.l; ++x) vd.short_path.push_back(t + x);
                    for (int x = 0; x < vb.k; ++x) vd.long_path.push_back(t + vb.l + x);
                    long long before = kirchhoff_tree_exact(vine);
                    MoveResult mv = move_vine_leaf(vine, vd);
                    long long oracle = kirchhoff_tree_exact(mv.tree) - before;
                    int n = t + l + k;
                    long long formula = static_cast<long long>(n - l - k - 1) * (k - l + 1);
                    WeightedDigraph want = materialize(
                        blueprint_vine(materialize(blueprint_path(t)), root, l - 1, k + 1));
                    bool good = oracle == formula && mv.delta_kf == formula && oracle > 0 &&
                                detail::same_class(mv.tree, want);
                    if (!good && failures)
                        failures->push_back("T=P" + std::to_string(t) + " r=" +
                                            std::to_string(root) + " l=" + std::to_string(l) +
                                            " k=" + std::to_string(k) +
                                            " oracle=" + std::to_string(oracle) +
                                            " formula=" + std::to_string(formula));
                    ok &= good;
                }
    return ok;
}

/// Caterpillar descent: every caterpillar in C_{N,d} (4 <= d <= N-3) reaches
/// P_{N,d,floor(d/2)} through strictly decreasing K_f.
inline bool caterpillar_descent(int max_nodes, std::vector<std::string>* failures = nullptr) {
    bool ok = true;
    for (int n = 7; n <= max_nodes; ++n)
        for (int d = 4; d <= n - 3; ++d) {
            WeightedDigraph want = materialize(blueprint_path_bouquet(n, d, d / 2));
            for (const CanonicalTree& t : trees_by_diameter(n, d)) {
                if (!t.is_caterpillar) continue;
                DescentResult res = descend_caterpillar(t.graph);
                bool strict = true;
                for (size_t i = 1; i < res.kf_trace.size(); ++i)
                    strict &= res.kf_trace[i] < res.kf_trace[i - 1];
                bool good = strict && detail::same_class(res.terminal, want);
                if (!good && failures)
                    failures->push_back("C_{" + std::to_string(n) + "," + std::to_string(d) +
                                        "} key=" + t.key_string());
                ok &= good;
            }
        }
    return ok;
}

/// Non-caterpillar descent: every tree in T_{N,d} \ C_{N,d} reaches N_{N,d}
/// through strictly decreasing K_f, and pendant_drop then reaches
/// P_{N,d,floor(d/2)} with a further strict decrease.
inline bool noncaterpillar_descent(int max_nodes, std::vector<std::string>* failures = nullptr) {
    bool ok = true;
    for (int n = 7; n <= max_nodes; ++n)
        for (int d = 4; d <= n - 3; ++d) {
            WeightedDigraph terminal = materialize(blueprint_bouquet_pendant(n, d));
            for (const CanonicalTree& t : trees_by_diameter(n, d)) {
                if (t.is_caterpillar) continue;
                DescentResult res = descend_noncaterpillar(t.graph);
                bool strict = true;
                for (size_t i = 1; i < res.kf_trace.size(); ++i)
                    strict &= res.kf_trace[i] < res.kf_trace[i - 1];
                bool good = strict && detail::same_class(res.terminal, terminal);
                if (!good && failures)
                    failures->push_back("T_{" + std::to_string(n) + "," + std::to_string(d) +
                                        "}\\C key=" + t.key_string());
                ok &= good;
            }
        }
    return ok;
}

/// pendant_drop on N_{N,d}: result is P_{N,d,floor(d/2)} and the oracle delta
/// is strictly negative (and equals -(N-3)).
inline bool pendant_drop_step(int max_nodes, std::vector<std::string>* failures = nullptr) {
    bool ok = true;
    for (int n = 7; n <= max_nodes; ++n)
        for (int d = 4; d <= n - 3; ++d) {
            WeightedDigraph nnd = materialize(blueprint_bouquet_pendant(n, d));
            MoveResult mv = pendant_drop(nnd);
            WeightedDigraph want = materialize(blueprint_path_bouquet(n, d, d / 2));
            bool good = mv.delta_kf == -(static_cast<long long>(n) - 3) && mv.delta_kf < 0 &&
                        detail::same_class(mv.tree, want);
            if (!good && failures)
                failures->push_back("N_{" + std::to_string(n) + "," + std::to_string(d) +
                                    "} delta=" + std::to_string(mv.delta_kf));
            ok &= good;
        }
    return ok;
}

} // namespace lemma

/// Run one theorem's (or the lemma suite's) exhaustive verification for all
/// applicable N up to max_nodes.
inline VerifyReport verify_theorem(const std::string& id, int max_nodes) {
    if (max_nodes > kEnumerationMaxNodes)
        fail(Errc::NTooLarge, "verification bounded by the enumeration guard N <= " +
                                  std::to_string(kEnumerationMaxNodes));
    VerifyReport rep;
    rep.id = id;
    rep.max_nodes = max_nodes;
    if (id == "1") {
        detail::verify_d3_ordering(rep);
    } else if (id == "2") {
        detail::verify_path_is_max(rep);
    } else if (id == "3") {
        detail::verify_dn2_ordering(rep);
    } else if (id == "5") {
        detail::verify_class_min(rep);
    } else if (id == "6") {
        detail::verify_diameter_domination(rep);
    } else if (id == "lemmas") {
        auto run = [&](const char* name, bool (*fn)(int, std::vector<std::string>*)) {
            VerifyCell cell;
            cell.n = max_nodes;
            std::vector<std::string> failures;
            cell.pass = fn(max_nodes, &failures);
            cell.witnesses.push_back(std::string(name) + (cell.pass ? ": all cases exact" : ""));
            for (const std::string& f : failures) cell.witnesses.push_back(f);
            rep.pass &= cell.pass;
            rep.cells.push_back(std::move(cell));
        };
        run("bouquet transfer formula", lemma::bouquet_transfer_formula);
        run("vine transfer formula", lemma::vine_transfer_formula);
        run("caterpillar descent", lemma::caterpillar_descent);
        run("non-caterpillar descent", lemma::noncaterpillar_descent);
        run("pendant drop", lemma::pendant_drop_step);
    } else {
        fail(Errc::InvalidParameters, "theorem id must be one of 1, 2, 3, 5, 6, lemmas");
    }
    return rep;
}

inline nlohmann::ordered_json verify_report_json(const VerifyReport& rep) {
    nlohmann::ordered_json j;
    j["theorem"] = rep.id;
    j["id_mapping"] = theorem_id_mapping();
    j["max_nodes"] = rep.max_nodes;
    j["pass"] = rep.pass;
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const VerifyCell& c : rep.cells) {
        nlohmann::ordered_json jc;
        jc["n"] = c.n;
        if (c.d)
            jc["d"] = *c.d;
        else
            jc["d"] = nullptr;
        jc["pass"] = c.pass;
        jc["witnesses"] = c.witnesses;
        cells.push_back(std::move(jc));
    }
    j["cells"] = std::move(cells);
    return j;
}

} // namespace treeh2
