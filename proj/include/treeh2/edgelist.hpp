#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "treeh2/format.hpp"
#include "treeh2/graph.hpp"

namespace treeh2 {

/// Edge-list text format:
///   # comment
///   nodes N
///   undirected          (optional flag; listed edges are expanded symmetrically)
///   i j w               (0-based node ids, decimal weight)
/// Blank lines are ignored. The `nodes` header must precede all edges.
inline WeightedDigraph parse_edge_list(std::istream& in, const std::string& source = "<input>") {
    int n = -1;
    bool undirected = false;
    std::vector<Edge> edges;
    std::string line;
    int lineno = 0;

    auto bad = [&](const std::string& msg) {
        fail(Errc::BadInputFile, source + ":" + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue; // blank / comment-only
        if (first == "nodes") {
            if (n >= 0) bad("duplicate 'nodes' header");
            if (!(ls >> n) || n <= 0) bad("expected positive integer after 'nodes'");
        } else if (first == "undirected") {
            if (!edges.empty()) bad("'undirected' flag must precede edges");
            undirected = true;
        } else {
            if (n < 0) bad("'nodes N' header required before edges");
            int i, j;
            double w;
            std::istringstream es(line);
            if (!(es >> i >> j >> w)) bad("expected 'i j w' edge line");
            std::string extra;
            if (es >> extra) bad("trailing tokens after edge line");
            edges.push_back(Edge{i, j, w});
        }
    }
    if (n < 0) fail(Errc::BadInputFile, source + ": missing 'nodes N' header");

    try {
        return build_graph(n, edges, undirected);
    } catch (const Error& e) {
        fail(Errc::BadInputFile, source + ": " + e.what());
    }
}

inline WeightedDigraph parse_edge_list_string(const std::string& text,
                                              const std::string& source = "<string>") {
    std::istringstream in(text);
    return parse_edge_list(in, source);
}

/// Serialize in the same format. Undirected graphs list each edge once (i < j)
/// under the `undirected` flag; directed graphs list every arc.
inline std::string serialize_edge_list(const WeightedDigraph& g) {
    std::ostringstream out;
    out << "nodes " << g.node_count() << "\n";
    if (g.is_undirected()) {
        out << "undirected\n";
        for (const Edge& e : g.edges())
            if (e.src < e.dst) out << e.src << " " << e.dst << " " << fmt12(e.weight) << "\n";
    } else {
        for (const Edge& e : g.edges())
            out << e.src << " " << e.dst << " " << fmt12(e.weight) << "\n";
    }
    return out.str();
}

} // namespace treeh2
