#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "treeh2/edgelist.hpp"
#include "treeh2/enumerate.hpp"
#include "treeh2/families.hpp"
#include "treeh2/metrics.hpp"
#include "treeh2/rewire.hpp"
#include "treeh2/simulate.hpp"
#include "treeh2/verify.hpp"

namespace treeh2::cli {

namespace detail {

inline WeightedDigraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::BadInputFile, path + ": cannot open");
    return parse_edge_list(in, path);
}

inline void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(Errc::BadInputFile, path + ": cannot open for writing");
    f << content;
}

/// Blueprint syntax: star:N  path:N  pndi:N,d,i  nnd:N,d  dpalm:N,p,q
/// cat:d,n1,...,n_{d-1}  vine:<subtree-file>,root,l,k
inline TreeBlueprint parse_blueprint(const std::string& spec) {
    size_t colon = spec.find(':');
    if (colon == std::string::npos)
        fail(Errc::InvalidParameters, "blueprint must look like kind:params");
    std::string kind = spec.substr(0, colon);
    std::vector<std::string> parts;
    {
        std::string rest = spec.substr(colon + 1);
        std::istringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) parts.push_back(tok);
    }
    auto as_int = [&](size_t idx) {
        try {
            return std::stoi(parts.at(idx));
        } catch (const std::exception&) {
            fail(Errc::InvalidParameters, "blueprint parameter " + std::to_string(idx + 1) +
                                              " of '" + spec + "' is not an integer");
        }
    };
    auto need = [&](size_t count) {
        if (parts.size() != count)
            fail(Errc::InvalidParameters,
                 "blueprint '" + kind + "' takes " + std::to_string(count) + " parameters");
    };

    if (kind == "star") {
        need(1);
        return blueprint_star(as_int(0));
    }
    if (kind == "path") {
        need(1);
        return blueprint_path(as_int(0));
    }
    if (kind == "pndi") {
        need(3);
        return blueprint_path_bouquet(as_int(0), as_int(1), as_int(2));
    }
    if (kind == "nnd") {
        need(2);
        return blueprint_bouquet_pendant(as_int(0), as_int(1));
    }
    if (kind == "dpalm") {
        need(3);
        return blueprint_double_palm(as_int(0), as_int(1), as_int(2));
    }
    if (kind == "cat") {
        if (parts.empty()) fail(Errc::InvalidParameters, "cat needs d,n1,...,n_{d-1}");
        int d = as_int(0);
        std::vector<int> sizes;
        for (size_t i = 1; i < parts.size(); ++i) sizes.push_back(as_int(i));
        return blueprint_caterpillar(d, std::move(sizes));
    }
    if (kind == "vine") {
        need(4);
        WeightedDigraph subtree = load_graph(parts[0]);
        return blueprint_vine(std::move(subtree), as_int(1), as_int(2), as_int(3));
    }
    fail(Errc::InvalidParameters, "unknown blueprint kind '" + kind + "'");
}

inline std::string matrix_csv(const Eigen::MatrixXd& m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ",";
            out << fmt12(m(i, j));
        }
        out << "\n";
    }
    return out.str();
}

inline Eigen::VectorXd parse_vector(const std::string& csv) {
    std::vector<double> vals;
    std::istringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            vals.push_back(std::stod(tok));
        } catch (const std::exception&) {
            fail(Errc::InvalidParameters, "x0 entry '" + tok + "' is not a number");
        }
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
    return v;
}

} // namespace detail

/// Run the CLI. Exit codes: 0 success, 1 validation/usage error,
/// 2 verification FAIL.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"H2-norm robustness toolkit for consensus graphs"};
    app.require_subcommand(1);

    // compute
    auto* compute = app.add_subcommand("compute", "metrics JSON report for a graph");
    std::string c_input, c_method = "all", c_out;
    compute->add_option("--input", c_input, "edge-list file")->required();
    compute->add_option("--method", c_method, "eig|lyap|resist|all")
        ->check(CLI::IsMember({"eig", "lyap", "resist", "all"}));
    compute->add_option("--out", c_out, "output path (default stdout)");

    // resistance
    auto* resistance = app.add_subcommand("resistance", "pairwise resistance matrix CSV");
    std::string r_input, r_out;
    bool r_directed = false;
    resistance->add_option("--input", r_input, "edge-list file")->required();
    resistance->add_flag("--directed", r_directed, "use the directed-resistance construction");
    resistance->add_option("--out", r_out, "output path (default stdout)");

    // family
    auto* family = app.add_subcommand("family", "materialize a tree-family blueprint");
    std::string f_blueprint, f_out;
    family->add_option("--blueprint", f_blueprint, "e.g. pndi:7,4,2")->required();
    family->add_option("--out", f_out, "edge-list output path (default stdout)");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "all non-isomorphic trees on N nodes");
    int e_nodes = 0, e_diameter = -1;
    std::string e_out;
    enumerate->add_option("--nodes", e_nodes, "node count")->required();
    enumerate->add_option("--diameter", e_diameter, "restrict to diameter d");
    enumerate->add_option("--out", e_out, "CSV output path (default stdout)");

    // rank
    auto* rank = app.add_subcommand("rank", "rank a tree class by exact Kirchhoff index");
    int k_nodes = 0, k_diameter = -1;
    bool k_cats = false;
    std::string k_out;
    rank->add_option("--nodes", k_nodes, "node count")->required();
    rank->add_option("--diameter", k_diameter, "restrict to diameter d");
    rank->add_flag("--caterpillars", k_cats, "caterpillars only");
    rank->add_option("--out", k_out, "CSV output path (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "exhaustive ordering verification");
    std::string v_theorem, v_out;
    int v_max_nodes = 10;
    verify->add_option("--theorem", v_theorem, "1|2|3|5|6|lemmas")->required();
    verify->add_option("--max-nodes", v_max_nodes, "largest N to verify (default 10)");
    verify->add_option("--out", v_out, "JSON output path (default stdout)");

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "noisy consensus trajectory");
    std::string s_input, s_x0, s_out_csv = "sim_series.csv", s_out_json = "sim_summary.json";
    double s_alpha = 2.0, s_dt = 0.0;
    long long s_steps = 2000000, s_burnin = 200000, s_stride = 0;
    std::uint64_t s_seed = 0;
    simulate_cmd->add_option("--input", s_input, "edge-list file")->required();
    simulate_cmd->add_option("--alpha", s_alpha, "noise intensity (default 2)");
    simulate_cmd->add_option("--dt", s_dt, "time step (default 1e-3 / max Re lambda)");
    simulate_cmd->add_option("--steps", s_steps, "total steps (default 2e6)");
    simulate_cmd->add_option("--burnin", s_burnin, "burn-in steps (default 2e5)");
    simulate_cmd->add_option("--seed", s_seed, "RNG seed");
    simulate_cmd->add_option("--stride", s_stride, "recording stride (default ~2000 samples)");
    simulate_cmd->add_option("--x0", s_x0, "initial state, comma separated");
    simulate_cmd->add_option("--out-csv", s_out_csv, "series CSV path");
    simulate_cmd->add_option("--out-json", s_out_json, "summary JSON path");

    // rewire
    auto* rewire_cmd = app.add_subcommand("rewire", "decentralized leaf rewiring of a tree");
    std::string w_input, w_out;
    int w_hops = 3, w_max_rounds = 10000;
    std::uint64_t w_seed = 0;
    rewire_cmd->add_option("--input", w_input, "edge-list file")->required();
    rewire_cmd->add_option("--hops", w_hops, "local view radius k (default 3)");
    rewire_cmd->add_option("--max-rounds", w_max_rounds, "round cap (default 10000)");
    rewire_cmd->add_option("--seed", w_seed, "reserved; the procedure is deterministic");
    rewire_cmd->add_option("--out", w_out, "move-log CSV path (default stdout)");

    std::vector<const char*> argv;
    argv.push_back("treeh2");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (compute->parsed()) {
            WeightedDigraph g = detail::load_graph(c_input);
            H2Method method = H2Method::All;
            if (c_method == "eig") method = H2Method::Eig;
            if (c_method == "lyap") method = H2Method::Lyap;
            if (c_method == "resist") method = H2Method::Resist;
            detail::write_output(c_out, metrics_report(g, method).dump(2) + "\n", out);
        } else if (resistance->parsed()) {
            WeightedDigraph g = detail::load_graph(r_input);
            ResistanceMatrix rm = r_directed ? resistance_directed(g) : resistance_undirected(g);
            detail::write_output(r_out, detail::matrix_csv(rm.r), out);
        } else if (family->parsed()) {
            WeightedDigraph g = materialize(detail::parse_blueprint(f_blueprint));
            detail::write_output(f_out, serialize_edge_list(g), out);
        } else if (enumerate->parsed()) {
            std::vector<CanonicalTree> trees = e_diameter >= 0
                                                   ? trees_by_diameter(e_nodes, e_diameter)
                                                   : enumerate_trees(e_nodes);
            detail::write_output(e_out, tree_list_csv(trees), out);
        } else if (rank->parsed()) {
            ClassDescriptor cls;
            cls.n = k_nodes;
            if (k_diameter >= 0) cls.diameter = k_diameter;
            cls.caterpillars_only = k_cats;
            detail::write_output(k_out, ranking_csv(rank_class(cls)), out);
        } else if (verify->parsed()) {
            VerifyReport rep = verify_theorem(v_theorem, v_max_nodes);
            detail::write_output(v_out, verify_report_json(rep).dump(2) + "\n", out);
            if (!rep.pass) {
                err << "verification FAIL: theorem " << rep.id << "\n";
                return 2;
            }
        } else if (simulate_cmd->parsed()) {
            WeightedDigraph g = detail::load_graph(s_input);
            NoiseModel noise{s_alpha, s_seed};
            SimParams params;
            params.dt = s_dt;
            params.steps = s_steps;
            params.burnin = s_burnin;
            params.stride = s_stride;
            if (!s_x0.empty()) params.x0 = detail::parse_vector(s_x0);
            SimulationRun run = simulate(g, noise, params);
            detail::write_output(s_out_csv, run_csv(run), out);
            detail::write_output(s_out_json, run_summary_json(run).dump(2) + "\n", out);
        } else if (rewire_cmd->parsed()) {
            WeightedDigraph g = detail::load_graph(w_input);
            RewireState state = decentralized_rewire(g, w_hops, w_max_rounds);
            detail::write_output(w_out, rewire_log_csv(state), out);
            err << "rewire: rounds=" << state.rounds << " moves=" << state.log.size()
                << " terminal_is_star=" << (state.terminal_is_star ? "true" : "false") << "\n";
            if (!state.terminal_is_star)
                err << "finding: terminal tree is not the star (diameter "
                    << tree_diameter_int(state.tree) << ")\n";
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace treeh2::cli
