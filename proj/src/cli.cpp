#include "tgc/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "tgc/counting.hpp"
#include "tgc/embedding.hpp"
#include "tgc/generators.hpp"
#include "tgc/global.hpp"
#include "tgc/graph.hpp"
#include "tgc/keys.hpp"
#include "tgc/oracle.hpp"
#include "tgc/storage.hpp"

namespace tgc::cli {

namespace {

Mode parse_mode(const std::string& s) {
    if (s == "typed") return Mode::Typed;
    if (s == "pa") return Mode::PositionAware;
    throw DataError("unknown mode '" + s + "' (expected typed or pa)");
}

LoadedGraph load_for_cli(const std::string& edges, const std::string& types, int num_types,
                         bool symmetrize) {
    LoadedGraph lg = load_graph(edges, types, num_types);
    const LoadReport& r = lg.report;
    if (r.reversed_duplicate_edges > 0 && !symmetrize)
        throw DataError(edges + ": " + std::to_string(r.reversed_duplicate_edges) +
                        " edges appear in both orientations; the input looks directed. "
                        "Pass --symmetrize to fold them.");
    if (r.total_dropped() > 0)
        std::cerr << "warning: dropped " << r.self_loops << " self-loops, "
                  << r.duplicate_edges + r.reversed_duplicate_edges << " duplicate edges\n";
    return lg;
}

const char* kOrbitNames[13] = {
    "edge",        "3-path",          "triangle",       "4-path-edge",
    "4-path-center", "4-star",        "4-cycle",        "tailed-tri-tail",
    "tailed-tri-center", "tailed-tri-edge", "chordal-edge", "chordal-center",
    "4-clique"};
const char* kShapeNames[9] = {"edge",   "3-path",          "triangle",      "4-path",
                              "4-star", "4-cycle",         "tailed-triangle", "chordal-cycle",
                              "4-clique"};

int cmd_count(const std::string& edges, const std::string& types, const std::string& mode_s,
              const std::string& level, int threads, const std::string& out, int num_types,
              bool symmetrize) {
    LoadedGraph lg = load_for_cli(edges, types, num_types, symmetrize);
    LocalCountTable table = count_all(lg.graph, parse_mode(mode_s), threads);
    if (level == "graphlet") table = orbits_to_graphlets(table);
    write_counts(table, out);
    std::cerr << "wrote " << out << " (" << table.num_edges() << " edges)\n";
    return 0;
}

int cmd_global(const std::string& counts, const std::string& level, const std::string& out) {
    LocalCountTable table = read_counts(counts);
    if (level == "orbit") table = orbits_to_graphlets(table);
    const GlobalCountTable global = global_counts(table);
    write_global(global, out);
    std::cerr << "wrote " << out << " (" << global.entries.size() << " keys)\n";
    return 0;
}

int cmd_generate(const std::string& model, RawId nodes, int types, std::uint64_t seed,
                 double p, double exponent, double avg_degree, int ring_k, double beta,
                 const std::string& prefix) {
    std::vector<std::pair<RawId, RawId>> edges;
    if (model == "er") {
        edges = gen_er(nodes, p, seed);
    } else if (model == "cl") {
        edges = gen_chung_lu(power_law_weights(nodes, exponent, avg_degree), seed);
    } else if (model == "sw") {
        edges = gen_small_world(nodes, ring_k, beta, seed);
    } else {
        throw DataError("unknown model '" + model + "' (expected er, cl or sw)");
    }
    const std::vector<int> node_types = assign_types_uniform(nodes, types, seed + 1);

    const std::string epath = prefix + ".edges", tpath = prefix + ".types";
    std::ofstream ef(epath);
    if (!ef) throw DataError("cannot open for writing: " + epath);
    for (const auto& [u, v] : edges) ef << u << ' ' << v << '\n';
    if (!ef) throw DataError("write failed: " + epath);
    std::ofstream tf(tpath);
    if (!tf) throw DataError("cannot open for writing: " + tpath);
    for (RawId v = 0; v < nodes; ++v) tf << v << ' ' << node_types[v] << '\n';
    if (!tf) throw DataError("write failed: " + tpath);
    std::cerr << "wrote " << epath << " (" << edges.size() << " edges), " << tpath << '\n';
    return 0;
}

int cmd_permute_types(const std::string& types_path, std::uint64_t seed,
                      const std::string& out) {
    std::ifstream in(types_path);
    if (!in) throw DataError("cannot open type file: " + types_path);
    std::vector<RawId> ids;
    std::vector<int> vals;
    RawId id;
    int t;
    while (in >> id >> t) {
        ids.push_back(id);
        vals.push_back(t);
    }
    vals = permute_types(std::move(vals), seed);
    std::ofstream of(out);
    if (!of) throw DataError("cannot open for writing: " + out);
    for (std::size_t k = 0; k < ids.size(); ++k) of << ids[k] << ' ' << vals[k] << '\n';
    if (!of) throw DataError("write failed: " + out);
    return 0;
}

int cmd_verify(const std::string& edges, const std::string& types, const std::string& mode_s,
               NodeId max_nodes, int threads, bool symmetrize) {
    LoadedGraph lg = load_for_cli(edges, types, 0, symmetrize);
    const Mode mode = parse_mode(mode_s);
    const LocalCountTable engine = count_all(lg.graph, mode, threads);
    const LocalCountTable reference = oracle_counts(lg.graph, mode, max_nodes);
    for (EdgeIndex e = 0; e < engine.num_edges(); ++e) {
        const auto& lhs = engine.entries[e];
        const auto& rhs = reference.entries[e];
        std::size_t x = 0, y = 0;
        while (x < lhs.size() || y < rhs.size()) {
            Hash key;
            Count ec = 0, oc = 0;
            if (y == rhs.size() || (x < lhs.size() && lhs[x].hash < rhs[y].hash)) {
                key = lhs[x].hash;
                ec = lhs[x].count;
            } else if (x == lhs.size() || rhs[y].hash < lhs[x].hash) {
                key = rhs[y].hash;
                oc = rhs[y].count;
            } else {
                key = lhs[x].hash;
                ec = lhs[x].count;
                oc = rhs[y].count;
            }
            if (ec != oc) {
                std::cout << "divergence at edge (" << engine.endpoints[e].first << ","
                          << engine.endpoints[e].second << "): key " << key << " engine=" << ec
                          << " oracle=" << oc << '\n';
                return 3;
            }
            if (x < lhs.size() && lhs[x].hash == key) ++x;
            if (y < rhs.size() && rhs[y].hash == key) ++y;
        }
    }
    std::cout << "engine matches oracle on " << engine.num_edges() << " edges ("
              << mode_name(mode) << " mode)\n";
    return 0;
}

int cmd_embed(const std::string& edges, const std::string& types, const std::string& mode_s,
              Hash key, int dim, int threads, const std::string& out, bool symmetrize) {
    LoadedGraph lg = load_for_cli(edges, types, 0, symmetrize);
    const LocalCountTable orbit_table = count_all(lg.graph, parse_mode(mode_s), threads);
    const LocalCountTable table = orbits_to_graphlets(orbit_table);
    const MotifWeightedGraph mwg = motif_weighted_graph(lg.graph, table, key);
    const EmbedResult result = embed(mwg, dim);
    write_embedding(result.matrix, lg.graph, out);
    std::cerr << "wrote " << out << " (" << result.matrix.num_nodes << " x "
              << result.matrix.dim << ")\n";
    return 0;
}

int cmd_stats(const std::string& counts, const std::string& level, int top) {
    const LocalCountTable table = read_counts(counts);
    std::map<Hash, Count> totals;
    Count nonzeros = 0;
    for (const auto& list : table.entries) {
        nonzeros += static_cast<Count>(list.size());
        for (const CountEntry& entry : list) totals[entry.hash] += entry.count;
    }
    std::map<int, Count> per_code;
    for (const auto& [hash, total] : totals)
        ++per_code[decode(hash, table.num_types, table.mode).code];

    std::cout << "edges: " << table.num_edges() << '\n';
    std::cout << "mode: " << mode_name(table.mode) << "  types: " << table.num_types << '\n';
    std::cout << "distinct keys: " << totals.size() << '\n';
    const double mean = table.num_edges() == 0
                            ? 0.0
                            : static_cast<double>(nonzeros) / static_cast<double>(table.num_edges());
    std::cout << "mean nonzeros per edge: " << mean << '\n';
    std::cout << "distinct keys per " << level << ":\n";
    for (const auto& [code, cnt] : per_code) {
        const char* name = level == "graphlet" ? kShapeNames[code] : kOrbitNames[code];
        std::cout << "  " << name << ": " << cnt << '\n';
    }
    std::cout << "top keys by total count:\n";
    std::vector<std::pair<Hash, Count>> ranked(totals.begin(), totals.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (int k = 0; k < top && k < static_cast<int>(ranked.size()); ++k) {
        const GraphletKey key = decode(ranked[k].first, table.num_types, table.mode);
        std::cout << "  " << ranked[k].first << ' ' << key.code << ' ' << key.types[0] << ' '
                  << key.types[1] << ' ' << key.types[2] << ' ' << key.types[3] << ' '
                  << ranked[k].second << '\n';
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"typed graphlet counting toolkit"};
    app.require_subcommand(1);

    std::string edges, types_path, out, prefix, counts, model;
    std::string mode_s = "typed", level = "orbit";
    int threads = 1, num_types = 0, dim = 2, ring_k = 4, top = 10;
    NodeId max_nodes = 40;
    RawId nodes = 0;
    int gen_types = 1;
    std::uint64_t seed = 1, key = 0;
    double p = 0.1, exponent = 1.8, avg_degree = 10.0, beta = 0.3;
    bool symmetrize = false;

    auto* count = app.add_subcommand("count", "per-edge typed graphlet counts");
    count->add_option("--edges", edges)->required();
    count->add_option("--types", types_path)->required();
    count->add_option("--mode", mode_s)->check(CLI::IsMember({"typed", "pa"}));
    count->add_option("--level", level)->check(CLI::IsMember({"orbit", "graphlet"}));
    count->add_option("--threads", threads)->check(CLI::PositiveNumber);
    count->add_option("--out", out)->required();
    count->add_option("--num-types", num_types);
    count->add_flag("--symmetrize", symmetrize);

    auto* global = app.add_subcommand("global", "aggregate per-edge counts into totals");
    global->add_option("--counts", counts)->required();
    global->add_option("--level", level, "granularity of the counts file")
        ->check(CLI::IsMember({"orbit", "graphlet"}));
    global->add_option("--out", out)->required();

    auto* generate = app.add_subcommand("generate", "seeded synthetic graphs");
    generate->add_option("--model", model)->required()->check(CLI::IsMember({"er", "cl", "sw"}));
    generate->add_option("--nodes", nodes)->required();
    generate->add_option("--types", gen_types)->required();
    generate->add_option("--seed", seed);
    generate->add_option("--p", p, "ER edge probability");
    generate->add_option("--exponent", exponent, "CL power-law exponent");
    generate->add_option("--avg-degree", avg_degree, "CL target average degree");
    generate->add_option("--k", ring_k, "SW ring degree (even)");
    generate->add_option("--beta", beta, "SW rewiring probability");
    generate->add_option("--out-prefix", prefix)->required();

    auto* permute = app.add_subcommand("permute-types", "shuffle an existing type file");
    permute->add_option("--types", types_path)->required();
    permute->add_option("--seed", seed);
    permute->add_option("--out", out)->required();

    auto* verify = app.add_subcommand("verify", "compare the engine against the brute-force oracle");
    verify->add_option("--edges", edges)->required();
    verify->add_option("--types", types_path)->required();
    verify->add_option("--mode", mode_s)->check(CLI::IsMember({"typed", "pa"}));
    verify->add_option("--max-nodes", max_nodes);
    verify->add_option("--threads", threads)->check(CLI::PositiveNumber);
    verify->add_flag("--symmetrize", symmetrize);

    auto* embed_cmd = app.add_subcommand("embed", "motif-weighted spectral node embedding");
    embed_cmd->add_option("--edges", edges)->required();
    embed_cmd->add_option("--types", types_path)->required();
    embed_cmd->add_option("--mode", mode_s)->check(CLI::IsMember({"typed", "pa"}));
    embed_cmd->add_option("--key", key, "graphlet-level key hash")->required();
    embed_cmd->add_option("--dim", dim)->check(CLI::PositiveNumber);
    embed_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);
    embed_cmd->add_option("--out", out)->required();
    embed_cmd->add_flag("--symmetrize", symmetrize);

    auto* stats = app.add_subcommand("stats", "summarize a counts file");
    stats->add_option("--counts", counts)->required();
    stats->add_option("--level", level)->check(CLI::IsMember({"orbit", "graphlet"}));
    stats->add_option("--top", top)->check(CLI::PositiveNumber);

    std::vector<char*> argv;
    std::vector<std::string> storage = args;
    std::string program = "tgc";
    argv.push_back(program.data());
    for (std::string& s : storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (count->parsed())
            return cmd_count(edges, types_path, mode_s, level, threads, out, num_types,
                             symmetrize);
        if (global->parsed()) return cmd_global(counts, level, out);
        if (generate->parsed())
            return cmd_generate(model, nodes, gen_types, seed, p, exponent, avg_degree, ring_k,
                                beta, prefix);
        if (permute->parsed()) return cmd_permute_types(types_path, seed, out);
        if (verify->parsed())
            return cmd_verify(edges, types_path, mode_s, max_nodes, threads, symmetrize);
        if (embed_cmd->parsed())
            return cmd_embed(edges, types_path, mode_s, key, dim, threads, out, symmetrize);
        if (stats->parsed()) return cmd_stats(counts, level, top);
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace tgc::cli
