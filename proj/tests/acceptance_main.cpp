// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Dataset-dependent checks are skipped cleanly when the data files
// are not present (pass --data-dir to point at them).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tgc/counting.hpp"
#include "tgc/embedding.hpp"
#include "tgc/generators.hpp"
#include "tgc/global.hpp"
#include "tgc/graph.hpp"
#include "tgc/keys.hpp"
#include "tgc/oracle.hpp"
#include "tgc/storage.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace tgc;

namespace {

int hardware_workers() {
#ifdef _OPENMP
    return std::max(1, omp_get_max_threads());
#else
    return 1;
#endif
}

HeteroGraph build_typed(const std::vector<std::pair<RawId, RawId>>& edges, RawId n,
                        int num_types, std::uint64_t type_seed) {
    const auto types = assign_types_uniform(n, num_types, type_seed);
    std::vector<std::pair<RawId, int>> node_types;
    node_types.reserve(n);
    for (RawId v = 0; v < n; ++v) node_types.emplace_back(v, types[v]);
    return HeteroGraph::build(edges, node_types, num_types);
}

struct TestGraph {
    std::string name;
    HeteroGraph graph;
};

/// The acceptance graph set: ER{10,20,30}x{.1,.2,.3}, CL(1.8, n=30) and
/// SW(30,4,0.3) topologies, each under L in {1,2,3,5}, seeds until 200
/// graphs exist. Empty draws re-seed deterministically.
std::vector<TestGraph> acceptance_graphs() {
    struct Topo {
        std::string name;
        std::function<std::vector<std::pair<RawId, RawId>>(std::uint64_t)> gen;
        RawId n;
    };
    std::vector<Topo> topologies;
    for (RawId n : {10, 20, 30})
        for (double p : {0.1, 0.2, 0.3})
            topologies.push_back({"er(" + std::to_string(n) + "," + std::to_string(p) + ")",
                                  [n, p](std::uint64_t s) { return gen_er(n, p, s); }, n});
    topologies.push_back({"cl(1.8,30)",
                          [](std::uint64_t s) {
                              return gen_chung_lu(power_law_weights(30, 1.8, 6.0), s);
                          },
                          30});
    topologies.push_back(
        {"sw(30,4,0.3)", [](std::uint64_t s) { return gen_small_world(30, 4, 0.3, s); }, 30});

    std::vector<TestGraph> graphs;
    for (std::uint64_t seed = 1; graphs.size() < 200; ++seed) {
        for (const Topo& topo : topologies) {
            for (int num_types : {1, 2, 3, 5}) {
                if (graphs.size() == 200) break;
                std::uint64_t s = seed;
                std::vector<std::pair<RawId, RawId>> edges = topo.gen(s);
                while (edges.empty()) edges = topo.gen(s += 1000);  // deterministic re-draw
                graphs.push_back({topo.name + " L=" + std::to_string(num_types) + " seed=" +
                                      std::to_string(seed),
                                  build_typed(edges, topo.n, num_types, s + 17)});
            }
        }
    }
    return graphs;
}

enum class Outcome { Pass, Fail, Skip };

struct Context {
    std::string data_dir;
    std::vector<TestGraph> graphs;
    bool quick = false;
};

bool tables_equal(const LocalCountTable& a, const LocalCountTable& b, std::string& why) {
    if (a.num_edges() != b.num_edges()) {
        why = "edge counts differ";
        return false;
    }
    for (EdgeIndex e = 0; e < a.num_edges(); ++e) {
        if (a.entries[e] != b.entries[e]) {
            std::ostringstream os;
            os << "edge (" << a.endpoints[e].first << "," << a.endpoints[e].second
               << ") entries differ";
            why = os.str();
            return false;
        }
    }
    return true;
}

Outcome criterion1_oracle_equivalence(const Context& ctx, std::string& detail) {
    for (const TestGraph& tg : ctx.graphs) {
        for (Mode mode : {Mode::Typed, Mode::PositionAware}) {
            const LocalCountTable engine = count_all(tg.graph, mode, 2);
            const LocalCountTable reference = oracle_counts(tg.graph, mode);
            std::string why;
            if (!tables_equal(engine, reference, why)) {
                detail = tg.name + " (" + mode_name(mode) + "): " + why;
                return Outcome::Fail;
            }
        }
    }
    detail = std::to_string(ctx.graphs.size()) + " graphs, both modes, exact";
    return Outcome::Pass;
}

Outcome criterion2_g1_fixture(const Context&, std::string& detail) {
    const HeteroGraph g = HeteroGraph::build({{1, 2}, {1, 3}, {2, 3}, {3, 4}},
                                             {{1, 1}, {2, 1}, {3, 2}, {4, 2}});
    const LocalCountTable orbit_table = count_all(g, Mode::Typed, 1);
    using E = std::vector<CountEntry>;
    // triangle (1,1,2) on the three triangle edges; tailed-triangle seen as
    // orbit 8 from (1,2), orbit 9 from (1,3) and (2,3), orbit 7 from (3,4)
    const std::vector<E> expected = {
        {{1100, 1}, {21120, 1}, {81122, 1}},
        {{1200, 1}, {11220, 1}, {21120, 1}, {91122, 1}},
        {{1200, 1}, {11220, 1}, {21120, 1}, {91122, 1}},
        {{2200, 1}, {11220, 2}, {71122, 1}},
    };
    for (EdgeIndex e = 0; e < 4; ++e) {
        if (orbit_table.entries[e] != expected[e]) {
            detail = "per-edge orbit table mismatch at edge index " + std::to_string(e);
            return Outcome::Fail;
        }
    }
    const GlobalCountTable global = global_counts(orbits_to_graphlets(orbit_table));
    if (global.get(21120) != 1 || global.get(61122) != 1 || global.get(11220) != 2) {
        detail = "global counts mismatch";
        return Outcome::Fail;
    }
    detail = "per-edge orbits 8/9/9/7 and globals reproduced exactly";
    return Outcome::Pass;
}

Outcome criterion3_key_spaces(const Context&, std::string& detail) {
    auto enumerate = [](int code, int num_types, Mode mode) {
        const int k = graphlet_size(code);
        std::set<std::array<int, 4>> keys;
        std::vector<int> raw(k, 1);
        while (true) {
            keys.insert((mode == Mode::Typed ? canonicalize_typed(code, raw)
                                             : canonicalize_position_aware(code, raw))
                            .types);
            int slot = k - 1;
            while (slot >= 0 && raw[slot] == num_types) raw[slot--] = 1;
            if (slot < 0) break;
            ++raw[slot];
        }
        return keys;
    };
    if (count_possible_typed(3, 7) != 84 || count_possible_typed(4, 7) != 210) {
        detail = "closed forms disagree with Table values";
        return Outcome::Fail;
    }
    for (int code = 0; code <= orbit::kMax; ++code) {
        const int k = graphlet_size(code);
        const Count typed = static_cast<Count>(enumerate(code, 7, Mode::Typed).size());
        if (typed != count_possible_typed(k, 7)) {
            detail = "typed key space of code " + std::to_string(code) + " has " +
                     std::to_string(typed) + " keys";
            return Outcome::Fail;
        }
        const Count pa = static_cast<Count>(enumerate(code, 7, Mode::PositionAware).size());
        if (pa > count_possible_position_aware(k, 7)) {
            detail = "position-aware key space exceeds L^K";
            return Outcome::Fail;
        }
    }
    detail = "K=3 gives 84, K=4 gives 210 by exhaustive generation; pa spaces within L^K";
    return Outcome::Pass;
}

Outcome criterion4_untyped_collapse(const Context& ctx, std::string& detail) {
    for (const TestGraph& tg : ctx.graphs) {
        const HeteroGraph& g = tg.graph;
        std::vector<std::pair<RawId, RawId>> edges;
        std::vector<std::pair<RawId, int>> flat;
        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            const EdgeId id = g.edge(e);
            edges.emplace_back(g.original_id(id.u), g.original_id(id.v));
        }
        for (NodeId v = 0; v < g.num_nodes(); ++v) flat.emplace_back(g.original_id(v), 1);
        const HeteroGraph untyped_graph = HeteroGraph::build(edges, flat, 1);

        auto per_orbit = [](const LocalCountTable& t) {
            std::map<std::pair<RawId, RawId>, std::map<int, Count>> out;
            for (EdgeIndex e = 0; e < t.num_edges(); ++e)
                for (const CountEntry& entry : t.entries[e])
                    out[t.endpoints[e]][decode(entry.hash, t.num_types, t.mode).code] +=
                        entry.count;
            return out;
        };
        if (per_orbit(count_all(g, Mode::Typed, 1)) !=
            per_orbit(count_all(untyped_graph, Mode::Typed, 1))) {
            detail = tg.name + ": typed sums differ from the untyped run";
            return Outcome::Fail;
        }
    }
    detail = "typed counts collapse to untyped counts on all graphs, exact";
    return Outcome::Pass;
}

Outcome criterion5_pa_merge(const Context& ctx, std::string& detail) {
    for (const TestGraph& tg : ctx.graphs) {
        const LocalCountTable typed = count_all(tg.graph, Mode::Typed, 1);
        const LocalCountTable pa = count_all(tg.graph, Mode::PositionAware, 1);
        for (EdgeIndex e = 0; e < pa.num_edges(); ++e) {
            std::map<Hash, Count> collapsed, expected;
            for (const CountEntry& entry : pa.entries[e]) {
                const GraphletKey key = decode(entry.hash, pa.num_types, pa.mode);
                std::vector<int> types(key.types.begin(),
                                       key.types.begin() + graphlet_size(key.code));
                collapsed[encode(canonicalize_typed(key.code, types), pa.num_types)] +=
                    entry.count;
            }
            for (const CountEntry& entry : typed.entries[e]) expected[entry.hash] = entry.count;
            if (collapsed != expected) {
                detail = tg.name + ": merge mismatch";
                return Outcome::Fail;
            }
        }
    }
    detail = "multiset collapse of pa output equals typed output on all graphs";
    return Outcome::Pass;
}

Outcome criterion6_structural_identities(const Context& ctx, std::string& detail) {
    for (const TestGraph& tg : ctx.graphs) {
        const HeteroGraph& g = tg.graph;
        EdgeWorkspace ws(g, Mode::Typed);
        for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
            const EdgeId id = g.edge(e);
            compute_typed_sets(g, id, ws);
            Count tri = 0, si = 0, sj = 0;
            for (int t = 1; t <= g.num_types(); ++t) {
                tri += ws.tri_cnt[t];
                si += ws.si_cnt[t];
                sj += ws.sj_cnt[t];
            }
            const bool partition = tri == static_cast<Count>(ws.tri.size()) &&
                                   si == static_cast<Count>(ws.star_i.size()) &&
                                   sj == static_cast<Count>(ws.star_j.size());
            const bool degree_identity =
                g.degree(id.u) + g.degree(id.v) == 2 * tri + si + sj + 2;
            ws.reset();
            if (!partition || !degree_identity) {
                detail = tg.name + ": identity failed on an edge";
                return Outcome::Fail;
            }
        }
    }
    detail = "degree identity and typed partitions hold on every edge";
    return Outcome::Pass;
}

Outcome criterion7_determinism(const Context&, std::string& detail) {
    const RawId n = 5000;
    const HeteroGraph g = build_typed(gen_er(n, 0.002, 99), n, 5, 100);
    std::string reference;
    for (int threads : {1, 2, 8}) {
        std::ostringstream counts, lookup;
        write_counts(count_all(g, Mode::Typed, threads), counts, lookup);
        const std::string bytes = counts.str() + "\x1f" + lookup.str();
        if (threads == 1)
            reference = bytes;
        else if (bytes != reference) {
            detail = "output bytes differ at " + std::to_string(threads) + " threads";
            return Outcome::Fail;
        }
    }
    detail = "tgc bytes identical for 1, 2 and 8 threads";
    return Outcome::Pass;
}

Outcome criterion8_scaling(const Context& ctx, std::string& detail) {
    if (ctx.quick) {
        detail = "skipped via --quick";
        return Outcome::Skip;
    }
    const int workers = hardware_workers();
    auto run = [&](RawId n) {
        const double p = 10.0 / static_cast<double>(n - 1);
        const HeteroGraph g = build_typed(gen_er(n, p, 7), n, 5, 8);
        const auto start = std::chrono::steady_clock::now();
        const LocalCountTable t = count_all(g, Mode::Typed, workers);
        const auto stop = std::chrono::steady_clock::now();
        (void)t;
        return std::chrono::duration<double>(stop - start).count();
    };
    double t10 = 1e9;
    for (int rep = 0; rep < 3; ++rep) t10 = std::min(t10, run(10000));
    const double t30 = run(30000);
    const double t100 = run(100000);
    const double ratio = t100 / std::max(t10, 1e-3);
    std::ostringstream os;
    os << "t(10k)=" << t10 << "s t(30k)=" << t30 << "s t(100k)=" << t100 << "s ratio="
       << ratio << " (workers=" << workers << ")";
    detail = os.str();
    if (ratio >= 25.0 || t100 >= 300.0) return Outcome::Fail;
    return Outcome::Pass;
}

Outcome criterion9_datasets(const Context& ctx, std::string& detail) {
    namespace fs = std::filesystem;
    auto have = [&](const std::string& base) {
        return !ctx.data_dir.empty() && fs::exists(fs::path(ctx.data_dir) / (base + ".edges")) &&
               fs::exists(fs::path(ctx.data_dir) / (base + ".types"));
    };
    auto path = [&](const std::string& name) {
        return (fs::path(ctx.data_dir) / name).string();
    };
    bool any = false;
    std::ostringstream report;

    auto triangle_keys = [](const HeteroGraph& g) {
        const GlobalCountTable global =
            global_counts(orbits_to_graphlets(count_all(g, Mode::Typed, hardware_workers())));
        std::vector<std::pair<std::array<int, 4>, Count>> keys;
        for (const CountEntry& entry : global.entries) {
            const GraphletKey key = decode(entry.hash, global.num_types, global.mode);
            if (key.code == shape::kTriangle) keys.emplace_back(key.types, entry.count);
        }
        return keys;
    };

    if (have("cora")) {
        any = true;
        const LoadedGraph lg = load_graph(path("cora.edges"), path("cora.types"));
        const auto keys = triangle_keys(lg.graph);
        if (lg.graph.num_types() != 7 || static_cast<int>(keys.size()) != 49) {
            detail = "cora: expected 49 distinct typed triangles of 84, got " +
                     std::to_string(keys.size()) + " (L=" +
                     std::to_string(lg.graph.num_types()) + ")";
            return Outcome::Fail;
        }
        report << "cora 49/84 ";
    }
    if (have("citeseer")) {
        any = true;
        const LoadedGraph lg = load_graph(path("citeseer.edges"), path("citeseer.types"));
        const auto keys = triangle_keys(lg.graph);
        if (lg.graph.num_types() != 6 || static_cast<int>(keys.size()) != 40) {
            detail = "citeseer: expected 40 distinct typed triangles of 56, got " +
                     std::to_string(keys.size());
            return Outcome::Fail;
        }
        report << "citeseer 40/56 ";
    }
    if (have("pol-retweet")) {
        any = true;
        const LoadedGraph lg = load_graph(path("pol-retweet.edges"), path("pol-retweet.types"));
        const auto keys = triangle_keys(lg.graph);
        Count total = 0;
        std::map<std::array<int, 4>, Count> by_key;
        for (const auto& [types, count] : keys) {
            total += count;
            by_key[types] = count;
        }
        const std::array<double, 4> expect{0.608, 0.003, 0.001, 0.388};
        const std::array<std::array<int, 4>, 4> order{{{1, 1, 1, 0}, {1, 1, 2, 0},
                                                       {1, 2, 2, 0}, {2, 2, 2, 0}}};
        if (total != 24815) {
            detail = "pol-retweet: expected 24815 triangles, got " + std::to_string(total);
            return Outcome::Fail;
        }
        for (int k = 0; k < 4; ++k) {
            const double prop = static_cast<double>(by_key[order[k]]) / total;
            if (std::abs(prop - expect[k]) > 0.002) {
                detail = "pol-retweet: proportion " + std::to_string(k) + " is " +
                         std::to_string(prop);
                return Outcome::Fail;
            }
        }
        report << "pol-retweet proportions within 0.002 ";
    }
    if (!any) {
        detail = "dataset files not present under --data-dir; skipped cleanly";
        return Outcome::Skip;
    }
    detail = report.str();
    return Outcome::Pass;
}

Outcome criterion10_embedding(const Context&, std::string& detail) {
    struct Case {
        std::string name;
        HeteroGraph graph;
        Hash key;
        int dim;
    };
    std::vector<Case> cases;
    cases.push_back({"g1-triangle",
                     HeteroGraph::build({{1, 2}, {1, 3}, {2, 3}, {3, 4}},
                                        {{1, 1}, {2, 1}, {3, 2}, {4, 2}}),
                     21120, 2});
    {
        std::vector<std::pair<RawId, RawId>> edges{{0, 1}, {0, 2}, {1, 2}, {3, 4},
                                                   {3, 5}, {4, 5}, {2, 3}};
        std::vector<std::pair<RawId, int>> types;
        for (RawId v = 0; v < 6; ++v) types.emplace_back(v, 1 + static_cast<int>(v % 2));
        cases.push_back({"two-triangles-bridge", HeteroGraph::build(edges, types, 2), 0, 2});
    }
    {
        const RawId n = 2200;
        std::vector<std::pair<RawId, RawId>> edges;
        std::vector<std::pair<RawId, int>> types;
        for (RawId v = 0; v < n; ++v) {
            types.emplace_back(v, 1);
            if (v + 1 < n) edges.emplace_back(v, v + 1);
            if (v + 2 < n) edges.emplace_back(v, v + 2);
        }
        cases.push_back({"squared-path", HeteroGraph::build(edges, types, 1), 21110, 3});
    }

    for (Case& c : cases) {
        const LocalCountTable table =
            orbits_to_graphlets(count_all(c.graph, Mode::Typed, hardware_workers()));
        Hash key = c.key;
        if (key == 0) {
            // pick the most frequent triangle key present
            std::map<Hash, Count> totals;
            for (const auto& list : table.entries)
                for (const CountEntry& entry : list)
                    if (decode(entry.hash, table.num_types, table.mode).code ==
                        shape::kTriangle)
                        totals[entry.hash] += entry.count;
            key = totals.begin()->first;
        }
        const MotifWeightedGraph mwg = motif_weighted_graph(c.graph, table, key);
        const EmbedResult result = embed(mwg, c.dim);
        for (const ComponentSpectrum& spec : result.spectra) {
            if (spec.eigenvalues.empty() || spec.eigenvalues[0] > 1e-10) {
                detail = c.name + ": smallest eigenvalue above 1e-10";
                return Outcome::Fail;
            }
            for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
                if (spec.residuals[k] > 1e-8) {
                    detail = c.name + ": residual " + std::to_string(spec.residuals[k]);
                    return Outcome::Fail;
                }
                if (spec.eigenvalues[k] < -1e-9 || spec.eigenvalues[k] > 2.0 + 1e-9) {
                    detail = c.name + ": eigenvalue out of [0,2]";
                    return Outcome::Fail;
                }
                if (k > 0 && spec.eigenvalues[k] < spec.eigenvalues[k - 1]) {
                    detail = c.name + ": eigenvalues not sorted";
                    return Outcome::Fail;
                }
            }
        }
        for (NodeId v = 0; v < c.graph.num_nodes(); ++v) {
            double norm2 = 0.0;
            for (int d = 0; d < c.dim; ++d)
                norm2 += result.matrix.at(v, d) * result.matrix.at(v, d);
            const double norm = std::sqrt(norm2);
            if (mwg.isolated(v)) {
                if (norm != 0.0) {
                    detail = c.name + ": isolated node has a nonzero row";
                    return Outcome::Fail;
                }
            } else if (std::abs(norm - 1.0) > 1e-12) {
                detail = c.name + ": row norm " + std::to_string(norm);
                return Outcome::Fail;
            }
        }
    }
    detail = "residuals <= 1e-8, lambda_min <= 1e-10, spectrum in [0,2], unit rows";
    return Outcome::Pass;
}

}  // namespace

int main(int argc, char** argv) {
    Context ctx;
    for (int a = 1; a < argc; ++a) {
        const std::string arg = argv[a];
        if (arg == "--data-dir" && a + 1 < argc)
            ctx.data_dir = argv[++a];
        else if (arg == "--quick")
            ctx.quick = true;
    }
    std::cerr << "building the 200-graph acceptance set...\n";
    ctx.graphs = acceptance_graphs();

    struct Entry {
        int id;
        std::string name;
        std::function<Outcome(const Context&, std::string&)> run;
    };
    const std::vector<Entry> criteria = {
        {1, "oracle equivalence on 200 seeded graphs", criterion1_oracle_equivalence},
        {2, "G1 fixture reproduced exactly", criterion2_g1_fixture},
        {3, "enumerative key-space bounds", criterion3_key_spaces},
        {4, "untyped collapse", criterion4_untyped_collapse},
        {5, "position-aware to typed merge", criterion5_pa_merge},
        {6, "structural identities on every edge", criterion6_structural_identities},
        {7, "byte determinism under 1/2/8 threads", criterion7_determinism},
        {8, "scaling smoke at average degree 10", criterion8_scaling},
        {9, "dataset reproduction (optional)", criterion9_datasets},
        {10, "embedding spectral guarantees", criterion10_embedding},
    };

    int failures = 0;
    for (const Entry& entry : criteria) {
        std::string detail;
        Outcome outcome;
        try {
            outcome = entry.run(ctx, detail);
        } catch (const std::exception& e) {
            outcome = Outcome::Fail;
            detail = std::string("exception: ") + e.what();
        }
        const char* tag = outcome == Outcome::Pass ? "[PASS]"
                          : outcome == Outcome::Fail ? "[FAIL]" : "[SKIP]";
        std::cout << tag << " criterion " << entry.id << ": " << entry.name;
        if (!detail.empty()) std::cout << " -- " << detail;
        std::cout << std::endl;
        if (outcome == Outcome::Fail) ++failures;
    }
    return failures;
}
