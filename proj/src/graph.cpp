#include "tgc/graph.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>

namespace tgc {

namespace {

struct NormEdge {
    NodeId u, v;     // u < v
    int etype;
    bool swapped;    // input line had the larger endpoint first
    std::int64_t pos;  // input order, keeps dedup stable

    bool operator<(const NormEdge& o) const {
        if (u != o.u) return u < o.u;
        if (v != o.v) return v < o.v;
        return pos < o.pos;
    }
};

bool parse_fields(const std::string& line, std::array<std::int64_t, 3>& out, int& n) {
    n = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
        while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
        if (p == end) break;
        if (n == 3) return false;
        std::int64_t value = 0;
        auto [next, ec] = std::from_chars(p, end, value);
        if (ec != std::errc{} || next == p) return false;
        out[n++] = value;
        p = next;
    }
    return true;
}

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        return c == '#' || c == '%';
    }
    return true;
}

}  // namespace

HeteroGraph HeteroGraph::build(const std::vector<std::pair<RawId, RawId>>& edges,
                               const std::vector<std::pair<RawId, int>>& node_types,
                               int num_types, const std::vector<int>& edge_types,
                               LoadReport* report) {
    if (!edge_types.empty() && edge_types.size() != edges.size())
        throw DataError("edge type list does not match the edge list");

    LoadReport local;
    LoadReport& rep = report ? *report : local;
    rep = LoadReport{};

    // Densify node ids: sorted distinct raw ids define the internal range.
    std::vector<RawId> ids;
    ids.reserve(edges.size() * 2);
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0) throw DataError("negative node id in edge list");
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.empty()) throw DataError("graph has no edges");

    HeteroGraph g;
    g.original_id_ = std::move(ids);
    const NodeId n = static_cast<NodeId>(g.original_id_.size());
    auto dense = [&](RawId raw) {
        auto it = std::lower_bound(g.original_id_.begin(), g.original_id_.end(), raw);
        return static_cast<NodeId>(it - g.original_id_.begin());
    };

    // Node types.
    g.node_type_.assign(n, 0);
    int max_type = 0;
    for (const auto& [raw, t] : node_types) {
        if (t < 1) throw DataError("type id " + std::to_string(t) + " for node " +
                                   std::to_string(raw) + " must be >= 1");
        auto it = std::lower_bound(g.original_id_.begin(), g.original_id_.end(), raw);
        if (it == g.original_id_.end() || *it != raw) {
            ++rep.ignored_type_entries;
            continue;
        }
        g.node_type_[it - g.original_id_.begin()] = t;
        max_type = std::max(max_type, t);
    }
    for (NodeId v = 0; v < n; ++v) {
        if (g.node_type_[v] == 0)
            throw DataError("node " + std::to_string(g.original_id_[v]) + " has no type");
    }
    if (num_types == 0) num_types = max_type;
    if (num_types < max_type)
        throw DataError("declared type count " + std::to_string(num_types) +
                        " is below the max observed type " + std::to_string(max_type));
    g.num_types_ = num_types;
    g.type_histogram_.assign(num_types + 1, 0);
    for (NodeId v = 0; v < n; ++v) ++g.type_histogram_[g.node_type_[v]];

    // Normalize, then drop self-loops and duplicates.
    std::vector<NormEdge> norm;
    norm.reserve(edges.size());
    for (std::size_t idx = 0; idx < edges.size(); ++idx) {
        const RawId a = edges[idx].first, b = edges[idx].second;
        if (a == b) {
            ++rep.self_loops;
            continue;
        }
        NodeId u = dense(a), v = dense(b);
        const bool swapped = u > v;
        if (swapped) std::swap(u, v);
        norm.push_back({u, v, edge_types.empty() ? 0 : edge_types[idx],
                        swapped, static_cast<std::int64_t>(idx)});
    }
    std::sort(norm.begin(), norm.end());
    std::vector<NormEdge> kept;
    kept.reserve(norm.size());
    for (const auto& e : norm) {
        if (!kept.empty() && kept.back().u == e.u && kept.back().v == e.v) {
            if (e.swapped != kept.back().swapped)
                ++rep.reversed_duplicate_edges;
            else
                ++rep.duplicate_edges;
            continue;
        }
        kept.push_back(e);
    }
    if (kept.empty()) throw DataError("graph has no edges");

    // Adjacency grouped by (neighbor type, neighbor id).
    g.adj_ptr_.assign(n + 1, 0);
    for (const auto& e : kept) {
        ++g.adj_ptr_[e.u + 1];
        ++g.adj_ptr_[e.v + 1];
    }
    for (NodeId v = 0; v < n; ++v) g.adj_ptr_[v + 1] += g.adj_ptr_[v];
    g.adj_.assign(g.adj_ptr_[n], 0);
    {
        std::vector<std::int64_t> fill(g.adj_ptr_.begin(), g.adj_ptr_.end() - 1);
        for (const auto& e : kept) {
            g.adj_[fill[e.u]++] = e.v;
            g.adj_[fill[e.v]++] = e.u;
        }
    }
    const int L = num_types;
    for (NodeId v = 0; v < n; ++v) {
        auto* first = g.adj_.data() + g.adj_ptr_[v];
        auto* last = g.adj_.data() + g.adj_ptr_[v + 1];
        std::sort(first, last, [&](NodeId x, NodeId y) {
            const int tx = g.node_type_[x], ty = g.node_type_[y];
            return tx != ty ? tx < ty : x < y;
        });
    }
    g.typed_start_.assign(static_cast<std::size_t>(n) * L, 0);
    for (NodeId v = 0; v < n; ++v) {
        std::int64_t pos = g.adj_ptr_[v];
        for (int t = 1; t <= L; ++t) {
            g.typed_start_[static_cast<std::size_t>(v) * L + (t - 1)] = pos;
            while (pos < g.adj_ptr_[v + 1] && g.node_type_[g.adj_[pos]] == t) ++pos;
        }
    }

    // Stable edge enumeration: ascending u, neighbors in adjacency order.
    g.edge_u_.reserve(kept.size());
    g.edge_v_.reserve(kept.size());
    for (NodeId v = 0; v < n; ++v) {
        for (std::int64_t p = g.adj_ptr_[v]; p < g.adj_ptr_[v + 1]; ++p) {
            const NodeId w = g.adj_[p];
            if (w > v) {
                g.edge_u_.push_back(v);
                g.edge_v_.push_back(w);
            }
        }
    }
    if (!edge_types.empty()) {
        g.edge_type_.resize(g.edge_u_.size());
        for (std::size_t e = 0; e < g.edge_u_.size(); ++e) {
            NormEdge probe{g.edge_u_[e], g.edge_v_[e], 0, false, -1};
            auto it = std::lower_bound(kept.begin(), kept.end(), probe);
            g.edge_type_[e] = it->etype;
        }
    }
    return g;
}

Count HeteroGraph::typed_degree(NodeId v, int t) const {
    return static_cast<Count>(typed_neighbors(v, t).size());
}

std::span<const NodeId> HeteroGraph::typed_neighbors(NodeId v, int t) const {
    if (v < 0 || v >= num_nodes())
        throw DataError("node id " + std::to_string(v) + " out of range");
    if (t < 1 || t > num_types_)
        throw DataError("type id " + std::to_string(t) + " out of range");
    const std::int64_t begin = typed_start_[static_cast<std::size_t>(v) * num_types_ + (t - 1)];
    const std::int64_t end = t == num_types_
                                 ? adj_ptr_[v + 1]
                                 : typed_start_[static_cast<std::size_t>(v) * num_types_ + t];
    return {adj_.data() + begin, adj_.data() + end};
}

std::optional<NodeId> HeteroGraph::internal_id(RawId raw) const {
    auto it = std::lower_bound(original_id_.begin(), original_id_.end(), raw);
    if (it == original_id_.end() || *it != raw) return std::nullopt;
    return static_cast<NodeId>(it - original_id_.begin());
}

LoadedGraph load_graph(const std::string& edge_path, const std::string& type_path,
                       int num_types) {
    std::ifstream ef(edge_path);
    if (!ef) throw DataError("cannot open edge file: " + edge_path);
    std::vector<std::pair<RawId, RawId>> edges;
    std::vector<int> edge_types;
    bool any_etype = false;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(ef, line)) {
        ++lineno;
        if (is_comment_or_blank(line)) continue;
        std::array<std::int64_t, 3> f{};
        int nf = 0;
        if (!parse_fields(line, f, nf) || nf < 2)
            throw ParseError(edge_path + ":" + std::to_string(lineno) + ": malformed edge line");
        edges.emplace_back(f[0], f[1]);
        if (nf == 3) {
            any_etype = true;
            edge_types.resize(edges.size(), 0);
            edge_types.back() = static_cast<int>(f[2]);
        } else if (any_etype) {
            edge_types.resize(edges.size(), 0);
        }
    }

    std::ifstream tf(type_path);
    if (!tf) throw DataError("cannot open type file: " + type_path);
    std::vector<std::pair<RawId, int>> node_types;
    lineno = 0;
    while (std::getline(tf, line)) {
        ++lineno;
        if (is_comment_or_blank(line)) continue;
        std::array<std::int64_t, 3> f{};
        int nf = 0;
        if (!parse_fields(line, f, nf) || nf != 2)
            throw ParseError(type_path + ":" + std::to_string(lineno) + ": malformed type line");
        node_types.emplace_back(f[0], static_cast<int>(f[1]));
    }

    LoadReport rep;
    HeteroGraph graph = HeteroGraph::build(
        edges, node_types, num_types, any_etype ? edge_types : std::vector<int>{}, &rep);
    return {std::move(graph), rep};
}

void write_graph(const HeteroGraph& g, const std::string& edge_path,
                 const std::string& type_path) {
    std::ofstream ef(edge_path);
    if (!ef) throw DataError("cannot open for writing: " + edge_path);
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
        const EdgeId id = g.edge(e);
        ef << g.original_id(id.u) << ' ' << g.original_id(id.v);
        if (g.has_edge_types()) ef << ' ' << g.edge_type(e);
        ef << '\n';
    }
    if (!ef) throw DataError("write failed: " + edge_path);

    std::ofstream tf(type_path);
    if (!tf) throw DataError("cannot open for writing: " + type_path);
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        tf << g.original_id(v) << ' ' << g.type_of(v) << '\n';
    if (!tf) throw DataError("write failed: " + type_path);
}

std::vector<std::string> validate(const HeteroGraph& g) {
    std::vector<std::string> bad;
    const NodeId n = g.num_nodes();
    const int L = g.num_types();
    std::vector<Count> hist(L + 1, 0);
    for (NodeId v = 0; v < n; ++v) {
        const int t = g.type_of(v);
        if (t < 1 || t > L) {
            bad.push_back("node " + std::to_string(v) + " has out-of-range type " +
                          std::to_string(t));
            continue;
        }
        ++hist[t];
    }
    if (hist != g.type_histogram())
        bad.push_back("type histogram does not match node types");

    Count degree_sum = 0;
    for (NodeId v = 0; v < n && bad.size() < 100; ++v) {
        Count typed_sum = 0;
        for (int t = 1; t <= L; ++t) {
            auto slice = g.typed_neighbors(v, t);
            typed_sum += static_cast<Count>(slice.size());
            NodeId prev = -1;
            for (NodeId w : slice) {
                if (w == v) bad.push_back("self-loop at node " + std::to_string(v));
                if (w <= prev)
                    bad.push_back("neighbor slice of node " + std::to_string(v) +
                                  " type " + std::to_string(t) + " is not strictly increasing");
                prev = w;
                if (w < 0 || w >= n) {
                    bad.push_back("neighbor out of range at node " + std::to_string(v));
                    continue;
                }
                if (g.type_of(w) != t)
                    bad.push_back("neighbor " + std::to_string(w) + " filed under wrong type");
                const int tv = g.type_of(v);
                if (tv >= 1 && tv <= L) {
                    auto back = g.typed_neighbors(w, tv);
                    if (!std::binary_search(back.begin(), back.end(), v))
                        bad.push_back("asymmetric adjacency: " + std::to_string(v) + " -> " +
                                      std::to_string(w) + " has no reverse");
                }
            }
        }
        if (typed_sum != g.degree(v))
            bad.push_back("typed slices of node " + std::to_string(v) +
                          " do not partition its neighborhood");
        degree_sum += g.degree(v);
    }
    if (degree_sum != 2 * g.num_edges())
        bad.push_back("degree sum does not equal twice the edge count");
    return bad;
}

}  // namespace tgc
