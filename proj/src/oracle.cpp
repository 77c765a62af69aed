#include "tgc/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <unordered_map>

#include "tgc/keys.hpp"

namespace tgc {

namespace {

int popcount8(std::uint8_t m) { return std::popcount(static_cast<unsigned>(m)); }

bool connected(std::span<const std::uint8_t> masks) {
    const int k = static_cast<int>(masks.size());
    std::uint8_t reached = 1, frontier = 1;
    while (frontier) {
        std::uint8_t next = 0;
        for (int x = 0; x < k; ++x)
            if (frontier & (1u << x)) next |= masks[x];
        frontier = next & static_cast<std::uint8_t>(~reached);
        reached |= next;
    }
    return reached == (1u << k) - 1;
}

// Local indices of instance nodes with the given degree.
template <typename Pred>
int find_node(std::span<const std::uint8_t> masks, Pred&& pred, int skip = -1) {
    for (int x = 0; x < static_cast<int>(masks.size()); ++x)
        if (x != skip && pred(x)) return x;
    return -1;
}

struct PerEdgeEmitter {
    const HeteroGraph& g;
    Mode mode;
    std::vector<std::vector<CountEntry>>& out;
    const std::unordered_map<std::uint64_t, EdgeIndex>& edge_index;

    void emit(NodeId a, NodeId b, int orbit_code, std::span<const int> roles) const {
        if (a > b) std::swap(a, b);
        const auto it = edge_index.find(static_cast<std::uint64_t>(a) *
                                            static_cast<std::uint64_t>(g.num_nodes()) +
                                        static_cast<std::uint64_t>(b));
        const GraphletKey key = mode == Mode::Typed
                                    ? canonicalize_typed(orbit_code, roles)
                                    : canonicalize_position_aware(orbit_code, roles);
        out[it->second].push_back({encode(key, g.num_types()), 1});
    }
};

}  // namespace

int classify_shape(std::span<const std::uint8_t> adj_masks) {
    const int k = static_cast<int>(adj_masks.size());
    if (k < 2 || k > 4) throw DataError("classify_shape expects 2..4 nodes");
    if (!connected(adj_masks)) throw DataError("subgraph is disconnected");
    int edges = 0;
    std::array<int, 4> deg{};
    for (int x = 0; x < k; ++x) {
        deg[x] = popcount8(adj_masks[x]);
        edges += deg[x];
    }
    edges /= 2;
    if (k == 2) return shape::kEdge;
    if (k == 3) return edges == 3 ? shape::kTriangle : shape::kPath3;
    std::sort(deg.begin(), deg.end());
    switch (edges) {
        case 3:
            return deg == std::array<int, 4>{1, 1, 1, 3} ? shape::kStar4 : shape::kPath4;
        case 4:
            return deg == std::array<int, 4>{2, 2, 2, 2} ? shape::kCycle4
                                                         : shape::kTailedTriangle;
        case 5:
            return shape::kChordalCycle;
        case 6:
            return shape::kClique4;
        default:
            throw DataError("unclassifiable 4-node subgraph");
    }
}

LocalCountTable oracle_counts(const HeteroGraph& g, Mode mode, NodeId max_nodes) {
    const NodeId n = g.num_nodes();
    if (n > max_nodes)
        throw DataError("oracle refuses graphs with more than " + std::to_string(max_nodes) +
                        " nodes (got " + std::to_string(n) + ")");

    LocalCountTable table;
    table.num_nodes = n;
    table.num_types = g.num_types();
    table.mode = mode;
    const EdgeIndex m = g.num_edges();
    table.endpoints.resize(m);
    table.entries.resize(m);
    std::unordered_map<std::uint64_t, EdgeIndex> edge_index;
    edge_index.reserve(m * 2);
    for (EdgeIndex e = 0; e < m; ++e) {
        const EdgeId id = g.edge(e);
        table.endpoints[e] = {g.original_id(id.u), g.original_id(id.v)};
        edge_index.emplace(static_cast<std::uint64_t>(id.u) * n + id.v, e);
    }

    std::vector<bool> adj(static_cast<std::size_t>(n) * n, false);
    for (NodeId v = 0; v < n; ++v)
        for (NodeId w : g.neighbors(v)) adj[static_cast<std::size_t>(v) * n + w] = true;
    auto connected_pair = [&](NodeId a, NodeId b) {
        return adj[static_cast<std::size_t>(a) * n + b];
    };

    PerEdgeEmitter emitter{g, mode, table.entries, edge_index};

    // Every instance is handled from scratch: gather the node set, classify by
    // degree sequence, read the roles off the instance, and file one count per
    // contained edge.
    auto handle = [&](std::span<const NodeId> nodes) {
        const int k = static_cast<int>(nodes.size());
        std::array<std::uint8_t, 4> masks{};
        for (int x = 0; x < k; ++x)
            for (int y = 0; y < k; ++y)
                if (x != y && connected_pair(nodes[x], nodes[y]))
                    masks[x] |= static_cast<std::uint8_t>(1u << y);
        if (!connected({masks.data(), static_cast<std::size_t>(k)})) return;
        const int sh = classify_shape({masks.data(), static_cast<std::size_t>(k)});
        std::array<int, 4> ty{};
        std::array<int, 4> deg{};
        for (int x = 0; x < k; ++x) {
            ty[x] = g.type_of(nodes[x]);
            deg[x] = popcount8(masks[x]);
        }
        auto adj_local = [&](int x, int y) { return (masks[x] >> y) & 1u; };
        auto other_neighbor = [&](int x, int not_y) {
            for (int y = 0; y < k; ++y)
                if (y != not_y && adj_local(x, y)) return y;
            return -1;
        };
        auto remaining = [&](int a, int b, int c) {
            for (int y = 0; y < k; ++y)
                if (y != a && y != b && y != c) return y;
            return -1;
        };

        switch (sh) {
            case shape::kEdge: {
                const int roles[2] = {ty[0], ty[1]};
                emitter.emit(nodes[0], nodes[1], orbit::kEdge, roles);
                break;
            }
            case shape::kPath3: {
                const int c = find_node({masks.data(), 3u}, [&](int x) { return deg[x] == 2; });
                const int e1 = (c + 1) % 3, e2 = (c + 2) % 3;
                const int roles[3] = {ty[c], ty[e1], ty[e2]};
                emitter.emit(nodes[c], nodes[e1], orbit::kWedge, roles);
                emitter.emit(nodes[c], nodes[e2], orbit::kWedge, roles);
                break;
            }
            case shape::kTriangle: {
                const int roles[3] = {ty[0], ty[1], ty[2]};
                for (int x = 0; x < 3; ++x)
                    for (int y = x + 1; y < 3; ++y)
                        emitter.emit(nodes[x], nodes[y], orbit::kTriangle, roles);
                break;
            }
            case shape::kPath4: {
                for (int x = 0; x < 4; ++x)
                    for (int y = x + 1; y < 4; ++y) {
                        if (!adj_local(x, y)) continue;
                        if (deg[x] == 1 || deg[y] == 1) {
                            const int e = deg[x] == 1 ? x : y;
                            const int mid = e == x ? y : x;
                            const int fm = other_neighbor(mid, e);
                            const int fe = remaining(e, mid, fm);
                            const int roles[4] = {ty[e], ty[mid], ty[fm], ty[fe]};
                            emitter.emit(nodes[x], nodes[y], orbit::kPathEdge, roles);
                        } else {
                            // center edge: orient by internal node id like the engine
                            int ii = x, jj = y;
                            if (nodes[ii] > nodes[jj]) std::swap(ii, jj);
                            const int kk = other_neighbor(jj, ii);
                            const int rr = other_neighbor(ii, jj);
                            const int roles[4] = {ty[ii], ty[jj], ty[kk], ty[rr]};
                            emitter.emit(nodes[x], nodes[y], orbit::kPathCenter, roles);
                        }
                    }
                break;
            }
            case shape::kStar4: {
                const int c = find_node({masks.data(), 4u}, [&](int x) { return deg[x] == 3; });
                for (int l = 0; l < 4; ++l) {
                    if (l == c) continue;
                    int others[2];
                    int nfound = 0;
                    for (int y = 0; y < 4; ++y)
                        if (y != c && y != l) others[nfound++] = y;
                    const int roles[4] = {ty[c], ty[l], ty[others[0]], ty[others[1]]};
                    emitter.emit(nodes[c], nodes[l], orbit::kStar, roles);
                }
                break;
            }
            case shape::kCycle4: {
                for (int x = 0; x < 4; ++x)
                    for (int y = x + 1; y < 4; ++y) {
                        if (!adj_local(x, y)) continue;
                        int ii = x, jj = y;
                        if (nodes[ii] > nodes[jj]) std::swap(ii, jj);
                        const int kk = other_neighbor(jj, ii);
                        const int rr = other_neighbor(ii, jj);
                        const int roles[4] = {ty[ii], ty[jj], ty[kk], ty[rr]};
                        emitter.emit(nodes[x], nodes[y], orbit::kCycle, roles);
                    }
                break;
            }
            case shape::kTailedTriangle: {
                const int a = find_node({masks.data(), 4u}, [&](int x) { return deg[x] == 3; });
                const int p = find_node({masks.data(), 4u}, [&](int x) { return deg[x] == 1; });
                int tri[2];
                int nfound = 0;
                for (int y = 0; y < 4; ++y)
                    if (y != a && y != p) tri[nfound++] = y;
                {
                    const int roles[4] = {ty[a], ty[p], ty[tri[0]], ty[tri[1]]};
                    emitter.emit(nodes[a], nodes[p], orbit::kTailedTail, roles);
                }
                {
                    const int roles[4] = {ty[tri[0]], ty[tri[1]], ty[a], ty[p]};
                    emitter.emit(nodes[tri[0]], nodes[tri[1]], orbit::kTailedCenter, roles);
                }
                for (int z = 0; z < 2; ++z) {
                    const int c = tri[z], d = tri[1 - z];
                    const int roles[4] = {ty[a], ty[c], ty[d], ty[p]};
                    emitter.emit(nodes[a], nodes[c], orbit::kTailedTriEdge, roles);
                }
                break;
            }
            case shape::kChordalCycle: {
                int hi[2], lo[2];
                int nh = 0, nl = 0;
                for (int x = 0; x < 4; ++x)
                    (deg[x] == 3 ? hi[nh++] : lo[nl++]) = x;
                {
                    const int roles[4] = {ty[hi[0]], ty[hi[1]], ty[lo[0]], ty[lo[1]]};
                    emitter.emit(nodes[hi[0]], nodes[hi[1]], orbit::kChordalCenter, roles);
                }
                for (int x : lo)
                    for (int y : hi) {
                        const int oy = y == hi[0] ? hi[1] : hi[0];
                        const int ox = x == lo[0] ? lo[1] : lo[0];
                        const int roles[4] = {ty[x], ty[y], ty[oy], ty[ox]};
                        emitter.emit(nodes[x], nodes[y], orbit::kChordalEdge, roles);
                    }
                break;
            }
            case shape::kClique4: {
                for (int x = 0; x < 4; ++x)
                    for (int y = x + 1; y < 4; ++y) {
                        int others[2];
                        int nfound = 0;
                        for (int z = 0; z < 4; ++z)
                            if (z != x && z != y) others[nfound++] = z;
                        const int roles[4] = {ty[x], ty[y], ty[others[0]], ty[others[1]]};
                        emitter.emit(nodes[x], nodes[y], orbit::kClique, roles);
                    }
                break;
            }
            default:
                throw InternalError("unhandled shape in oracle");
        }
    };

    for (EdgeIndex e = 0; e < m; ++e) {
        const EdgeId id = g.edge(e);
        const NodeId pair[2] = {id.u, id.v};
        handle({pair, 2});
    }
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b)
            for (NodeId c = b + 1; c < n; ++c) {
                const NodeId trio[3] = {a, b, c};
                handle({trio, 3});
            }
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b)
            for (NodeId c = b + 1; c < n; ++c)
                for (NodeId d = c + 1; d < n; ++d) {
                    const NodeId quad[4] = {a, b, c, d};
                    handle({quad, 4});
                }

    for (auto& list : table.entries) {
        std::sort(list.begin(), list.end(),
                  [](const CountEntry& a, const CountEntry& b) { return a.hash < b.hash; });
        std::vector<CountEntry> packed;
        packed.reserve(list.size());
        for (const CountEntry& entry : list) {
            if (!packed.empty() && packed.back().hash == entry.hash)
                packed.back().count += entry.count;
            else
                packed.push_back(entry);
        }
        list = std::move(packed);
    }
    return table;
}

}  // namespace tgc
