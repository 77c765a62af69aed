#include "tgc/counting.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tgc {

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

}  // namespace

SparseAccumulator::SparseAccumulator(std::size_t initial_capacity) {
    std::size_t cap = 64;
    while (cap < initial_capacity) cap <<= 1;
    slots_.resize(cap);
    mask_ = cap - 1;
}

void SparseAccumulator::clear() {
    ++epoch_;
    touched_.clear();
    if (epoch_ == 0) {  // wrapped: stamp everything stale
        for (Slot& s : slots_) s.epoch = 0;
        epoch_ = 1;
    }
}

std::size_t SparseAccumulator::probe_(Hash key) const {
    std::size_t idx = mix64(key) & mask_;
    while (slots_[idx].epoch == epoch_ && slots_[idx].key != key) idx = (idx + 1) & mask_;
    return idx;
}

void SparseAccumulator::grow_() {
    std::vector<Slot> old = std::move(slots_);
    std::vector<std::uint32_t> old_touched = std::move(touched_);
    slots_.assign(old.size() * 2, Slot{});
    mask_ = slots_.size() - 1;
    touched_.clear();
    for (std::uint32_t idx : old_touched) {
        const Slot& s = old[idx];
        std::size_t at = probe_(s.key);
        slots_[at] = s;
        touched_.push_back(static_cast<std::uint32_t>(at));
    }
}

void SparseAccumulator::add(Hash key, Count delta, Hash aux) {
    if (touched_.size() * 2 >= slots_.size()) grow_();
    std::size_t idx = probe_(key);
    Slot& s = slots_[idx];
    if (s.epoch != epoch_) {
        s.key = key;
        s.aux = aux;
        s.value = 0;
        s.epoch = epoch_;
        touched_.push_back(static_cast<std::uint32_t>(idx));
    } else if (aux != 0 && s.aux != aux) {
        throw InternalError("accumulator aux mismatch: inconsistent key canonicalization");
    }
    s.value += delta;
}

Count SparseAccumulator::get(Hash key) const {
    const std::size_t idx = probe_(key);
    return slots_[idx].epoch == epoch_ ? slots_[idx].value : 0;
}

EdgeWorkspace::EdgeWorkspace(const HeteroGraph& g, Mode mode)
    : encoder_(g.num_types(), mode), marks_(g.num_nodes(), 0) {
    const int l = g.num_types();
    tri_cnt.assign(l + 1, 0);
    si_cnt.assign(l + 1, 0);
    sj_cnt.assign(l + 1, 0);
}

void EdgeWorkspace::reset() {
    for (int t : tri_types) tri_cnt[t] = 0;
    for (int t : si_types) si_cnt[t] = 0;
    for (int t : sj_types) sj_cnt[t] = 0;
    tri_types.clear();
    si_types.clear();
    sj_types.clear();
    tri.clear();
    star_i.clear();
    star_j.clear();
    count_acc.clear();
    ++epoch_;
    if (epoch_ >= (1u << 30)) {  // keep (epoch << 2) representable
        std::fill(marks_.begin(), marks_.end(), 0);
        epoch_ = 1;
    }
}

void compute_typed_sets(const HeteroGraph& g, const EdgeId& e, EdgeWorkspace& w) {
    const NodeId i = e.u, j = e.v;
    w.node_i = i;
    w.node_j = j;
    w.type_i = g.type_of(i);
    w.type_j = g.type_of(j);

    // Mark Gamma_j, then classify Gamma_i against it, then sweep Gamma_j again
    // to collect what is still a pure j-star.
    for (NodeId v : g.neighbors(j)) {
        if (v == i) continue;
        w.mark_(v, EdgeWorkspace::Rel::StarJ);
    }
    for (NodeId v : g.neighbors(i)) {
        if (v == j) continue;
        const int t = g.type_of(v);
        if (w.relation(v) == EdgeWorkspace::Rel::StarJ) {
            w.mark_(v, EdgeWorkspace::Rel::Tri);
            w.tri.push_back(v);
            if (w.tri_cnt[t]++ == 0) w.tri_types.push_back(t);
        } else {
            w.mark_(v, EdgeWorkspace::Rel::StarI);
            w.star_i.push_back(v);
            if (w.si_cnt[t]++ == 0) w.si_types.push_back(t);
        }
    }
    for (NodeId v : g.neighbors(j)) {
        if (v == i) continue;
        if (w.relation(v) == EdgeWorkspace::Rel::StarJ) {
            w.star_j.push_back(v);
            const int t = g.type_of(v);
            if (w.sj_cnt[t]++ == 0) w.sj_types.push_back(t);
        }
    }

    // d_i + d_j = 2|T| + |S_i| + |S_j| + 2 with endpoint-excluding sets.
    const Count lhs = g.degree(i) + g.degree(j);
    const Count rhs = 2 * static_cast<Count>(w.tri.size()) +
                      static_cast<Count>(w.star_i.size()) +
                      static_cast<Count>(w.star_j.size()) + 2;
    if (lhs != rhs)
        throw InternalError("degree identity violated on edge (" + std::to_string(i) +
                            "," + std::to_string(j) + ")");

    const KeyEncoder& enc = w.encoder();
    for (int t : w.tri_types)
        w.count_acc.add(enc.triangle_key(w.type_i, w.type_j, t), w.tri_cnt[t]);
    // 3-paths keyed with the star center first; typed keys sort it away,
    // position-aware keys keep the center role.
    for (int t : w.si_types)
        w.count_acc.add(enc.wedge_key(w.type_i, w.type_j, t), w.si_cnt[t]);
    for (int t : w.sj_types)
        w.count_acc.add(enc.wedge_key(w.type_j, w.type_i, t), w.sj_cnt[t]);
}

void count_path_based(const HeteroGraph& g, const EdgeId& e, EdgeWorkspace& w) {
    const NodeId i = e.u, j = e.v;
    const int ti = w.type_i, tj = w.type_j;
    const KeyEncoder& enc = w.encoder();

    for (NodeId wk : w.star_i) {
        const int tk = g.type_of(wk);
        for (NodeId wr : g.neighbors(wk)) {
            if (wr == i || wr == j) continue;
            const auto rel = w.relation(wr);
            if (rel == EdgeWorkspace::Rel::None) {
                // path j-i-wk-wr anchored at its end edge
                w.count_acc.add(enc.quad_key(orbit::kPathEdge, tj, ti, tk, g.type_of(wr)), 1);
            } else if (rel == EdgeWorkspace::Rel::StarI && wr < wk) {
                // triangle {i,wk,wr} with pendant j: apex i
                w.count_acc.add(enc.quad_key(orbit::kTailedTail, ti, tj, tk, g.type_of(wr)), 1);
            }
        }
    }
    for (NodeId wk : w.star_j) {
        const int tk = g.type_of(wk);
        for (NodeId wr : g.neighbors(wk)) {
            if (wr == i || wr == j) continue;
            const auto rel = w.relation(wr);
            if (rel == EdgeWorkspace::Rel::None) {
                w.count_acc.add(enc.quad_key(orbit::kPathEdge, ti, tj, tk, g.type_of(wr)), 1);
            } else if (rel == EdgeWorkspace::Rel::StarJ && wr < wk) {
                w.count_acc.add(enc.quad_key(orbit::kTailedTail, tj, ti, tk, g.type_of(wr)), 1);
            } else if (rel == EdgeWorkspace::Rel::StarI) {
                // 4-cycle i-j-wk-wr
                w.count_acc.add(enc.quad_key(orbit::kCycle, ti, tj, tk, g.type_of(wr)), 1);
            }
        }
    }
}

void count_triangle_based(const HeteroGraph& g, const EdgeId& e, EdgeWorkspace& w) {
    const NodeId i = e.u, j = e.v;
    const int ti = w.type_i, tj = w.type_j;
    const KeyEncoder& enc = w.encoder();

    for (NodeId wk : w.tri) {
        const int tk = g.type_of(wk);
        for (NodeId wr : g.neighbors(wk)) {
            if (wr == i || wr == j) continue;
            switch (w.relation(wr)) {
                case EdgeWorkspace::Rel::Tri:
                    if (wr < wk)
                        w.count_acc.add(enc.quad_key(orbit::kClique, ti, tj, tk, g.type_of(wr)), 1);
                    break;
                case EdgeWorkspace::Rel::StarI:
                    // chordal cycle, chord (i,wk); anchor endpoint i has degree 3
                    w.count_acc.add(enc.quad_key(orbit::kChordalEdge, tj, ti, tk, g.type_of(wr)), 1);
                    break;
                case EdgeWorkspace::Rel::StarJ:
                    w.count_acc.add(enc.quad_key(orbit::kChordalEdge, ti, tj, tk, g.type_of(wr)), 1);
                    break;
                case EdgeWorkspace::Rel::None:
                    // triangle {i,j,wk} with pendant wr on wk
                    w.count_acc.add(enc.quad_key(orbit::kTailedCenter, ti, tj, tk, g.type_of(wr)), 1);
                    break;
            }
        }
    }
}

void derive_constant_time(EdgeWorkspace& w) {
    const int ti = w.type_i, tj = w.type_j;
    const KeyEncoder& enc = w.encoder();
    SparseAccumulator& scratch = w.scratch_;

    // Each family accumulates the unrestricted pair totals under the
    // enumerated (conflicting) orbit's key, remembering the derived orbit's
    // key as aux; equivalent type combinations land on the same slot in both
    // key spaces, so derived = total - enumerated holds per slot.
    auto flush = [&](const char* what) {
        scratch.for_each([&](Hash conflict_key, Count total, Hash derived_key) {
            const Count enumerated = w.count_acc.get(conflict_key);
            const Count derived = total - enumerated;
            if (derived < 0)
                throw InternalError(std::string("negative derived count for ") + what);
            if (derived > 0) w.count_acc.add(derived_key, derived);
        });
        scratch.clear();
    };

    // 4-path center = |S_j^a||S_i^b| - enumerated 4-cycles
    for (int a : w.sj_types)
        for (int b : w.si_types)
            scratch.add(enc.quad_key(orbit::kCycle, ti, tj, a, b), w.sj_cnt[a] * w.si_cnt[b],
                        enc.quad_key(orbit::kPathCenter, ti, tj, a, b));
    flush("4-path center orbit");

    // 4-star = star pairs on one side - enumerated tailed tail-edges
    for (std::size_t x = 0; x < w.si_types.size(); ++x)
        for (std::size_t y = x; y < w.si_types.size(); ++y) {
            const int a = w.si_types[x], b = w.si_types[y];
            const Count total = a == b ? w.si_cnt[a] * (w.si_cnt[a] - 1) / 2
                                       : w.si_cnt[a] * w.si_cnt[b];
            if (total)
                scratch.add(enc.quad_key(orbit::kTailedTail, ti, tj, a, b), total,
                            enc.quad_key(orbit::kStar, ti, tj, a, b));
        }
    for (std::size_t x = 0; x < w.sj_types.size(); ++x)
        for (std::size_t y = x; y < w.sj_types.size(); ++y) {
            const int a = w.sj_types[x], b = w.sj_types[y];
            const Count total = a == b ? w.sj_cnt[a] * (w.sj_cnt[a] - 1) / 2
                                       : w.sj_cnt[a] * w.sj_cnt[b];
            if (total)
                scratch.add(enc.quad_key(orbit::kTailedTail, tj, ti, a, b), total,
                            enc.quad_key(orbit::kStar, tj, ti, a, b));
        }
    flush("4-star");

    // tailed tri-edge = |T^a| * |S^b| per side - enumerated chordal edges
    for (int a : w.tri_types) {
        for (int b : w.si_types)
            scratch.add(enc.quad_key(orbit::kChordalEdge, tj, ti, a, b),
                        w.tri_cnt[a] * w.si_cnt[b],
                        enc.quad_key(orbit::kTailedTriEdge, ti, tj, a, b));
        for (int b : w.sj_types)
            scratch.add(enc.quad_key(orbit::kChordalEdge, ti, tj, a, b),
                        w.tri_cnt[a] * w.sj_cnt[b],
                        enc.quad_key(orbit::kTailedTriEdge, tj, ti, a, b));
    }
    flush("tailed-triangle tri-edge orbit");

    // chordal center = triangle pairs - enumerated 4-cliques
    for (std::size_t x = 0; x < w.tri_types.size(); ++x)
        for (std::size_t y = x; y < w.tri_types.size(); ++y) {
            const int a = w.tri_types[x], b = w.tri_types[y];
            const Count total = a == b ? w.tri_cnt[a] * (w.tri_cnt[a] - 1) / 2
                                       : w.tri_cnt[a] * w.tri_cnt[b];
            if (total)
                scratch.add(enc.quad_key(orbit::kClique, ti, tj, a, b), total,
                            enc.quad_key(orbit::kChordalCenter, ti, tj, a, b));
        }
    flush("chordal-cycle center orbit");
}

EdgeTypedCounts count_edge(const HeteroGraph& g, const EdgeId& e, EdgeWorkspace& w) {
    compute_typed_sets(g, e, w);
    count_path_based(g, e, w);
    count_triangle_based(g, e, w);
    derive_constant_time(w);
    w.count_acc.add(w.encoder().edge_key(w.type_i, w.type_j), 1);

    EdgeTypedCounts out;
    out.edge = e;
    out.entries.reserve(w.count_acc.size());
    w.count_acc.for_each([&](Hash key, Count value, Hash) {
        if (value != 0) out.entries.push_back({key, value});
    });
    std::sort(out.entries.begin(), out.entries.end(),
              [](const CountEntry& a, const CountEntry& b) { return a.hash < b.hash; });
    w.reset();
    return out;
}

LocalCountTable count_all(const HeteroGraph& g, Mode mode, int workers) {
    if (workers < 1) throw DataError("worker count must be >= 1");
    const EdgeIndex m = g.num_edges();
    LocalCountTable table;
    table.num_nodes = g.num_nodes();
    table.num_types = g.num_types();
    table.mode = mode;
    table.endpoints.resize(m);
    table.entries.resize(m);
    for (EdgeIndex e = 0; e < m; ++e) {
        const EdgeId id = g.edge(e);
        table.endpoints[e] = {g.original_id(id.u), g.original_id(id.v)};
    }

#ifdef _OPENMP
#pragma omp parallel num_threads(workers)
    {
        EdgeWorkspace ws(g, mode);
#pragma omp for schedule(dynamic, 64)
        for (EdgeIndex e = 0; e < m; ++e)
            table.entries[e] = count_edge(g, g.edge(e), ws).entries;
    }
#else
    (void)workers;
    EdgeWorkspace ws(g, mode);
    for (EdgeIndex e = 0; e < m; ++e)
        table.entries[e] = count_edge(g, g.edge(e), ws).entries;
#endif
    return table;
}

LocalCountTable orbits_to_graphlets(const LocalCountTable& orbit_table) {
    LocalCountTable out;
    out.num_nodes = orbit_table.num_nodes;
    out.num_types = orbit_table.num_types;
    out.mode = orbit_table.mode;
    out.endpoints = orbit_table.endpoints;
    out.entries.resize(orbit_table.entries.size());
    for (std::size_t e = 0; e < orbit_table.entries.size(); ++e) {
        std::vector<CountEntry> merged;
        merged.reserve(orbit_table.entries[e].size());
        for (const CountEntry& entry : orbit_table.entries[e]) {
            const GraphletKey key = decode(entry.hash, orbit_table.num_types, orbit_table.mode);
            const GraphletKey gkey = orbit_key_to_graphlet_key(key);
            merged.push_back({encode(gkey, orbit_table.num_types), entry.count});
        }
        std::sort(merged.begin(), merged.end(),
                  [](const CountEntry& a, const CountEntry& b) { return a.hash < b.hash; });
        std::vector<CountEntry> packed;
        for (const CountEntry& entry : merged) {
            if (!packed.empty() && packed.back().hash == entry.hash)
                packed.back().count += entry.count;
            else
                packed.push_back(entry);
        }
        out.entries[e] = std::move(packed);
    }
    return out;
}

}  // namespace tgc
