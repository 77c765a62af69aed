#pragma once

#include <cstdint>
#include <vector>

#include "tgc/graph.hpp"
#include "tgc/keys.hpp"
#include "tgc/storage.hpp"

namespace tgc {

/// Open-addressing hash-to-count accumulator cleared in O(touched) by an
/// epoch stamp. Per-edge nonzero key sets are tiny, so the table stays small
/// and is reused across edges.
class SparseAccumulator {
public:
    explicit SparseAccumulator(std::size_t initial_capacity = 256);

    void clear();
    void add(Hash key, Count delta, Hash aux = 0);
    Count get(Hash key) const;
    std::size_t size() const { return touched_.size(); }

    template <typename F>
    void for_each(F&& f) const {
        for (std::uint32_t idx : touched_) {
            const Slot& s = slots_[idx];
            f(s.key, s.value, s.aux);
        }
    }

private:
    struct Slot {
        Hash key = 0;
        Hash aux = 0;
        Count value = 0;
        std::uint32_t epoch = 0;
    };

    std::size_t probe_(Hash key) const;
    void grow_();

    std::vector<Slot> slots_;
    std::vector<std::uint32_t> touched_;
    std::uint32_t epoch_ = 1;
    std::size_t mask_ = 0;
};

/// Per-edge scratch owned by one worker. Holds the typed lower-order sets of
/// the current edge, the constant-time node classifier, and the sparse count
/// accumulator. All marks are epoch-stamped so reset never touches all N nodes.
class EdgeWorkspace {
public:
    enum class Rel : std::uint8_t { None = 0, Tri, StarI, StarJ };

    EdgeWorkspace(const HeteroGraph& g, Mode mode);

    Mode mode() const { return encoder_.mode(); }
    const KeyEncoder& encoder() const { return encoder_; }

    // epoch and kind share one word; stale epochs read as unmarked
    Rel relation(NodeId w) const {
        const std::uint32_t word = marks_[w];
        return (word >> 2) == epoch_ ? static_cast<Rel>(word & 3u) : Rel::None;
    }

    void reset();

    // Filled by compute_typed_sets.
    std::vector<NodeId> tri, star_i, star_j;
    std::vector<Count> tri_cnt, si_cnt, sj_cnt;    // per type, index 1..L
    std::vector<int> tri_types, si_types, sj_types; // types with nonzero counts
    NodeId node_i = 0, node_j = 0;
    int type_i = 0, type_j = 0;

    SparseAccumulator count_acc;

private:
    friend void compute_typed_sets(const HeteroGraph&, const EdgeId&, EdgeWorkspace&);
    friend void derive_constant_time(EdgeWorkspace&);

    void mark_(NodeId w, Rel r) {
        marks_[w] = (epoch_ << 2) | static_cast<std::uint32_t>(r);
    }

    KeyEncoder encoder_;
    std::vector<std::uint32_t> marks_;
    std::uint32_t epoch_ = 1;
    SparseAccumulator scratch_;
};

struct EdgeTypedCounts {
    EdgeId edge;
    std::vector<CountEntry> entries;  // sorted by hash, counts >= 1
};

/// Splits the joint neighborhood of the edge into typed triangle and star
/// sets, marks the classifier, and emits all 2- and 3-node keys.
void compute_typed_sets(const HeteroGraph& g, const EdgeId& e, EdgeWorkspace& w);

/// Enumerates 4-path end, tailed-triangle tail and 4-cycle orbits by walking
/// one step out of the star sets.
void count_path_based(const HeteroGraph& g, const EdgeId& e, EdgeWorkspace& w);

/// Enumerates 4-clique, chordal-cycle edge and tailed-triangle center orbits
/// by walking one step out of the triangle set.
void count_triangle_based(const HeteroGraph& g, const EdgeId& e, EdgeWorkspace& w);

/// Derives the remaining orbits (4-path center, 4-star, tailed tri-edge,
/// chordal center) per type combination from set sizes minus the conflicting
/// enumerated orbit. A negative result throws InternalError: the identities
/// guarantee non-negativity, so a negative value proves an enumeration bug.
void derive_constant_time(EdgeWorkspace& w);

/// Full per-edge count: the passes above plus the 2-node key. Resets w after
/// extracting the entries.
EdgeTypedCounts count_edge(const HeteroGraph& g, const EdgeId& e, EdgeWorkspace& w);

/// Edge-parallel driver. Each worker owns a private workspace and writes to
/// its edges' slots only, so the result is identical for any worker count.
LocalCountTable count_all(const HeteroGraph& g, Mode mode, int workers = 1);

/// Merge orbit-level keys into graphlet-level keys per edge.
LocalCountTable orbits_to_graphlets(const LocalCountTable& orbit_table);

}  // namespace tgc
