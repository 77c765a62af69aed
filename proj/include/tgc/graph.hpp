#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tgc/common.hpp"

namespace tgc {

/// One undirected edge in the fixed enumeration order (u < v, internal ids).
struct EdgeId {
    EdgeIndex index = 0;
    NodeId u = 0;
    NodeId v = 0;
};

/// What the loader dropped or rewrote while building the graph.
struct LoadReport {
    Count self_loops = 0;
    Count duplicate_edges = 0;          // repeated with the same orientation
    Count reversed_duplicate_edges = 0; // repeated with opposite orientation
    Count ignored_type_entries = 0;     // type lines for nodes absent from the edge file

    Count total_dropped() const { return self_loops + duplicate_edges + reversed_duplicate_edges; }
};

/// Immutable undirected node-typed graph in compressed adjacency form.
/// Neighbor lists are grouped by neighbor type, each per-type slice strictly
/// increasing, so the type-t neighborhood of a node is a contiguous slice.
/// Node types are 1..L. Safe for concurrent reads once built.
class HeteroGraph {
public:
    /// Validates, deduplicates, densifies ids and builds the adjacency.
    /// `node_types` maps raw node ids to types; every node referenced by an
    /// edge must be present. `num_types` 0 means infer as the max type seen.
    /// `edge_types` is optional (empty or one per input edge line).
    static HeteroGraph build(const std::vector<std::pair<RawId, RawId>>& edges,
                             const std::vector<std::pair<RawId, int>>& node_types,
                             int num_types = 0,
                             const std::vector<int>& edge_types = {},
                             LoadReport* report = nullptr);

    NodeId num_nodes() const { return static_cast<NodeId>(adj_ptr_.size()) - 1; }
    EdgeIndex num_edges() const { return static_cast<EdgeIndex>(edge_u_.size()); }
    int num_types() const { return num_types_; }

    int type_of(NodeId v) const { return node_type_[v]; }
    Count degree(NodeId v) const { return adj_ptr_[v + 1] - adj_ptr_[v]; }
    Count typed_degree(NodeId v, int t) const;

    /// All neighbors of v, grouped by (type, id).
    std::span<const NodeId> neighbors(NodeId v) const {
        return {adj_.data() + adj_ptr_[v], adj_.data() + adj_ptr_[v + 1]};
    }
    /// Neighbors of v with type t, sorted by id. Throws on bad v or t.
    std::span<const NodeId> typed_neighbors(NodeId v, int t) const;

    /// Per-type node counts, index 1..L.
    const std::vector<Count>& type_histogram() const { return type_histogram_; }

    EdgeId edge(EdgeIndex e) const { return {e, edge_u_[e], edge_v_[e]}; }
    bool has_edge_types() const { return !edge_type_.empty(); }
    int edge_type(EdgeIndex e) const { return edge_type_[e]; }

    RawId original_id(NodeId v) const { return original_id_[v]; }
    std::optional<NodeId> internal_id(RawId raw) const;

private:
    friend struct GraphTestAccess;  // invariant-violation injection in tests

    HeteroGraph() = default;

    std::vector<std::int64_t> adj_ptr_;     // N+1
    std::vector<NodeId> adj_;               // 2M, grouped by (type, id)
    std::vector<std::int64_t> typed_start_; // N*L slice starts into adj_
    std::vector<int> node_type_;            // N, values 1..L
    std::vector<Count> type_histogram_;     // L+1, index 1..L
    std::vector<NodeId> edge_u_, edge_v_;   // M, u < v, enumeration order
    std::vector<int> edge_type_;            // M or empty
    std::vector<RawId> original_id_;        // N, sorted ascending
    int num_types_ = 0;
};

struct LoadedGraph {
    HeteroGraph graph;
    LoadReport report;
};

/// Reads the edge and type files (formats in the README). Drops self-loops
/// and duplicate edges, recording them in the report.
LoadedGraph load_graph(const std::string& edge_path, const std::string& type_path,
                       int num_types = 0);

/// Writes the graph back out in the same two-file format, original ids.
void write_graph(const HeteroGraph& g, const std::string& edge_path,
                 const std::string& type_path);

/// Checks every HeteroGraph invariant; returns human-readable violations
/// (empty means valid).
std::vector<std::string> validate(const HeteroGraph& g);

}  // namespace tgc
