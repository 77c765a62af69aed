#pragma once

#include <span>

#include "tgc/graph.hpp"
#include "tgc/storage.hpp"

namespace tgc {

/// Classify a connected induced subgraph on 2..4 nodes. `adj_masks[x]` is the
/// bitmask of instance-local neighbors of node x. Returns the shape code;
/// throws DataError if the subgraph is disconnected or unclassifiable.
int classify_shape(std::span<const std::uint8_t> adj_masks);

/// Reference counter: enumerates every connected induced {2,3,4}-node
/// subgraph by definition, classifies it, and files one count per contained
/// edge under that edge's orbit key. Semantically identical output to
/// count_all, with none of its machinery. Single-threaded, O(N^4); refuses
/// graphs above `max_nodes`.
LocalCountTable oracle_counts(const HeteroGraph& g, Mode mode, NodeId max_nodes = 100);

}  // namespace tgc
