#pragma once

#include <string>
#include <vector>

#include "tgc/storage.hpp"

namespace tgc {

/// Whole-graph instance counts per graphlet-level key.
struct GlobalCountTable {
    int num_types = 0;
    Mode mode = Mode::Typed;
    std::vector<CountEntry> entries;  // sorted by hash

    Count get(Hash hash) const;
};

/// Sum per-edge counts and divide by the shape's edge count to de-duplicate
/// instances. The input table must be graphlet-level (post
/// orbits_to_graphlets); a non-divisible sum throws InternalError.
GlobalCountTable global_counts(const LocalCountTable& table);

/// One line per key: `hash code t1 t2 t3 t4 count`, sorted by hash.
void write_global(const GlobalCountTable& table, const std::string& path);

}  // namespace tgc
