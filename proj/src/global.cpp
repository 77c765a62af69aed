#include "tgc/global.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "tgc/keys.hpp"

namespace tgc {

Count GlobalCountTable::get(Hash hash) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), hash,
                               [](const CountEntry& e, Hash h) { return e.hash < h; });
    return it != entries.end() && it->hash == hash ? it->count : 0;
}

GlobalCountTable global_counts(const LocalCountTable& table) {
    std::unordered_map<Hash, Count> sums;
    for (const auto& edge_entries : table.entries)
        for (const CountEntry& entry : edge_entries) sums[entry.hash] += entry.count;

    GlobalCountTable out;
    out.num_types = table.num_types;
    out.mode = table.mode;
    out.entries.reserve(sums.size());
    for (const auto& [hash, sum] : sums) {
        const GraphletKey key = decode(hash, table.num_types, table.mode);
        const Count edges = shape_edge_count(key.code);
        if (sum % edges != 0)
            throw InternalError("per-edge sum " + std::to_string(sum) + " for key " +
                                std::to_string(hash) + " is not divisible by " +
                                std::to_string(edges));
        out.entries.push_back({hash, sum / edges});
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const CountEntry& a, const CountEntry& b) { return a.hash < b.hash; });
    return out;
}

void write_global(const GlobalCountTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path);
    for (const CountEntry& entry : table.entries) {
        const GraphletKey key = decode(entry.hash, table.num_types, table.mode);
        out << entry.hash << ' ' << key.code << ' ' << key.types[0] << ' ' << key.types[1]
            << ' ' << key.types[2] << ' ' << key.types[3] << ' ' << entry.count << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace tgc
