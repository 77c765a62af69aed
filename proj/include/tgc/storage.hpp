#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tgc/common.hpp"

namespace tgc {

struct CountEntry {
    Hash hash = 0;
    Count count = 0;

    friend bool operator==(const CountEntry&, const CountEntry&) = default;
};

/// Per-edge sparse graphlet counts plus the graph metadata needed to
/// interpret the hashes. Entries are sorted by hash within an edge and never
/// hold zero counts.
struct LocalCountTable {
    Count num_nodes = 0;
    int num_types = 0;
    Mode mode = Mode::Typed;
    std::vector<std::pair<RawId, RawId>> endpoints;  // original ids, enumeration order
    std::vector<std::vector<CountEntry>> entries;    // one list per edge

    EdgeIndex num_edges() const { return static_cast<EdgeIndex>(endpoints.size()); }

    friend bool operator==(const LocalCountTable&, const LocalCountTable&) = default;
};

/// Writes the table in the tgc v1 text format:
///   # tgc v1
///   # mode=<typed|pa> L=<L> N=<N> M=<M>
///   <u> <v> <id>:<count> ...
/// Hashes are remapped to dense consecutive ids (1-based, first-seen order);
/// the sidecar at <path>.lookup maps them back, one line per id:
///   <id> <hash> <code> <t1> <t2> <t3> <t4> <mode>
void write_counts(const LocalCountTable& table, const std::string& path);

/// Stream form of write_counts (counts file and lookup sidecar).
void write_counts(const LocalCountTable& table, std::ostream& counts_out,
                  std::ostream& lookup_out);

/// Exact inverse of write_counts (reads <path> and <path>.lookup).
LocalCountTable read_counts(const std::string& path);

/// Name of the lookup sidecar for a counts file.
std::string lookup_path(const std::string& counts_path);

}  // namespace tgc
