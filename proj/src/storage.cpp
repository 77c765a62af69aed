#include "tgc/storage.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <unordered_map>

#include "tgc/keys.hpp"

namespace tgc {

std::string lookup_path(const std::string& counts_path) { return counts_path + ".lookup"; }

void write_counts(const LocalCountTable& table, std::ostream& counts_out,
                  std::ostream& lookup_out) {
    if (table.entries.size() != table.endpoints.size())
        throw InternalError("count table edge lists out of sync");
    counts_out << "# tgc v1\n";
    counts_out << "# mode=" << mode_name(table.mode) << " L=" << table.num_types
               << " N=" << table.num_nodes << " M=" << table.num_edges() << '\n';

    std::unordered_map<Hash, std::int64_t> dense;
    std::vector<Hash> by_id;  // id-1 -> hash
    for (EdgeIndex e = 0; e < table.num_edges(); ++e) {
        counts_out << table.endpoints[e].first << ' ' << table.endpoints[e].second;
        Hash prev = 0;
        bool first = true;
        for (const CountEntry& entry : table.entries[e]) {
            if (!first && entry.hash <= prev)
                throw InternalError("entries not sorted by hash within an edge");
            if (entry.count == 0) throw InternalError("zero count stored in table");
            prev = entry.hash;
            first = false;
            auto [it, inserted] = dense.try_emplace(entry.hash, by_id.size() + 1);
            if (inserted) by_id.push_back(entry.hash);
            counts_out << ' ' << it->second << ':' << entry.count;
        }
        counts_out << '\n';
    }

    for (std::size_t i = 0; i < by_id.size(); ++i) {
        const GraphletKey key = decode(by_id[i], table.num_types, table.mode);
        lookup_out << (i + 1) << ' ' << by_id[i] << ' ' << key.code << ' ' << key.types[0]
                   << ' ' << key.types[1] << ' ' << key.types[2] << ' ' << key.types[3] << ' '
                   << mode_name(table.mode) << '\n';
    }
}

void write_counts(const LocalCountTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path);
    const std::string lp = lookup_path(path);
    std::ofstream lut(lp);
    if (!lut) throw DataError("cannot open for writing: " + lp);
    write_counts(table, out, lut);
    if (!out) throw DataError("write failed: " + path);
    if (!lut) throw DataError("write failed: " + lp);
}

namespace {

[[noreturn]] void fail(const std::string& path, std::int64_t line, const std::string& what) {
    throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

LocalCountTable read_counts(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open counts file: " + path);
    std::string line;
    std::int64_t lineno = 0;

    ++lineno;
    if (!std::getline(in, line) || line != "# tgc v1")
        fail(path, lineno, "expected header '# tgc v1'");

    LocalCountTable table;
    EdgeIndex m = 0;
    ++lineno;
    if (!std::getline(in, line)) fail(path, lineno, "missing metadata header");
    {
        std::string mode_str;
        long long l = -1, n = -1, mm = -1;
        char buf[16] = {0};
        if (std::sscanf(line.c_str(), "# mode=%15s L=%lld N=%lld M=%lld", buf, &l, &n, &mm) != 4)
            fail(path, lineno, "malformed metadata header");
        mode_str = buf;
        if (mode_str == "typed")
            table.mode = Mode::Typed;
        else if (mode_str == "pa")
            table.mode = Mode::PositionAware;
        else
            fail(path, lineno, "unknown mode '" + mode_str + "'");
        if (l < 1 || n < 0 || mm < 0) fail(path, lineno, "bad metadata values");
        table.num_types = static_cast<int>(l);
        table.num_nodes = n;
        m = mm;
    }

    // Sidecar first: we need id -> hash to decode edge lines.
    const std::string lp = lookup_path(path);
    std::ifstream lut(lp);
    if (!lut) throw DataError("cannot open lookup sidecar: " + lp);
    std::vector<Hash> by_id;
    std::string lline;
    std::int64_t llineno = 0;
    while (std::getline(lut, lline)) {
        ++llineno;
        if (lline.empty()) continue;
        long long id = 0;
        unsigned long long hash = 0;
        int code = 0, t1 = 0, t2 = 0, t3 = 0, t4 = 0;
        char buf[16] = {0};
        if (std::sscanf(lline.c_str(), "%lld %llu %d %d %d %d %d %15s", &id, &hash, &code,
                        &t1, &t2, &t3, &t4, buf) != 8)
            fail(lp, llineno, "malformed lookup line");
        if (id != static_cast<long long>(by_id.size()) + 1)
            fail(lp, llineno, "lookup ids must be consecutive from 1");
        const GraphletKey key = decode(hash, table.num_types, table.mode);
        if (key.code != code || key.types[0] != t1 || key.types[1] != t2 ||
            key.types[2] != t3 || key.types[3] != t4)
            fail(lp, llineno, "lookup line does not match its hash");
        by_id.push_back(hash);
    }

    table.endpoints.reserve(m);
    table.entries.reserve(m);
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const char* p = line.data();
        const char* end = p + line.size();
        auto take_int = [&](long long& v) {
            while (p < end && *p == ' ') ++p;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc{} || next == p) fail(path, lineno, "malformed edge line");
            p = next;
        };
        long long u = 0, v = 0;
        take_int(u);
        take_int(v);
        std::vector<CountEntry> list;
        while (true) {
            while (p < end && *p == ' ') ++p;
            if (p == end) break;
            long long id = 0, count = 0;
            auto [next, ec] = std::from_chars(p, end, id);
            if (ec != std::errc{} || next == p || next == end || *next != ':')
                fail(path, lineno, "malformed id:count pair");
            p = next + 1;
            auto [next2, ec2] = std::from_chars(p, end, count);
            if (ec2 != std::errc{} || next2 == p) fail(path, lineno, "malformed id:count pair");
            p = next2;
            if (id < 1 || id > static_cast<long long>(by_id.size()))
                fail(path, lineno, "count references id " + std::to_string(id) +
                                       " missing from the lookup sidecar");
            if (count == 0) fail(path, lineno, "zero count");
            list.push_back({by_id[id - 1], count});
        }
        std::sort(list.begin(), list.end(),
                  [](const CountEntry& a, const CountEntry& b) { return a.hash < b.hash; });
        table.endpoints.emplace_back(u, v);
        table.entries.push_back(std::move(list));
    }
    if (table.num_edges() != m)
        throw ParseError(path + ": header declares M=" + std::to_string(m) + " but " +
                         std::to_string(table.num_edges()) + " edge lines were read");
    return table;
}

}  // namespace tgc
