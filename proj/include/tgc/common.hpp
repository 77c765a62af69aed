#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tgc {

using NodeId = std::int32_t;    // dense internal node id
using RawId = std::int64_t;     // node id as it appears in input files
using EdgeIndex = std::int64_t;
using Count = std::int64_t;
using Hash = std::uint64_t;

/// How graphlet type tuples are canonicalized.
/// Typed: the multiset of node types identifies the graphlet.
/// PositionAware: the assignment of types to structural positions matters.
enum class Mode { Typed, PositionAware };

inline const char* mode_name(Mode m) {
    return m == Mode::Typed ? "typed" : "pa";
}

/// Input could not be parsed (bad file, bad line, bad hash).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Input parsed but violates a contract (missing type, bad range, ...).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// A guaranteed-by-construction property failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tgc
