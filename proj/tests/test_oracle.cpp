#include <doctest.h>

#include <map>
#include <set>

#include "test_util.hpp"
#include "tgc/counting.hpp"
#include "tgc/generators.hpp"
#include "tgc/oracle.hpp"

using namespace tgc;

TEST_CASE("shape classification by degree sequence") {
    // path 0-1-2-3
    {
        const std::uint8_t masks[4] = {0b0010, 0b0101, 0b1010, 0b0100};
        CHECK(classify_shape(masks) == shape::kPath4);
    }
    // star centered at 0
    {
        const std::uint8_t masks[4] = {0b1110, 0b0001, 0b0001, 0b0001};
        CHECK(classify_shape(masks) == shape::kStar4);
    }
    // diamond: chord between 0 and 1
    {
        const std::uint8_t masks[4] = {0b1110, 0b1101, 0b0011, 0b0011};
        CHECK(classify_shape(masks) == shape::kChordalCycle);
    }
    // cycle 0-2-1-3
    {
        const std::uint8_t masks[4] = {0b1100, 0b1100, 0b0011, 0b0011};
        CHECK(classify_shape(masks) == shape::kCycle4);
    }
    {
        const std::uint8_t masks[3] = {0b110, 0b001, 0b001};
        CHECK(classify_shape(masks) == shape::kPath3);
    }
    // disconnected pair of edges
    {
        const std::uint8_t masks[4] = {0b0010, 0b0001, 0b1000, 0b0100};
        CHECK_THROWS_AS(classify_shape(masks), DataError);
    }
}

TEST_CASE("oracle reproduces the hand table for G1") {
    const HeteroGraph g = test::g1();
    const LocalCountTable t = oracle_counts(g, Mode::Typed);
    using E = std::vector<CountEntry>;
    CHECK(t.entries[0] == E{{1100, 1}, {21120, 1}, {81122, 1}});
    CHECK(t.entries[1] == E{{1200, 1}, {11220, 1}, {21120, 1}, {91122, 1}});
    CHECK(t.entries[2] == E{{1200, 1}, {11220, 1}, {21120, 1}, {91122, 1}});
    CHECK(t.entries[3] == E{{2200, 1}, {11220, 2}, {71122, 1}});
}

TEST_CASE("single edge graph has one instance") {
    const HeteroGraph g = HeteroGraph::build({{5, 9}}, {{5, 1}, {9, 1}});
    const LocalCountTable t = oracle_counts(g, Mode::Typed);
    CHECK(t.entries[0] == std::vector<CountEntry>{{1100, 1}});
}

TEST_CASE("K4 per edge and globally") {
    const LocalCountTable t = oracle_counts(test::k4(), Mode::Typed);
    for (const auto& list : t.entries)
        CHECK(list == std::vector<CountEntry>{{1100, 1}, {21110, 2}, {121111, 1}});
}

TEST_CASE("oracle refuses graphs beyond the node cap") {
    const auto edges = gen_er(120, 0.05, 1);
    std::vector<std::pair<RawId, int>> types;
    for (RawId v = 0; v < 120; ++v) types.emplace_back(v, 1);
    const HeteroGraph g = HeteroGraph::build(edges, types, 1);
    CHECK_THROWS_AS(oracle_counts(g, Mode::Typed), DataError);
    CHECK_NOTHROW(oracle_counts(g, Mode::Typed, 200));
}

TEST_CASE("every observed shape has at least as many position-aware keys as typed keys") {
    const auto edges = gen_er(28, 0.25, 31);
    const auto types = assign_types_uniform(28, 4, 32);
    std::vector<std::pair<RawId, int>> node_types;
    for (RawId v = 0; v < 28; ++v) node_types.emplace_back(v, types[v]);
    const HeteroGraph g = HeteroGraph::build(edges, node_types, 4);
    std::map<int, std::set<Hash>> typed_keys, pa_keys;
    for (Mode mode : {Mode::Typed, Mode::PositionAware}) {
        const LocalCountTable t = orbits_to_graphlets(count_all(g, mode, 1));
        auto& out = mode == Mode::Typed ? typed_keys : pa_keys;
        for (const auto& list : t.entries)
            for (const CountEntry& entry : list)
                out[decode(entry.hash, 4, mode).code].insert(entry.hash);
    }
    REQUIRE(!typed_keys.empty());
    for (const auto& [shape_code, keys] : typed_keys)
        CHECK(pa_keys[shape_code].size() >= keys.size());
}

TEST_CASE("oracle distinct keys per shape respect the combinatorial bound") {
    const auto edges = gen_er(30, 0.3, 21);
    const auto types = assign_types_uniform(30, 3, 22);
    std::vector<std::pair<RawId, int>> node_types;
    for (RawId v = 0; v < 30; ++v) node_types.emplace_back(v, types[v]);
    const HeteroGraph g = HeteroGraph::build(edges, node_types, 3);
    const LocalCountTable t = orbits_to_graphlets(oracle_counts(g, Mode::Typed));
    std::map<int, std::set<Hash>> per_shape;
    for (const auto& list : t.entries)
        for (const CountEntry& entry : list)
            per_shape[decode(entry.hash, 3, Mode::Typed).code].insert(entry.hash);
    for (const auto& [code, keys] : per_shape)
        CHECK(static_cast<Count>(keys.size()) <=
              count_possible_typed(graphlet_size(code), 3));
}
