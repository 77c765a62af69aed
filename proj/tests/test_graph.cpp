#include <doctest.h>

#include "test_util.hpp"
#include "tgc/graph.hpp"

namespace tgc {

// lets tests break invariants on purpose
struct GraphTestAccess {
    static void flip_type(HeteroGraph& g, NodeId v, int t) { g.node_type_[v] = t; }
    static void drop_last_neighbor(HeteroGraph& g, NodeId v) {
        // shrink v's adjacency by one entry, leaving the reverse edge in place
        const std::int64_t erased = g.adj_ptr_[v + 1] - 1;
        g.adj_.erase(g.adj_.begin() + erased);
        for (NodeId w = v + 1; w <= g.num_nodes(); ++w) --g.adj_ptr_[w];
        for (auto& ts : g.typed_start_)
            if (ts > erased) --ts;
    }
};

}  // namespace tgc

using namespace tgc;

TEST_CASE("loader drops self-loops and duplicates with a report") {
    test::TempDir dir;
    test::write_file(dir.file("e.txt"), "1 2\n2 1\n3 3\n2 3\n");
    test::write_file(dir.file("t.txt"), "1 1\n2 1\n3 2\n");
    LoadedGraph lg = load_graph(dir.file("e.txt"), dir.file("t.txt"));
    CHECK(lg.graph.num_nodes() == 3);
    CHECK(lg.graph.num_edges() == 2);
    CHECK(lg.report.self_loops == 1);
    CHECK(lg.report.reversed_duplicate_edges == 1);
    CHECK(lg.report.duplicate_edges == 0);
}

TEST_CASE("G1 loads with the declared histogram") {
    const HeteroGraph g = test::g1();
    CHECK(g.num_nodes() == 4);
    CHECK(g.num_edges() == 4);
    CHECK(g.num_types() == 2);
    CHECK(g.type_histogram() == std::vector<Count>{0, 2, 2});
    CHECK(validate(g).empty());
}

TEST_CASE("typed neighborhoods are contiguous sorted slices") {
    const HeteroGraph g = test::g1();
    const NodeId n3 = g.internal_id(3).value();
    const NodeId n1 = g.internal_id(1).value();
    const NodeId n2 = g.internal_id(2).value();
    auto s = g.typed_neighbors(n3, 1);
    CHECK(std::vector<NodeId>(s.begin(), s.end()) == std::vector<NodeId>{n1, n2});
    auto s2 = g.typed_neighbors(n1, 2);
    CHECK(std::vector<NodeId>(s2.begin(), s2.end()) == std::vector<NodeId>{n3});
    CHECK(g.typed_degree(n3, 1) == 2);
    CHECK_THROWS_AS(g.typed_neighbors(n1, 3), DataError);
    CHECK_THROWS_AS(g.typed_neighbors(99, 1), DataError);
}

TEST_CASE("typed degrees partition the degree") {
    const HeteroGraph g = test::g1();
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        Count sum = 0;
        for (int t = 1; t <= g.num_types(); ++t) sum += g.typed_degree(v, t);
        CHECK(sum == g.degree(v));
    }
}

TEST_CASE("degenerate and malformed inputs") {
    test::TempDir dir;
    test::write_file(dir.file("empty.txt"), "# nothing here\n");
    test::write_file(dir.file("t.txt"), "1 1\n");
    CHECK_THROWS_WITH_AS(load_graph(dir.file("empty.txt"), dir.file("t.txt")),
                         "graph has no edges", DataError);

    test::write_file(dir.file("bad.txt"), "1 2\n1 fish\n");
    CHECK_THROWS_AS(load_graph(dir.file("bad.txt"), dir.file("t.txt")), ParseError);

    test::write_file(dir.file("e.txt"), "1 2\n");
    test::write_file(dir.file("missing.txt"), "1 1\n");
    CHECK_THROWS_AS(load_graph(dir.file("e.txt"), dir.file("missing.txt")), DataError);

    test::write_file(dir.file("zero.txt"), "1 1\n2 0\n");
    CHECK_THROWS_AS(load_graph(dir.file("e.txt"), dir.file("zero.txt")), DataError);
}

TEST_CASE("edge types are carried through io untouched") {
    test::TempDir dir;
    test::write_file(dir.file("e.txt"), "1 2 7\n2 3 9\n");
    test::write_file(dir.file("t.txt"), "1 1\n2 1\n3 1\n");
    LoadedGraph lg = load_graph(dir.file("e.txt"), dir.file("t.txt"));
    REQUIRE(lg.graph.has_edge_types());
    CHECK(lg.graph.edge_type(0) == 7);
    CHECK(lg.graph.edge_type(1) == 9);
}

TEST_CASE("write then load reproduces the graph byte for byte") {
    test::TempDir dir;
    const HeteroGraph g = test::g1();
    write_graph(g, dir.file("e.txt"), dir.file("t.txt"));
    LoadedGraph lg = load_graph(dir.file("e.txt"), dir.file("t.txt"));
    CHECK(lg.graph.num_nodes() == g.num_nodes());
    CHECK(lg.graph.num_edges() == g.num_edges());
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
        CHECK(lg.graph.edge(e).u == g.edge(e).u);
        CHECK(lg.graph.edge(e).v == g.edge(e).v);
    }
    write_graph(lg.graph, dir.file("e2.txt"), dir.file("t2.txt"));
    CHECK(test::read_file(dir.file("e.txt")) == test::read_file(dir.file("e2.txt")));
    CHECK(test::read_file(dir.file("t.txt")) == test::read_file(dir.file("t2.txt")));
}

TEST_CASE("validate reports injected violations") {
    HeteroGraph g = test::g1();
    GraphTestAccess::flip_type(g, 0, 0);
    auto report = validate(g);
    CHECK(!report.empty());

    HeteroGraph g2 = test::g1();
    GraphTestAccess::drop_last_neighbor(g2, 0);
    auto report2 = validate(g2);
    bool found = false;
    for (const auto& line : report2)
        if (line.find("asymmetric") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("num_types can be declared wider than observed") {
    HeteroGraph g = HeteroGraph::build({{0, 1}}, {{0, 1}, {1, 1}}, 5);
    CHECK(g.num_types() == 5);
    CHECK(g.typed_degree(0, 5) == 0);
    CHECK_THROWS_AS(HeteroGraph::build({{0, 1}}, {{0, 3}, {1, 1}}, 2), DataError);
}
