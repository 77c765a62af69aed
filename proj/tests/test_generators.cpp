#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "test_util.hpp"
#include "tgc/generators.hpp"
#include "tgc/graph.hpp"

using namespace tgc;

TEST_CASE("er boundary probabilities") {
    CHECK(gen_er(10, 0.0, 1).empty());
    CHECK(gen_er(10, 1.0, 1).size() == 45);
    CHECK_THROWS_AS(gen_er(10, 1.5, 1), DataError);
}

TEST_CASE("er edge count stays within four sigma of the binomial mean") {
    // n=1000, p=0.01: mean 4995, sigma ~70.3
    const auto edges = gen_er(1000, 0.01, 42);
    const double mean = 499500 * 0.01;
    const double sigma = std::sqrt(499500 * 0.01 * 0.99);
    CHECK(std::abs(static_cast<double>(edges.size()) - mean) < 4 * sigma);
}

TEST_CASE("generators are deterministic per seed") {
    CHECK(gen_er(200, 0.05, 7) == gen_er(200, 0.05, 7));
    CHECK(gen_er(200, 0.05, 7) != gen_er(200, 0.05, 8));
    const auto w = power_law_weights(100, 1.8, 10.0);
    CHECK(gen_chung_lu(w, 3) == gen_chung_lu(w, 3));
    CHECK(gen_small_world(100, 4, 0.3, 5) == gen_small_world(100, 4, 0.3, 5));
    CHECK(assign_types_uniform(50, 3, 9) == assign_types_uniform(50, 3, 9));
}

TEST_CASE("chung-lu with equal weights behaves like er") {
    // w=3 for all: p = 9 / (3n) = 3/n
    const RawId n = 400;
    std::vector<double> w(n, 3.0);
    const auto edges = gen_chung_lu(w, 11);
    const double p = 9.0 / (3.0 * n);
    const double pairs = n * (n - 1) / 2.0;
    const double sigma = std::sqrt(pairs * p * (1 - p));
    CHECK(std::abs(static_cast<double>(edges.size()) - pairs * p) < 4 * sigma);
}

TEST_CASE("chung-lu power-law weights give a heavy tail") {
    const RawId n = 9200;
    const auto edges = gen_chung_lu(power_law_weights(n, 1.8, 10.0), 13);
    std::vector<Count> degree(n, 0);
    for (const auto& [u, v] : edges) {
        ++degree[u];
        ++degree[v];
    }
    const Count max_degree = *std::max_element(degree.begin(), degree.end());
    const double mean = 2.0 * static_cast<double>(edges.size()) / static_cast<double>(n);
    CHECK(static_cast<double>(max_degree) > 20.0 * mean);
}

TEST_CASE("zero weights give an empty graph") {
    CHECK(gen_chung_lu(std::vector<double>(10, 0.0), 1).empty());
}

TEST_CASE("small world ring and rewiring") {
    const auto ring = gen_small_world(20, 4, 0.0, 1);
    CHECK(ring.size() == 40);
    std::vector<int> degree(20, 0);
    for (const auto& [u, v] : ring) {
        ++degree[u];
        ++degree[v];
    }
    for (int d : degree) CHECK(d == 4);

    const auto rewired = gen_small_world(10000, 6, 0.3, 2);
    CHECK(rewired.size() == 30000);

    const auto full = gen_small_world(500, 4, 1.0, 3);
    CHECK(full.size() == 1000);
    std::fill(degree.begin(), degree.end(), 0);
    std::vector<int> deg2(500, 0);
    for (const auto& [u, v] : full) {
        ++deg2[u];
        ++deg2[v];
    }
    double var = 0.0;
    for (int d : deg2) var += (d - 4.0) * (d - 4.0);
    CHECK(var > 0.0);
    CHECK_THROWS_AS(gen_small_world(10, 3, 0.1, 1), DataError);
}

TEST_CASE("uniform type assignment is balanced") {
    const auto even = assign_types_uniform(10, 5, 3);
    std::map<int, int> hist;
    for (int t : even) ++hist[t];
    for (const auto& [t, c] : hist) CHECK(c == 2);
    CHECK(hist.size() == 5);

    const auto uneven = assign_types_uniform(10, 3, 4);
    std::map<int, int> hist3;
    for (int t : uneven) ++hist3[t];
    std::vector<int> counts;
    for (const auto& [t, c] : hist3) counts.push_back(c);
    std::sort(counts.begin(), counts.end());
    CHECK(counts == std::vector<int>{3, 3, 4});

    const auto single = assign_types_uniform(5, 1, 5);
    CHECK(std::all_of(single.begin(), single.end(), [](int t) { return t == 1; }));
}

TEST_CASE("permute-types preserves the histogram") {
    std::vector<int> types{1, 1, 2, 2, 2, 3};
    auto shuffled = permute_types(types, 77);
    std::sort(types.begin(), types.end());
    auto sorted = shuffled;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == types);
}

TEST_CASE("generated graphs validate") {
    for (std::uint64_t seed : {1ULL, 2ULL}) {
        const auto edges = gen_small_world(60, 4, 0.3, seed);
        const auto types = assign_types_uniform(60, 4, seed);
        std::vector<std::pair<RawId, int>> node_types;
        for (RawId v = 0; v < 60; ++v) node_types.emplace_back(v, types[v]);
        const HeteroGraph g = HeteroGraph::build(edges, node_types, 4);
        CHECK(validate(g).empty());
    }
}
