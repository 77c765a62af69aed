#include "tgc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

namespace tgc {

std::vector<std::pair<RawId, RawId>> gen_er(RawId n, double p, std::uint64_t seed) {
    if (n < 0 || p < 0.0 || p > 1.0) throw DataError("gen_er: need n >= 0 and p in [0,1]");
    std::vector<std::pair<RawId, RawId>> edges;
    if (n < 2 || p == 0.0) return edges;
    std::mt19937_64 rng(seed);
    if (p == 1.0) {
        for (RawId v = 0; v < n; ++v)
            for (RawId w = v + 1; w < n; ++w) edges.emplace_back(v, w);
        return edges;
    }
    // Geometric skips through the ordered pair list (w < v).
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log1mp = std::log1p(-p);
    RawId v = 1;
    RawId w = -1;
    while (v < n) {
        const double r = 1.0 - unit(rng);  // (0, 1]
        w += 1 + static_cast<RawId>(std::floor(std::log(r) / log1mp));
        while (w >= v && v < n) {
            w -= v;
            ++v;
        }
        if (v < n) edges.emplace_back(w, v);
    }
    return edges;
}

std::vector<std::pair<RawId, RawId>> gen_chung_lu(const std::vector<double>& weights,
                                                  std::uint64_t seed) {
    const RawId n = static_cast<RawId>(weights.size());
    for (double w : weights)
        if (w < 0.0 || !std::isfinite(w)) throw DataError("gen_chung_lu: bad weight");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<std::pair<RawId, RawId>> edges;
    if (total <= 0.0) return edges;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (RawId u = 0; u < n; ++u) {
        if (weights[u] == 0.0) continue;
        for (RawId v = u + 1; v < n; ++v) {
            const double p = std::min(1.0, weights[u] * weights[v] / total);
            if (p > 0.0 && unit(rng) < p) edges.emplace_back(u, v);
        }
    }
    return edges;
}

std::vector<double> power_law_weights(RawId n, double exponent, double avg_degree) {
    if (exponent <= 1.0) throw DataError("power-law exponent must be > 1");
    if (n < 1 || avg_degree <= 0.0) throw DataError("bad power_law_weights arguments");
    std::vector<double> w(n);
    const double power = 1.0 / (exponent - 1.0);
    double sum = 0.0;
    for (RawId i = 0; i < n; ++i) {
        w[i] = std::pow(static_cast<double>(i + 1), -power);
        sum += w[i];
    }
    const double scale = static_cast<double>(n) * avg_degree / sum;
    for (double& x : w) x *= scale;
    return w;
}

std::vector<std::pair<RawId, RawId>> gen_small_world(RawId n, int k, double beta,
                                                     std::uint64_t seed) {
    if (k % 2 != 0 || k < 0 || k >= n) throw DataError("gen_small_world: need k even, k < n");
    if (beta < 0.0 || beta > 1.0) throw DataError("gen_small_world: beta in [0,1]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<RawId> pick(0, n - 1);

    auto pack = [n](RawId a, RawId b) {
        if (a > b) std::swap(a, b);
        return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) +
               static_cast<std::uint64_t>(b);
    };
    std::unordered_set<std::uint64_t> present;
    std::vector<std::pair<RawId, RawId>> edges;
    edges.reserve(static_cast<std::size_t>(n) * k / 2);
    for (RawId u = 0; u < n; ++u)
        for (int off = 1; off <= k / 2; ++off) {
            const RawId v = (u + off) % n;
            edges.emplace_back(u, v);
            present.insert(pack(u, v));
        }
    for (auto& [u, v] : edges) {
        if (unit(rng) >= beta) continue;
        // draw a fresh endpoint for u; keep the edge if the node is saturated
        RawId t = v;
        for (int attempt = 0; attempt < 64; ++attempt) {
            t = pick(rng);
            if (t != u && !present.contains(pack(u, t))) break;
            t = v;
        }
        if (t != v) {
            present.erase(pack(u, v));
            present.insert(pack(u, t));
            v = t;
        }
    }
    return edges;
}

std::vector<int> assign_types_uniform(RawId n, int num_types, std::uint64_t seed) {
    if (num_types < 1 || num_types > n)
        throw DataError("assign_types_uniform: need 1 <= L <= N");
    std::mt19937_64 rng(seed);
    std::vector<int> order(num_types);
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    const RawId base = n / num_types;
    const int remainder = static_cast<int>(n % num_types);
    std::vector<int> types;
    types.reserve(n);
    for (int idx = 0; idx < num_types; ++idx) {
        const RawId copies = base + (idx < remainder ? 1 : 0);
        for (RawId c = 0; c < copies; ++c) types.push_back(order[idx]);
    }
    std::shuffle(types.begin(), types.end(), rng);
    return types;
}

std::vector<int> permute_types(std::vector<int> types, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::shuffle(types.begin(), types.end(), rng);
    return types;
}

}  // namespace tgc
