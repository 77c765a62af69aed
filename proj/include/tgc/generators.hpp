#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tgc/common.hpp"

namespace tgc {

// All generators draw from std::mt19937_64 seeded with the given seed; the
// draw order is part of the contract, so a seed pins the output bytes.

/// Erdos-Renyi G(n, p) via geometric skipping over the pair enumeration.
std::vector<std::pair<RawId, RawId>> gen_er(RawId n, double p, std::uint64_t seed);

/// Chung-Lu: pair (u,v) kept with probability min(1, w_u * w_v / sum(w)).
std::vector<std::pair<RawId, RawId>> gen_chung_lu(const std::vector<double>& weights,
                                                  std::uint64_t seed);

/// Power-law expected-degree weights: w_i proportional to (i+1)^(-1/(exponent-1)),
/// scaled so the weights sum to n * avg_degree.
std::vector<double> power_law_weights(RawId n, double exponent, double avg_degree);

/// Watts-Strogatz: ring lattice with k neighbors per node, each lattice edge
/// rewired with probability beta (no self loops or duplicates; edge count is
/// preserved). Requires k even and k < n.
std::vector<std::pair<RawId, RawId>> gen_small_world(RawId n, int k, double beta,
                                                     std::uint64_t seed);

/// Uniform type assignment: every type gets floor(n/L) or ceil(n/L) nodes;
/// which types take the remainder and which nodes land where are both drawn
/// from the seed. Returns types[node] for nodes 0..n-1.
std::vector<int> assign_types_uniform(RawId n, int num_types, std::uint64_t seed);

/// Random permutation of an existing type vector (histogram preserved).
std::vector<int> permute_types(std::vector<int> types, std::uint64_t seed);

}  // namespace tgc
