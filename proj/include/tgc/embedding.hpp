#pragma once

#include <string>
#include <vector>

#include "tgc/graph.hpp"
#include "tgc/storage.hpp"

namespace tgc {

/// Graph reweighted so each edge carries the count of one chosen graphlet key;
/// edges where the key never occurs are absent.
struct MotifWeightedGraph {
    NodeId num_nodes = 0;
    std::vector<std::vector<std::pair<NodeId, double>>> rows;  // symmetric, zero diagonal
    std::vector<double> strength;     // row sums
    std::vector<int> component;       // component id per node
    std::vector<NodeId> component_size;

    bool isolated(NodeId v) const { return rows[v].empty(); }
};

/// Builds the motif-weighted graph for `key` (graphlet-level hash) from a
/// per-edge count table aligned with g. Throws DataError if the key occurs on
/// no edge, listing the keys that do.
MotifWeightedGraph motif_weighted_graph(const HeteroGraph& g, const LocalCountTable& table,
                                        Hash key);

struct EmbeddingMatrix {
    NodeId num_nodes = 0;
    int dim = 0;
    std::vector<double> values;  // row-major N x dim; isolated nodes are zero rows

    double at(NodeId v, int d) const { return values[static_cast<std::size_t>(v) * dim + d]; }
};

/// Eigen pairs actually solved for one component, in ascending eigenvalue
/// order, with the residual norm of each pair.
struct ComponentSpectrum {
    int component = 0;
    std::vector<double> eigenvalues;
    std::vector<double> residuals;  // ||L u - lambda u||_2 per pair
};

struct EmbedResult {
    EmbeddingMatrix matrix;
    std::vector<ComponentSpectrum> spectra;
};

/// Spectral embedding per connected component: the eigenvectors of the `dim`
/// smallest eigenvalues of the symmetric normalized Laplacian
/// I - D^{-1/2} W D^{-1/2}, rows normalized to unit length. Components
/// smaller than dim get as many coordinates as they have nodes. Dense solve
/// for components up to 2000 nodes, shift-inverted iteration with deflation
/// above; both paths are checked to residual 1e-10.
EmbedResult embed(const MotifWeightedGraph& mwg, int dim);

/// One line per node: `node_id z1 ... zD` (original ids).
void write_embedding(const EmbeddingMatrix& z, const HeteroGraph& g, const std::string& path);

}  // namespace tgc
