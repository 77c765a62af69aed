#include "tgc/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "tgc/keys.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tgc {

namespace {

constexpr double kSolveTol = 1e-10;
constexpr double kClusterTol = 1e-8;
constexpr NodeId kDenseLimit = 2000;

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Flip each eigenvector so its entry of largest magnitude is positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> u) {
    int at = 0;
    double best = 0.0;
    for (int i = 0; i < u.size(); ++i)
        if (std::abs(u[i]) > best) {
            best = std::abs(u[i]);
            at = i;
        }
    if (u[at] < 0.0) u *= -1.0;
}

/// Eigenvectors of a repeated eigenvalue only span a fixed subspace; pick a
/// deterministic basis inside each cluster: Gram-Schmidt over the projections
/// of the coordinate axes, highest node index first.
void canonicalize_clusters(Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
    const int m = static_cast<int>(values.size());
    const int n = static_cast<int>(vectors.rows());
    int a = 0;
    while (a < m) {
        int b = a + 1;
        while (b < m && values[b] - values[a] <= kClusterTol) ++b;
        const int width = b - a;
        if (width > 1) {
            const Eigen::MatrixXd span = vectors.middleCols(a, width);
            Eigen::MatrixXd basis(n, width);
            int filled = 0;
            for (int axis = n - 1; axis >= 0 && filled < width; --axis) {
                Eigen::VectorXd w = span * span.row(axis).transpose();
                for (int f = 0; f < filled; ++f) w -= basis.col(f).dot(w) * basis.col(f);
                const double norm = w.norm();
                if (norm > 1e-6) basis.col(filled++) = w / norm;
            }
            if (filled == width) vectors.middleCols(a, width) = basis;
        }
        a = b;
    }
    for (int k = 0; k < m; ++k) fix_sign(vectors.col(k));
}

struct ComponentSolve {
    std::vector<double> eigenvalues;
    std::vector<double> residuals;
    Eigen::MatrixXd vectors;  // size x n_eig, unit columns
};

ComponentSolve solve_dense(const Eigen::MatrixXd& lap, int n_eig) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    if (solver.info() != Eigen::Success)
        throw DataError("dense eigensolver failed to converge");
    Eigen::VectorXd values = solver.eigenvalues();
    Eigen::MatrixXd vectors = solver.eigenvectors();
    canonicalize_clusters(values, vectors);
    ComponentSolve out;
    out.vectors = vectors.leftCols(n_eig);
    for (int d = 0; d < n_eig; ++d) {
        out.eigenvalues.push_back(values[d]);
        out.residuals.push_back((lap * out.vectors.col(d) - values[d] * out.vectors.col(d)).norm());
    }
    return out;
}

/// Block inverse subspace iteration with Rayleigh-Ritz extraction. The shift
/// keeps (L + sigma I) positive definite while leaving the bottom of the
/// spectrum strongly dominant after inversion.
ComponentSolve solve_sparse(const Eigen::SparseMatrix<double>& lap, int n_eig,
                            std::uint64_t seed) {
    const int size = static_cast<int>(lap.rows());
    const int block = std::min(size, n_eig + 8);
    const double sigma = 1e-6;
    Eigen::SparseMatrix<double> shifted = lap;
    for (int i = 0; i < size; ++i) shifted.coeffRef(i, i) += sigma;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(shifted);
    if (factor.info() != Eigen::Success)
        throw DataError("sparse factorization failed in the shift-inverted eigensolver");

    Eigen::MatrixXd x(size, block);
    for (int c = 0; c < block; ++c)
        for (int i = 0; i < size; ++i)
            x(i, c) = static_cast<double>(mix64(seed + static_cast<std::uint64_t>(i) * 977 +
                                                static_cast<std::uint64_t>(c) * 131071)) /
                          static_cast<double>(UINT64_MAX) -
                      0.5;

    Eigen::VectorXd ritz_values(block);
    Eigen::MatrixXd ritz_vectors(size, block);
    double worst = 1e9;
    const int max_iters = 500;
    for (int it = 0; it < max_iters && worst > kSolveTol; ++it) {
        x = factor.solve(x);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
        x = qr.householderQ() * Eigen::MatrixXd::Identity(size, block);
        const Eigen::MatrixXd lx = lap * x;
        const Eigen::MatrixXd small = x.transpose() * lx;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rr(small);
        if (rr.info() != Eigen::Success)
            throw DataError("Rayleigh-Ritz projection failed to converge");
        ritz_values = rr.eigenvalues();
        ritz_vectors = x * rr.eigenvectors();
        worst = 0.0;
        for (int k = 0; k < n_eig; ++k)
            worst = std::max(worst,
                             (lap * ritz_vectors.col(k) - ritz_values[k] * ritz_vectors.col(k))
                                 .norm());
        x = ritz_vectors;
    }
    if (worst > kSolveTol)
        throw DataError("eigensolver did not converge: residual " + std::to_string(worst) +
                        " after max iterations");

    canonicalize_clusters(ritz_values, ritz_vectors);
    ComponentSolve out;
    out.vectors = ritz_vectors.leftCols(n_eig);
    for (int d = 0; d < n_eig; ++d) {
        out.eigenvalues.push_back(ritz_values[d]);
        out.residuals.push_back(
            (lap * out.vectors.col(d) - ritz_values[d] * out.vectors.col(d)).norm());
    }
    return out;
}

}  // namespace

MotifWeightedGraph motif_weighted_graph(const HeteroGraph& g, const LocalCountTable& table,
                                        Hash key) {
    if (table.num_edges() != g.num_edges() ||
        table.num_nodes != static_cast<Count>(g.num_nodes()))
        throw DataError("count table does not match the graph");

    MotifWeightedGraph mwg;
    mwg.num_nodes = g.num_nodes();
    mwg.rows.resize(g.num_nodes());
    mwg.strength.assign(g.num_nodes(), 0.0);
    bool any = false;
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
        const auto& entries = table.entries[e];
        auto it = std::lower_bound(entries.begin(), entries.end(), key,
                                   [](const CountEntry& a, Hash h) { return a.hash < h; });
        if (it == entries.end() || it->hash != key) continue;
        const EdgeId id = g.edge(e);
        const double wgt = static_cast<double>(it->count);
        mwg.rows[id.u].emplace_back(id.v, wgt);
        mwg.rows[id.v].emplace_back(id.u, wgt);
        mwg.strength[id.u] += wgt;
        mwg.strength[id.v] += wgt;
        any = true;
    }
    if (!any) {
        std::vector<Hash> seen;
        for (const auto& entries : table.entries)
            for (const CountEntry& entry : entries) seen.push_back(entry.hash);
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        std::string msg = "key " + std::to_string(key) + " occurs on no edge; present keys:";
        for (std::size_t i = 0; i < seen.size() && i < 40; ++i)
            msg += ' ' + std::to_string(seen[i]);
        if (seen.size() > 40) msg += " ...";
        throw DataError(msg);
    }

    mwg.component.assign(g.num_nodes(), -1);
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < g.num_nodes(); ++s) {
        if (mwg.component[s] >= 0) continue;
        const int comp = static_cast<int>(mwg.component_size.size());
        mwg.component_size.push_back(0);
        mwg.component[s] = comp;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            ++mwg.component_size[comp];
            for (const auto& [w, _] : mwg.rows[v]) {
                if (mwg.component[w] < 0) {
                    mwg.component[w] = comp;
                    stack.push_back(w);
                }
            }
        }
    }
    return mwg;
}

EmbedResult embed(const MotifWeightedGraph& mwg, int dim) {
    if (dim < 1) throw DataError("embedding dimension must be >= 1");
    const NodeId n = mwg.num_nodes;
    bool any_edges = false;
    for (NodeId v = 0; v < n; ++v)
        if (!mwg.rows[v].empty()) any_edges = true;
    if (!any_edges) throw DataError("motif-weighted graph has no edges to embed");

    EmbedResult result;
    EmbeddingMatrix& z = result.matrix;
    z.num_nodes = n;
    z.dim = dim;
    z.values.assign(static_cast<std::size_t>(n) * dim, 0.0);

    // Group non-isolated nodes per component.
    const int ncomp = static_cast<int>(mwg.component_size.size());
    std::vector<std::vector<NodeId>> members(ncomp);
    for (NodeId v = 0; v < n; ++v)
        if (!mwg.isolated(v)) members[mwg.component[v]].push_back(v);

    std::vector<int> jobs;
    for (int c = 0; c < ncomp; ++c)
        if (members[c].size() >= 2) jobs.push_back(c);
    result.spectra.resize(jobs.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::size_t jidx = 0; jidx < jobs.size(); ++jidx) {
        const int c = jobs[jidx];
        const auto& nodes = members[c];
        const int size = static_cast<int>(nodes.size());
        const int n_eig = std::min(dim, size);
        std::vector<int> local(mwg.num_nodes, -1);
        for (int x = 0; x < size; ++x) local[nodes[x]] = x;

        ComponentSolve solved;
        if (size <= kDenseLimit) {
            Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(size, size);
            for (int x = 0; x < size; ++x)
                for (const auto& [w, wgt] : mwg.rows[nodes[x]]) {
                    const int y = local[w];
                    lap(x, y) -= wgt / std::sqrt(mwg.strength[nodes[x]] * mwg.strength[w]);
                }
            solved = solve_dense(lap, n_eig);
        } else {
            std::vector<Eigen::Triplet<double>> trip;
            trip.reserve(nodes.size() * 4);
            for (int x = 0; x < size; ++x) {
                trip.emplace_back(x, x, 1.0);
                for (const auto& [w, wgt] : mwg.rows[nodes[x]])
                    trip.emplace_back(x, local[w],
                                      -wgt / std::sqrt(mwg.strength[nodes[x]] * mwg.strength[w]));
            }
            Eigen::SparseMatrix<double> lap(size, size);
            lap.setFromTriplets(trip.begin(), trip.end());
            solved = solve_sparse(lap, n_eig, static_cast<std::uint64_t>(nodes[0]) + 1);
        }

        result.spectra[jidx] = {c, solved.eigenvalues, solved.residuals};
        for (int x = 0; x < size; ++x) {
            double norm2 = 0.0;
            for (int d = 0; d < n_eig; ++d) norm2 += solved.vectors(x, d) * solved.vectors(x, d);
            const double norm = std::sqrt(norm2);
            if (norm == 0.0) continue;
            for (int d = 0; d < n_eig; ++d)
                z.values[static_cast<std::size_t>(nodes[x]) * dim + d] =
                    solved.vectors(x, d) / norm;
        }
    }
    return result;
}

void write_embedding(const EmbeddingMatrix& z, const HeteroGraph& g, const std::string& path) {
    if (z.num_nodes != g.num_nodes()) throw DataError("embedding does not match the graph");
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path);
    out << std::setprecision(12);
    for (NodeId v = 0; v < z.num_nodes; ++v) {
        out << g.original_id(v);
        for (int d = 0; d < z.dim; ++d) out << ' ' << z.at(v, d);
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace tgc
