#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "trifree/graph.hpp"

namespace trifree {

/// Unit-vector embedding of the vertices: n rows of rank-k vectors,
/// row-major.  Every row has Euclidean norm 1 (within 1e-9).
struct Embedding {
    int n = 0;
    int rank = 0;
    std::vector<double> data;

    Embedding() = default;
    Embedding(int n_, int rank_) : n(n_), rank(rank_), data(static_cast<std::size_t>(n_) * rank_, 0.0) {}

    double* row(int u) { return data.data() + static_cast<std::size_t>(u) * rank; }
    const double* row(int u) const { return data.data() + static_cast<std::size_t>(u) * rank; }

    double dot(int u, int v) const {
        const double* a = row(u);
        const double* b = row(v);
        double s = 0;
        for (int i = 0; i < rank; ++i) s += a[i] * b[i];
        return s;
    }
};

struct SdpReport {
    double objective = 0;
    long iterations = 0;  ///< full coordinate sweeps, summed over restarts
    bool converged = false;
    double tolerance = 0;
    int restarts = 0;
};

/// Factorisation rank min(n, ceil(sqrt(2n)) + 1), large enough that the
/// low-rank formulation is not an obstruction at these sizes.
int mixing_rank(int n);

/// Rows drawn uniformly from the unit sphere.
Embedding random_embedding(int n, int rank, std::uint64_t seed);

/// Weighted relaxation objective sum mult * (1 - x_u . x_v) / 2.
double sdp_objective(const Multigraph& g, const Embedding& emb);

/// arccos of the clamped dot product, in [0, pi].
double pairwise_angle(const Embedding& emb, int u, int v);

/// One coordinate-ascent pass: each vertex vector is replaced by the
/// negated, normalised, multiplicity-weighted sum of its neighbours'
/// vectors (zero sums keep the previous vector).  Returns the objective
/// after the pass; never decreases it.
double mixing_sweep(const Multigraph& g, Embedding& emb);

/// Solve the Max-Cut relaxation to additive accuracy eps.  Stops when
/// the relative objective change over a full sweep drops below
/// eps / (10 * total weight); hard cap 1e5 sweeps, up to 5 restarts with
/// derived seeds.  On total failure returns the best embedding found
/// with report.converged = false.  Throws std::invalid_argument when g
/// has no edges or eps <= 0.
std::pair<Embedding, SdpReport> solve_maxcut_sdp(const Multigraph& g, double eps, std::uint64_t seed);

/// Text matrix, one row per vertex.
std::string serialise_embedding(const Embedding& emb);
Embedding parse_embedding(std::istream& in);
Embedding parse_embedding_file(const std::string& path);

}  // namespace trifree
