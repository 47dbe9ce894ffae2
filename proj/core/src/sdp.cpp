#include "trifree/sdp.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "trifree/random.hpp"

namespace trifree {

int mixing_rank(int n) {
    if (n <= 0) return 0;
    int k = static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1;
    return std::min(n, k);
}

namespace {

void normalise_row(double* row, int rank) {
    double norm = 0;
    for (int i = 0; i < rank; ++i) norm += row[i] * row[i];
    norm = std::sqrt(norm);
    if (norm == 0.0) {
        row[0] = 1.0;
        return;
    }
    for (int i = 0; i < rank; ++i) row[i] /= norm;
}

}  // namespace

Embedding random_embedding(int n, int rank, std::uint64_t seed) {
    Embedding emb(n, rank);
    Rng rng(seed);
    for (int u = 0; u < n; ++u) {
        double* row = emb.row(u);
        for (int i = 0; i < rank; ++i) row[i] = rng.next_gaussian();
        normalise_row(row, rank);
    }
    return emb;
}

double sdp_objective(const Multigraph& g, const Embedding& emb) {
    double obj = 0;
    for (const Edge& e : g.edges())
        obj += static_cast<double>(e.mult) * (1.0 - emb.dot(e.u, e.v)) / 2.0;
    return obj;
}

double pairwise_angle(const Embedding& emb, int u, int v) {
    double d = emb.dot(u, v);
    if (d > 1.0) d = 1.0;
    if (d < -1.0) d = -1.0;
    return std::acos(d);
}

double mixing_sweep(const Multigraph& g, Embedding& emb) {
    std::vector<double> sum(emb.rank);
    for (int u = 0; u < emb.n; ++u) {
        const auto& nb = g.neighbours(u);
        if (nb.empty()) continue;
        std::fill(sum.begin(), sum.end(), 0.0);
        for (const auto& [v, mult] : nb) {
            const double* row = emb.row(v);
            double w = static_cast<double>(mult);
            for (int i = 0; i < emb.rank; ++i) sum[i] += w * row[i];
        }
        double norm = 0;
        for (int i = 0; i < emb.rank; ++i) norm += sum[i] * sum[i];
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        double* row = emb.row(u);
        for (int i = 0; i < emb.rank; ++i) row[i] = -sum[i] / norm;
    }
    return sdp_objective(g, emb);
}

std::pair<Embedding, SdpReport> solve_maxcut_sdp(const Multigraph& g, double eps, std::uint64_t seed) {
    if (g.support_size() == 0) throw std::invalid_argument("solve_maxcut_sdp: graph has no edges");
    if (eps <= 0) throw std::invalid_argument("solve_maxcut_sdp: eps must be positive");

    const int max_sweeps = 100000;
    const int max_restarts = 5;
    const double tol = eps / (10.0 * static_cast<double>(g.total_weight()));
    int rank = mixing_rank(g.vertex_count());

    SdpReport report;
    report.tolerance = tol;
    Embedding best;
    double best_obj = -1;

    for (int restart = 0; restart < max_restarts; ++restart) {
        report.restarts = restart + 1;
        Embedding emb = random_embedding(g.vertex_count(), rank, derive_seed(seed, restart));
        double obj = sdp_objective(g, emb);
        bool converged = false;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            double next = mixing_sweep(g, emb);
            ++report.iterations;
            double rel = (next - obj) / std::max(next, 1e-300);
            obj = next;
            if (std::abs(rel) < tol) {
                converged = true;
                break;
            }
        }
        if (obj > best_obj) {
            best_obj = obj;
            best = emb;
        }
        if (converged) {
            report.converged = true;
            break;
        }
    }
    report.objective = best_obj;
    return {std::move(best), report};
}

std::string serialise_embedding(const Embedding& emb) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << emb.n << ' ' << emb.rank << '\n';
    for (int u = 0; u < emb.n; ++u) {
        const double* row = emb.row(u);
        for (int i = 0; i < emb.rank; ++i) out << (i ? " " : "") << row[i];
        out << '\n';
    }
    return out.str();
}

Embedding parse_embedding(std::istream& in) {
    int n = 0, rank = 0;
    if (!(in >> n >> rank) || n < 0 || rank < 0)
        throw std::runtime_error("embedding: malformed header");
    Embedding emb(n, rank);
    for (std::size_t i = 0; i < emb.data.size(); ++i)
        if (!(in >> emb.data[i])) throw std::runtime_error("embedding: truncated matrix");
    return emb;
}

Embedding parse_embedding_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_embedding(in);
}

}  // namespace trifree
