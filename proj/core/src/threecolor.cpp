#include "trifree/threecolor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "trifree/random.hpp"

namespace trifree {

namespace {

constexpr double pi = 3.14159265358979323846;

// The integrality certificate budgets additive SDP error 1/3; the solver
// is run tighter than that so the budget is spent on the threshold alone.
constexpr double internal_sdp_eps = 0.01;

// satisfied_weight >= floor(objective + 1/3) certifies the contract; the
// 1e-9 absorbs float dust when the objective sits at an integer.
std::int64_t certificate_threshold(double objective) {
    return static_cast<std::int64_t>(std::floor(objective + 1.0 / 3.0 + 1e-9));
}

GaussianTriple sample_triple(Rng& rng, int rank) {
    GaussianTriple gt;
    gt.a1.resize(rank);
    gt.a2.resize(rank);
    gt.a3.resize(rank);
    for (int k = 0; k < rank; ++k) gt.a1[k] = rng.next_gaussian();
    for (int k = 0; k < rank; ++k) gt.a2[k] = rng.next_gaussian();
    for (int k = 0; k < rank; ++k) gt.a3[k] = rng.next_gaussian();
    return gt;
}

GaussianTriple split_triple(const std::vector<double>& a, int rank) {
    GaussianTriple gt;
    gt.a1.assign(a.begin(), a.begin() + rank);
    gt.a2.assign(a.begin() + rank, a.begin() + 2 * rank);
    gt.a3.assign(a.begin() + 2 * rank, a.begin() + 3 * rank);
    return gt;
}

// Grid atoms a full derandomisation pass could need per coordinate, so
// the budget <= 0 default never trips on its own system.
std::int64_t auto_atom_budget(const HalfSpaceSystem& sys, int flips) {
    double per_term = 1;
    for (int i = 0; i < sys.max_arity(); ++i) per_term *= flips + 1;
    const double total = per_term * static_cast<double>(sys.terms.size());
    if (total > 4.0e18) return std::int64_t{4'000'000'000'000'000'000};
    const auto bound = static_cast<std::int64_t>(total) + 1;
    return std::max<std::int64_t>(bound, default_atom_budget);
}

}  // namespace

double cheng_orthant(double a, double b) {
    const double sa = std::asin(a);
    const double sb = std::asin(b);
    const double sab = std::asin(a * b);
    return 1.0 / 16.0 + (sa + sb + sab) / (4.0 * pi)
         + (sa * sa + sb * sb - sab * sab) / (4.0 * pi * pi);
}

double p_alpha(double alpha) {
    const double s1 = std::asin(alpha);
    const double s2 = std::asin(alpha / 2.0);
    return 1.0 / 9.0 + (s1 + s2) / (4.0 * pi) + (s1 * s1 - s2 * s2) / (4.0 * pi * pi);
}

double f_margin(double alpha) {
    return 1.0 - 3.0 * p_alpha(alpha) - (1.0 - alpha) / 2.0;
}

ThreeColouring round_three(const Embedding& emb, const GaussianTriple& gt) {
    const std::vector<double>* axes[3] = {&gt.a1, &gt.a2, &gt.a3};
    ThreeColouring out;
    out.colour.assign(emb.n, 1);
    for (int u = 0; u < emb.n; ++u) {
        const double* x = emb.row(u);
        double best = 0;
        int pick = 0;
        for (int i = 0; i < 3; ++i) {
            double s = 0;
            for (int k = 0; k < emb.rank; ++k) s += x[k] * (*axes[i])[k];
            if (i == 0 || s > best) {
                best = s;
                pick = i;
            }
        }
        out.colour[u] = pick + 1;
    }
    return out;
}

std::int64_t colouring_weight(const Multigraph& g, const ThreeColouring& c) {
    std::int64_t w = 0;
    for (const Edge& e : g.edges())
        if (c.colour[e.u] != c.colour[e.v]) w += e.mult;
    return w;
}

HalfSpaceTerm edge_event_halfspaces(const Embedding& emb, int u, int v,
                                    int colour_u, int colour_v, std::int64_t mult) {
    const int rank = emb.rank;
    const int dim = 3 * rank;
    HalfSpaceTerm term;
    term.weight = static_cast<double>(mult);
    auto dominates = [&](int vertex, int winner, int loser) {
        HalfSpace h;
        h.normal.assign(dim, 0.0);
        const double* x = emb.row(vertex);
        for (int k = 0; k < rank; ++k) {
            h.normal[(winner - 1) * rank + k] += x[k];
            h.normal[(loser - 1) * rank + k] -= x[k];
        }
        return h;
    };
    for (int i = 1; i <= 3; ++i)
        if (i != colour_u) term.constraints.push_back(dominates(u, colour_u, i));
    for (int i = 1; i <= 3; ++i)
        if (i != colour_v) term.constraints.push_back(dominates(v, colour_v, i));
    return term;
}

HalfSpaceSystem colour_system(const Multigraph& g, const Embedding& emb) {
    HalfSpaceSystem sys;
    sys.dimension = 3 * emb.rank;
    sys.terms.reserve(6 * g.support_size());
    for (const Edge& e : g.edges())
        for (int cu = 1; cu <= 3; ++cu)
            for (int cv = 1; cv <= 3; ++cv)
                if (cu != cv)
                    sys.terms.push_back(edge_event_halfspaces(emb, e.u, e.v, cu, cv, e.mult));
    return sys;
}

ThreeColourResult solve_k2_k3(const Multigraph& g, ThreeColourMode mode,
                              long budget, std::uint64_t seed, int grid_flips) {
    if (g.edges().empty()) throw std::invalid_argument("solve_k2_k3: graph has no edges");

    auto [emb, report] = solve_maxcut_sdp(g, internal_sdp_eps, derive_seed(seed, 0));
    ThreeColourResult out;
    out.sdp_bound = report.objective;
    const std::int64_t target = certificate_threshold(report.objective);

    if (mode == ThreeColourMode::derandomised) {
        const HalfSpaceSystem sys = colour_system(g, emb);
        const int flips = grid_flips > 0 ? grid_flips : default_grid_flips;
        const std::int64_t atoms = budget > 0 ? budget : auto_atom_budget(sys, flips);
        const DerandResult dr = derandomize(sys, flips, atoms);
        out.colouring = round_three(emb, split_triple(dr.a_star, emb.rank));
        out.satisfied_weight = colouring_weight(g, out.colouring);
        out.certified = out.satisfied_weight >= target;
        return out;
    }

    const long restarts = budget > 0 ? budget : static_cast<long>(200 * g.total_weight());
    std::int64_t best = -1;
    for (long r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, 1 + static_cast<std::uint64_t>(r)));
        ThreeColouring c = round_three(emb, sample_triple(rng, emb.rank));
        const std::int64_t w = colouring_weight(g, c);
        ++out.restarts_used;
        if (w > best) {
            best = w;
            out.colouring = std::move(c);
        }
        if (best >= target) break;
    }
    out.satisfied_weight = best;
    out.certified = best >= target;
    return out;
}

}  // namespace trifree
