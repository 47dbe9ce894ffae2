#include "trifree/rounding.hpp"

#include <cmath>
#include <stdexcept>

#include "trifree/random.hpp"

namespace trifree {

RoundingOutcome make_outcome(const Multigraph& g, EdgeSelection selection, RoundingCase case_used) {
    if (!is_triangle_free(g, selection))
        throw std::logic_error("rounding produced a triangle");
    RoundingOutcome outcome;
    outcome.weight = selection_weight(g, selection);
    outcome.selection = std::move(selection);
    outcome.case_used = case_used;
    return outcome;
}

Hyperplane sample_hyperplane(int rank, std::uint64_t seed) {
    Hyperplane h;
    h.normal.resize(rank);
    Rng rng(seed);
    bool nonzero = false;
    while (!nonzero) {
        for (double& x : h.normal) {
            x = rng.next_gaussian();
            nonzero |= x != 0.0;
        }
    }
    return h;
}

bool positive_side(const Embedding& emb, int u, const Hyperplane& h) {
    const double* row = emb.row(u);
    double dot = 0;
    for (int i = 0; i < emb.rank; ++i) dot += row[i] * h.normal[i];
    return dot >= 0.0;
}

RoundingOutcome round_gw(const Multigraph& g, const Embedding& emb, const Hyperplane& h) {
    std::vector<char> side(g.vertex_count());
    for (int u = 0; u < g.vertex_count(); ++u) side[u] = positive_side(emb, u, h);
    EdgeSelection sel(g.support_size());
    const auto& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (side[edges[i].u] != side[edges[i].v]) sel.set(i);
    return make_outcome(g, std::move(sel), RoundingCase::gw_cut);
}

RoundingOutcome round_hybrid_case_b(const Multigraph& g, const Embedding& emb,
                                    const RoundingParams& params, const Hyperplane& h) {
    EdgeSelection sel(g.support_size());
    const auto& edges = g.edges();
    double middle_lo = 3.14159265358979323846 - params.tau / 2.0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        double angle = pairwise_angle(emb, edges[i].u, edges[i].v);
        if (angle >= params.tau) {
            sel.set(i);
        } else if (angle >= middle_lo &&
                   positive_side(emb, edges[i].u, h) != positive_side(emb, edges[i].v, h)) {
            sel.set(i);
        }
    }
    return make_outcome(g, std::move(sel), RoundingCase::long_edge);
}

RoundingOutcome round_hybrid(const Multigraph& g, const Embedding& emb,
                             const RoundingParams& params, std::uint64_t seed) {
    if (g.support_size() == 0)
        return make_outcome(g, EdgeSelection(0), RoundingCase::gw_cut);
    Rng coin(derive_seed(seed, 0));
    if (coin.next_unit() < params.p_case1)
        return round_gw(g, emb, sample_hyperplane(emb.rank, derive_seed(seed, 1)));
    return round_hybrid_case_b(g, emb, params, sample_hyperplane(emb.rank, derive_seed(seed, 2)));
}

double inclusion_probability(double angle, const RoundingParams& params) {
    if (!(angle >= 0.0 && angle <= 3.14159265358979323846 + 1e-12))
        throw std::invalid_argument("inclusion_probability: angle outside [0, pi]");
    const double pi = 3.14159265358979323846;
    if (angle >= params.tau) return params.p_case1 * angle / pi + params.q_case2;
    if (angle >= pi - params.tau / 2.0) return angle / pi;
    return params.p_case1 * angle / pi;
}

namespace {

/// The two disjoint orientations of "the hyperplane separates u and v",
/// each a conjunction of two strict half-spaces over the normal.
void add_separation_terms(HalfSpaceSystem& sys, const Embedding& emb, int u, int v, double weight) {
    int rank = emb.rank;
    HalfSpaceTerm pos_neg, neg_pos;
    pos_neg.weight = weight;
    neg_pos.weight = weight;
    HalfSpace u_pos, u_neg, v_pos, v_neg;
    u_pos.normal.assign(emb.row(u), emb.row(u) + rank);
    v_pos.normal.assign(emb.row(v), emb.row(v) + rank);
    u_neg.normal.resize(rank);
    v_neg.normal.resize(rank);
    for (int i = 0; i < rank; ++i) {
        u_neg.normal[i] = -u_pos.normal[i];
        v_neg.normal[i] = -v_pos.normal[i];
    }
    pos_neg.constraints = {u_pos, v_neg};
    neg_pos.constraints = {u_neg, v_pos};
    sys.terms.push_back(std::move(pos_neg));
    sys.terms.push_back(std::move(neg_pos));
}

}  // namespace

HalfSpaceSystem gw_separation_system(const Multigraph& g, const Embedding& emb) {
    HalfSpaceSystem sys;
    sys.dimension = emb.rank;
    for (const Edge& e : g.edges())
        add_separation_terms(sys, emb, e.u, e.v, static_cast<double>(e.mult));
    return sys;
}

HalfSpaceSystem case_b_separation_system(const Multigraph& g, const Embedding& emb,
                                         const RoundingParams& params) {
    HalfSpaceSystem sys;
    sys.dimension = emb.rank;
    double middle_lo = 3.14159265358979323846 - params.tau / 2.0;
    for (const Edge& e : g.edges()) {
        double angle = pairwise_angle(emb, e.u, e.v);
        if (angle >= middle_lo && angle < params.tau)
            add_separation_terms(sys, emb, e.u, e.v, static_cast<double>(e.mult));
    }
    return sys;
}

RoundingOutcome derandomised_round(const Multigraph& g, const Embedding& emb,
                                   const RoundingParams& params, const DerandConfig& cfg) {
    if (g.support_size() == 0)
        return make_outcome(g, EdgeSelection(0), RoundingCase::derandomised);

    DerandResult cut = derandomize(gw_separation_system(g, emb), cfg.n_flips, cfg.atom_budget);
    RoundingOutcome from_cut = round_gw(g, emb, Hyperplane{cut.a_star});

    DerandResult sep = derandomize(case_b_separation_system(g, emb, params),
                                   cfg.n_flips, cfg.atom_budget);
    RoundingOutcome from_threshold = round_hybrid_case_b(g, emb, params, Hyperplane{sep.a_star});

    EdgeSelection best = from_cut.weight >= from_threshold.weight ? from_cut.selection
                                                                  : from_threshold.selection;
    return make_outcome(g, std::move(best), RoundingCase::derandomised);
}

}  // namespace trifree
