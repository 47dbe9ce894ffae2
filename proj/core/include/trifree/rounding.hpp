#pragma once

#include <cstdint>

#include "trifree/derand.hpp"
#include "trifree/graph.hpp"
#include "trifree/params.hpp"
#include "trifree/sdp.hpp"

namespace trifree {

struct Hyperplane {
    std::vector<double> normal;  ///< nonzero, dimension = embedding rank
};

enum class RoundingCase {
    gw_cut,        ///< plain hyperplane cut
    long_edge,     ///< threshold branch: long edges plus separated middle band
    derandomised,  ///< deterministic hyperplane choice for both branches
};

/// A triangle-free selection with its weight.  Construct through
/// make_outcome, which asserts triangle-freeness and treats a violation
/// as a bug (std::logic_error), never silently.
struct RoundingOutcome {
    EdgeSelection selection;
    std::int64_t weight = 0;
    RoundingCase case_used = RoundingCase::gw_cut;
};

RoundingOutcome make_outcome(const Multigraph& g, EdgeSelection selection, RoundingCase case_used);

/// i.i.d. standard normal coordinates: a rotation-invariant direction.
Hyperplane sample_hyperplane(int rank, std::uint64_t seed);

/// Side of the hyperplane; dot products of exactly 0 count as positive,
/// fixed deterministically for reproducibility.
bool positive_side(const Embedding& emb, int u, const Hyperplane& h);

/// Cut rounding: keep the edges whose endpoints fall on opposite sides.
RoundingOutcome round_gw(const Multigraph& g, const Embedding& emb, const Hyperplane& h);

/// Threshold branch: keep every edge with angle >= tau, plus the edges
/// with angle in [pi - tau/2, tau) separated by h.  Triangle-free by
/// the angle-sum argument; post-asserted regardless.
RoundingOutcome round_hybrid_case_b(const Multigraph& g, const Embedding& emb,
                                    const RoundingParams& params, const Hyperplane& h);

/// Biased coin: with probability p_case1 the cut branch, else the
/// threshold branch, fresh hyperplane either way.
RoundingOutcome round_hybrid(const Multigraph& g, const Embedding& emb,
                             const RoundingParams& params, std::uint64_t seed);

/// Probability that the hybrid scheme keeps an edge at the given angle:
/// P*angle/pi + Q on [tau, pi]; angle/pi on [pi - tau/2, tau);
/// P*angle/pi on [0, pi - tau/2).
double inclusion_probability(double angle, const RoundingParams& params);

struct DerandConfig {
    int n_flips = default_grid_flips;
    std::int64_t atom_budget = default_atom_budget;
};

/// Half-space systems whose expectations are the two branches' expected
/// weights: for the cut branch every support edge contributes the union
/// of two 2-half-space terms; for the threshold branch only the
/// middle-band edges do (long edges are constant weight).
HalfSpaceSystem gw_separation_system(const Multigraph& g, const Embedding& emb);
HalfSpaceSystem case_b_separation_system(const Multigraph& g, const Embedding& emb,
                                         const RoundingParams& params);

/// Derandomised hybrid: pick a hyperplane deterministically for each
/// branch, evaluate both, return the heavier outcome.  Guaranteed
/// weight >= sum of inclusion probabilities minus the derandomiser's
/// slack at the configured grid.
RoundingOutcome derandomised_round(const Multigraph& g, const Embedding& emb,
                                   const RoundingParams& params,
                                   const DerandConfig& cfg = {});

}  // namespace trifree
