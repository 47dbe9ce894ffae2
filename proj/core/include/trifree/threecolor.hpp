#pragma once

#include <cstdint>
#include <vector>

#include "trifree/derand.hpp"
#include "trifree/graph.hpp"
#include "trifree/sdp.hpp"

namespace trifree {

/// Vertex colours in {1, 2, 3}.
struct ThreeColouring {
    std::vector<int> colour;
};

struct GaussianTriple {
    std::vector<double> a1, a2, a3;
};

/// Cheng's closed form for the quadrivariate orthant probability
/// Pr[u1, u2, u3, u4 >= 0] under the covariance with unit diagonal,
/// cov(u1,u2) = cov(u3,u4) = a, cov(u1,u3) = cov(u2,u4) = b and
/// cov(u1,u4) = cov(u2,u3) = ab.
double cheng_orthant(double a, double b);

/// P(alpha) = Pr[two endpoints at inner product alpha both pick label 1]
///          = cheng_orthant(1/2, alpha), in closed form.
double p_alpha(double alpha);

/// f(alpha) = 1 - 3 P(alpha) - (1 - alpha)/2; nonnegative on [-1, 1],
/// which is exactly "properly coloured at least as often as cut".
double f_margin(double alpha);

/// colour(u) = argmax_i x_u . a_i, ties to the smallest index.
ThreeColouring round_three(const Embedding& emb, const GaussianTriple& gt);

std::int64_t colouring_weight(const Multigraph& g, const ThreeColouring& c);

/// The event "u gets colour_u and v gets colour_v" as one conjunction of
/// four strict half-spaces over the stacked Gaussian (a1, a2, a3) in
/// dimension 3 * rank; weight = edge multiplicity.
HalfSpaceTerm edge_event_halfspaces(const Embedding& emb, int u, int v,
                                    int colour_u, int colour_v, std::int64_t mult);

/// All 6m proper-colouring terms of a graph; its expectation is the
/// expected properly coloured weight.
HalfSpaceSystem colour_system(const Multigraph& g, const Embedding& emb);

enum class ThreeColourMode {
    restarts,      ///< resample Gaussian triples until the certificate is hit
    derandomised,  ///< conditional-expectation derandomiser over 3*rank coordinates
};

struct ThreeColourResult {
    ThreeColouring colouring;
    std::int64_t satisfied_weight = 0;
    double sdp_bound = 0;   ///< relaxation objective reached by the solver
    bool certified = false; ///< satisfied_weight reached floor(sdp_bound + 1/3)
    long restarts_used = 0;
};

/// If g has a cut of weight rho, the returned colouring satisfies
/// weight >= rho: expectation >= sdp - 1/3 plus integrality.
/// In restart mode budget counts restarts (<= 0 means 200 * total
/// weight); in derandomised mode it is the atom budget (<= 0 sizes it
/// to the system).  grid_flips <= 0 means the derand default.  Throws
/// std::invalid_argument on empty input.
ThreeColourResult solve_k2_k3(const Multigraph& g, ThreeColourMode mode,
                              long budget, std::uint64_t seed, int grid_flips = 0);

}  // namespace trifree
