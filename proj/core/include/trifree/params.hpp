#pragma once

#include <array>
#include <utility>
#include <vector>

namespace trifree {

/// The hybrid rounding tuple: coin bias p_case1 for the plain
/// hyperplane cut, q_case2 = 1 - p_case1 for the long-edge branch, the
/// angle threshold tau, and the guarantee alpha they certify.
struct RoundingParams {
    double alpha = 0;
    double tau = 0;
    double p_case1 = 0;
    double q_case2 = 0;
};

/// Published digits kept as regression anchors next to the freshly
/// optimised values.
inline constexpr double tau_anchor = 2.18746;
inline constexpr double alpha_floor_anchor = 0.88232;

/// (alpha_gw, tau_gw): the hyperplane-rounding constant as the
/// reciprocal of max over [0, pi] of f(t) = (pi/2)(1 - cos t)/t, and
/// its argmax.
std::pair<double, double> gw_constants();

/// X(tau) = (1 - cos(pi - tau/2)) / (pi - tau/2).
/// Throws std::invalid_argument for tau outside [0, 2*pi).
double x_of_tau(double tau);

/// Upper bounds on alpha imposed by the two binding constraint
/// families: the long-edge family, tightest at theta = pi - arcsin X,
/// and the middle-band family, tightest at phi = tau.
double alpha_cap_long(double tau);
double alpha_cap_middle(double tau);

/// tau = tau_anchor; alpha = min of the two caps there;
/// p_case1 = alpha * (pi/2) * X(tau); q_case2 = 1 - p_case1.
RoundingParams hybrid_params();

/// Maximise min(alpha_cap_long, alpha_cap_middle) over
/// tau in [2*pi/3, tau_gw] by golden-section search.
/// Returns (tau_star, alpha_star).
std::pair<double, double> optimize_tau(double search_tolerance);

struct ConstraintMargin {
    double min_margin = 0;
    double argmin_angle = 0;
};

/// Grid check of the three inclusion-probability inequalities.
/// bands[0]: theta in [tau, pi] where P*theta/pi + Q must dominate;
/// bands[1]: phi in [pi - tau/2, tau], phi/pi dominates;
/// bands[2]: psi in [0, pi - tau/2], P*psi/pi dominates;
/// each against alpha * (1 - cos angle) / 2.  Endpoints included.
/// violations lists grid angles with margin < 0 beyond fp noise (1e-12).
struct ConstraintReport {
    std::array<ConstraintMargin, 3> bands;
    int grid_points = 0;
    std::vector<std::pair<double, double>> violations;  // (angle, margin)
};

ConstraintReport verify_constraints(const RoundingParams& params, int grid_points);

}  // namespace trifree
