#include "trifree/params.hpp"

#include <cmath>
#include <stdexcept>

namespace trifree {

namespace {

constexpr double pi = 3.14159265358979323846;

/// Golden-section maximiser for unimodal f on [lo, hi].
template <class F>
double golden_max(F f, double lo, double hi, double tol) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return (a + b) / 2;
}

}  // namespace

std::pair<double, double> gw_constants() {
    // The argmax of (1 - cos t) / t solves t sin t + cos t = 1; Newton
    // from the middle of the bracket lands on it at machine precision.
    static const std::pair<double, double> cached = [] {
        double t = 2.3;
        for (int i = 0; i < 60; ++i) {
            double g = t * std::sin(t) + std::cos(t) - 1.0;
            double dg = t * std::cos(t);
            double step = g / dg;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        double alpha = (2.0 / pi) * t / (1.0 - std::cos(t));
        return std::pair<double, double>(alpha, t);
    }();
    return cached;
}

double x_of_tau(double tau) {
    if (!(tau >= 0.0 && tau < 2.0 * pi))
        throw std::invalid_argument("x_of_tau: tau outside [0, 2*pi)");
    double u = pi - tau / 2.0;
    return (1.0 - std::cos(u)) / u;
}

double alpha_cap_long(double tau) {
    double x = x_of_tau(tau);
    double s = std::asin(x);
    return 2.0 / (x * s + std::cos(s) + 1.0);
}

double alpha_cap_middle(double tau) {
    return (2.0 / pi) * tau / (1.0 - std::cos(tau));
}

RoundingParams hybrid_params() {
    RoundingParams p;
    p.tau = tau_anchor;
    p.alpha = std::min(alpha_cap_long(p.tau), alpha_cap_middle(p.tau));
    p.p_case1 = p.alpha * (pi / 2.0) * x_of_tau(p.tau);
    p.q_case2 = 1.0 - p.p_case1;
    return p;
}

std::pair<double, double> optimize_tau(double search_tolerance) {
    auto h = [](double tau) { return std::min(alpha_cap_long(tau), alpha_cap_middle(tau)); };
    double lo = 2.0 * pi / 3.0;
    double hi = gw_constants().second;
    double tau_star = golden_max(h, lo, hi, search_tolerance);
    return {tau_star, h(tau_star)};
}

ConstraintReport verify_constraints(const RoundingParams& params, int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("verify_constraints: need at least 2 grid points");
    ConstraintReport report;
    report.grid_points = grid_points;

    const double bands_lo[3] = {params.tau, pi - params.tau / 2.0, 0.0};
    const double bands_hi[3] = {pi, params.tau, pi - params.tau / 2.0};
    for (int band = 0; band < 3; ++band) {
        ConstraintMargin m{1e300, bands_lo[band]};
        for (int i = 0; i < grid_points; ++i) {
            double angle = bands_lo[band] +
                           (bands_hi[band] - bands_lo[band]) * i / (grid_points - 1);
            double lhs = 0;
            switch (band) {
                case 0: lhs = params.p_case1 * angle / pi + params.q_case2; break;
                case 1: lhs = angle / pi; break;
                case 2: lhs = params.p_case1 * angle / pi; break;
            }
            double margin = lhs - params.alpha * (1.0 - std::cos(angle)) / 2.0;
            if (margin < m.min_margin) {
                m.min_margin = margin;
                m.argmin_angle = angle;
            }
            if (margin < -1e-12) report.violations.push_back({angle, margin});
        }
        report.bands[band] = m;
    }
    return report;
}

}  // namespace trifree
