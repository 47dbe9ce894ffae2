#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trifree {

/// Strict half-space normal . a > threshold over a standard Gaussian
/// vector a.
struct HalfSpace {
    std::vector<double> normal;
    double threshold = 0;
};

/// Weighted conjunction of at most d half-spaces (d small, <= 6).
struct HalfSpaceTerm {
    double weight = 1;
    std::vector<HalfSpace> constraints;
};

/// sum over terms of weight * Pr[all constraints hold] is the quantity
/// the derandomiser tracks.
struct HalfSpaceSystem {
    int dimension = 0;
    std::vector<HalfSpaceTerm> terms;

    int max_arity() const;
    /// Exact weighted indicator sum at a concrete point.
    double indicator_sum(const std::vector<double>& a) const;
};

/// Piecewise-constant function given by strictly increasing breakpoints
/// and one value per plateau (values[i] on (breakpoints[i-1], breakpoints[i])).
/// Evaluation at a breakpoint returns the right plateau; the breakpoints
/// themselves are measure zero and never chosen by the optimiser.
struct StepFunction {
    std::vector<double> breakpoints;
    std::vector<double> values;

    double operator()(double t) const;

    static StepFunction constant(double value) { return {{}, {value}}; }

    /// Midpoint of the highest plateau (leftmost on ties); an unbounded
    /// best plateau yields its finite endpoint +/- 1, and a constant
    /// function yields 0.
    double best_point() const;
    double max_value() const;
};

/// The normalised binomial grid NBin(N): points (-N + 2k)/sqrt(N) with
/// masses C(N, k)/2^N, a mean-0 variance-1 stand-in for one Gaussian
/// coordinate.
struct BinomialGrid {
    int n_flips = 0;
    std::vector<double> points;
    std::vector<double> masses;

    static BinomialGrid make(int n_flips);
};

inline constexpr int default_grid_flips = 16;
inline constexpr std::int64_t default_atom_budget = 4'000'000;

/// Worst-case grid size certifying per-term error eps for terms of
/// arity d: ceil(((42 d^{7/4} + 16 d^{3/2}) / eps)^2).  Astronomically
/// conservative; kept as the honest theoretical bound.
std::int64_t berry_esseen_N(int d, double eps);

/// Replace up-to-d constraint normals over R^n by rows of a factor of
/// their Gram matrix, preserving the joint law of the dot products.
/// The output dimension is the Gram rank (<= d); rank deficiency is
/// handled by pivoted Cholesky with zero-column completion.
std::vector<HalfSpace> reduce_dimension(const std::vector<HalfSpace>& constraints);

struct AtomBudgetError : std::runtime_error {
    AtomBudgetError(std::int64_t required_, std::int64_t budget_);
    std::int64_t required;
    std::int64_t budget;
};

/// Grid estimate of Pr[all constraints hold] for a closed term (no
/// active coordinate): reduce dimension, then sum masses of satisfying
/// atoms of the product grid.
double grid_probability(const std::vector<HalfSpace>& constraints,
                        const BinomialGrid& grid,
                        std::int64_t atom_budget = default_atom_budget);

/// One term's view along the active coordinate t: per constraint the
/// frozen remainder (already-adjusted threshold included) and the
/// coefficient z of t.
struct CoordinateSlice {
    double weight = 1;
    std::vector<HalfSpace> frozen;
    std::vector<double> z;
};

/// Weighted grid approximation of t -> sum_i w_i Pr[term_i holds | t].
/// Each grid atom of a term contributes the indicator of an interval in
/// t: lower thresholds from constraints with z > 0, upper from z < 0,
/// and z = 0 constraints gate the atom as a constant.
StepFunction step_approximation(const std::vector<CoordinateSlice>& slices,
                                const BinomialGrid& grid,
                                std::int64_t atom_budget = default_atom_budget);

struct DerandResult {
    std::vector<double> a_star;
    double achieved = 0;  ///< exact weighted indicator sum at a_star
};

/// Conditional-expectation derandomisation: freeze coordinates in index
/// order, each time maximising the summed step approximation over the
/// current coordinate.  achieved is evaluated exactly on the original
/// system, never trusted from the grid.
DerandResult derandomize(const HalfSpaceSystem& system,
                         int n_flips = default_grid_flips,
                         std::int64_t atom_budget = default_atom_budget);

}  // namespace trifree
