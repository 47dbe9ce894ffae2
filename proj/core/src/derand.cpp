#include "trifree/derand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trifree {

int HalfSpaceSystem::max_arity() const {
    std::size_t d = 0;
    for (const auto& term : terms) d = std::max(d, term.constraints.size());
    return static_cast<int>(d);
}

double HalfSpaceSystem::indicator_sum(const std::vector<double>& a) const {
    double sum = 0;
    for (const auto& term : terms) {
        bool holds = true;
        for (const auto& hs : term.constraints) {
            double dot = 0;
            for (std::size_t i = 0; i < hs.normal.size(); ++i) dot += hs.normal[i] * a[i];
            if (!(dot > hs.threshold)) {
                holds = false;
                break;
            }
        }
        if (holds) sum += term.weight;
    }
    return sum;
}

double StepFunction::operator()(double t) const {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    return values[static_cast<std::size_t>(it - breakpoints.begin())];
}

double StepFunction::max_value() const {
    double best = values[0];
    for (double v : values) best = std::max(best, v);
    return best;
}

double StepFunction::best_point() const {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[arg]) arg = i;
    bool open_left = arg == 0;
    bool open_right = arg == breakpoints.size();
    if (open_left && open_right) return 0.0;
    if (open_left) return breakpoints.front() - 1.0;
    if (open_right) return breakpoints.back() + 1.0;
    return (breakpoints[arg - 1] + breakpoints[arg]) / 2.0;
}

BinomialGrid BinomialGrid::make(int n_flips) {
    if (n_flips < 1) throw std::invalid_argument("BinomialGrid: n_flips must be positive");
    BinomialGrid grid;
    grid.n_flips = n_flips;
    grid.points.resize(n_flips + 1);
    grid.masses.resize(n_flips + 1);
    double scale = std::sqrt(static_cast<double>(n_flips));
    double mass = std::ldexp(1.0, -n_flips);
    for (int k = 0; k <= n_flips; ++k) {
        grid.points[k] = (2.0 * k - n_flips) / scale;
        grid.masses[k] = mass;
        mass = mass * (n_flips - k) / (k + 1);
    }
    return grid;
}

std::int64_t berry_esseen_N(int d, double eps) {
    if (d < 1 || eps <= 0) throw std::invalid_argument("berry_esseen_N: bad arguments");
    double v = (42.0 * std::pow(d, 1.75) + 16.0 * std::pow(d, 1.5)) / eps;
    double n = std::ceil(v * v);
    if (n >= 9.2e18) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(n);
}

std::vector<HalfSpace> reduce_dimension(const std::vector<HalfSpace>& constraints) {
    int d = static_cast<int>(constraints.size());
    std::vector<std::vector<double>> gram(d, std::vector<double>(d, 0.0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j) {
            const auto &a = constraints[i].normal, &b = constraints[j].normal;
            std::size_t len = std::min(a.size(), b.size());
            double dot = 0;
            for (std::size_t k = 0; k < len; ++k) dot += a[k] * b[k];
            gram[i][j] = gram[j][i] = dot;
        }

    // Pivoted Cholesky: greedily peel off the largest residual
    // diagonal; stops at numerical rank.
    std::vector<std::vector<double>> factor(d);
    std::vector<double> residual(d);
    double max_diag = 0;
    for (int i = 0; i < d; ++i) {
        residual[i] = gram[i][i];
        max_diag = std::max(max_diag, residual[i]);
    }
    double tol = 1e-12 * (1.0 + max_diag);
    std::vector<char> used(d, 0);
    int rank = 0;
    for (int i = 0; i < d; ++i) factor[i].assign(d, 0.0);
    for (int step = 0; step < d; ++step) {
        int pivot = -1;
        double best = tol;
        for (int i = 0; i < d; ++i)
            if (!used[i] && residual[i] > best) {
                best = residual[i];
                pivot = i;
            }
        if (pivot < 0) break;
        used[pivot] = 1;
        double root = std::sqrt(residual[pivot]);
        factor[pivot][rank] = root;
        residual[pivot] = 0;
        for (int i = 0; i < d; ++i) {
            if (used[i]) continue;
            double v = gram[i][pivot];
            for (int r = 0; r < rank; ++r) v -= factor[i][r] * factor[pivot][r];
            v /= root;
            factor[i][rank] = v;
            residual[i] = std::max(0.0, residual[i] - v * v);
        }
        ++rank;
    }

    std::vector<HalfSpace> reduced(d);
    for (int i = 0; i < d; ++i) {
        reduced[i].normal.assign(factor[i].begin(), factor[i].begin() + rank);
        reduced[i].threshold = constraints[i].threshold;
    }
    return reduced;
}

AtomBudgetError::AtomBudgetError(std::int64_t required_, std::int64_t budget_)
    : std::runtime_error("atom budget exceeded: need " + std::to_string(required_) +
                         ", budget " + std::to_string(budget_)),
      required(required_),
      budget(budget_) {}

namespace {

std::int64_t atom_count(int grid_size, int dims) {
    std::int64_t atoms = 1;
    for (int i = 0; i < dims; ++i) {
        atoms *= grid_size;
        if (atoms > (std::int64_t{1} << 62) / grid_size) return std::numeric_limits<std::int64_t>::max();
    }
    return atoms;
}

/// Odometer over the product grid; calls f(point, mass) per atom.
template <class F>
void for_each_atom(const BinomialGrid& grid, int dims, F f) {
    std::vector<int> index(dims, 0);
    std::vector<double> point(dims);
    for (int i = 0; i < dims; ++i) point[i] = grid.points[0];
    for (;;) {
        double mass = 1;
        for (int i = 0; i < dims; ++i) mass *= grid.masses[index[i]];
        f(point, mass);
        int pos = dims - 1;
        while (pos >= 0 && index[pos] == grid.n_flips) {
            index[pos] = 0;
            point[pos] = grid.points[0];
            --pos;
        }
        if (pos < 0) break;
        ++index[pos];
        point[pos] = grid.points[index[pos]];
    }
}

}  // namespace

double grid_probability(const std::vector<HalfSpace>& constraints,
                        const BinomialGrid& grid,
                        std::int64_t atom_budget) {
    std::vector<HalfSpace> reduced = reduce_dimension(constraints);
    int dims = reduced.empty() ? 0 : static_cast<int>(reduced[0].normal.size());
    std::int64_t atoms = atom_count(grid.n_flips + 1, dims);
    if (atoms > atom_budget) throw AtomBudgetError(atoms, atom_budget);

    double prob = 0;
    for_each_atom(grid, dims, [&](const std::vector<double>& point, double mass) {
        for (const auto& hs : reduced) {
            double dot = 0;
            for (int i = 0; i < dims; ++i) dot += hs.normal[i] * point[i];
            if (!(dot > hs.threshold)) return;
        }
        prob += mass;
    });
    return prob;
}

StepFunction step_approximation(const std::vector<CoordinateSlice>& slices,
                                const BinomialGrid& grid,
                                std::int64_t atom_budget) {
    // Budget the whole call before enumerating anything.
    std::int64_t atoms_needed = 0;
    std::vector<std::vector<HalfSpace>> reduced(slices.size());
    std::vector<int> dims(slices.size(), 0);
    for (std::size_t s = 0; s < slices.size(); ++s) {
        reduced[s] = reduce_dimension(slices[s].frozen);
        dims[s] = reduced[s].empty() ? 0 : static_cast<int>(reduced[s][0].normal.size());
        std::int64_t a = atom_count(grid.n_flips + 1, dims[s]);
        atoms_needed = atoms_needed > std::numeric_limits<std::int64_t>::max() - a
                           ? std::numeric_limits<std::int64_t>::max()
                           : atoms_needed + a;
    }
    if (atoms_needed > atom_budget) throw AtomBudgetError(atoms_needed, atom_budget);

    // Every atom of every term contributes its mass on an open
    // t-interval; accumulate interval endpoints as +/- events.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> events;  // (t, delta)
    double base = 0;                                // value as t -> -inf
    for (std::size_t s = 0; s < slices.size(); ++s) {
        const CoordinateSlice& slice = slices[s];
        const auto& cons = reduced[s];
        for_each_atom(grid, dims[s], [&](const std::vector<double>& point, double mass) {
            double lo = -inf, hi = inf;
            for (std::size_t c = 0; c < cons.size(); ++c) {
                double dot = 0;
                for (int i = 0; i < dims[s]; ++i) dot += cons[c].normal[i] * point[i];
                double bound = cons[c].threshold - dot;
                double z = slice.z[c];
                if (z > 0) {
                    lo = std::max(lo, bound / z);
                } else if (z < 0) {
                    hi = std::min(hi, bound / z);
                } else if (!(0 > bound)) {
                    return;
                }
            }
            if (!(lo < hi)) return;
            double delta = slice.weight * mass;
            if (lo == -inf) base += delta;
            else events.push_back({lo, delta});
            if (hi != inf) events.push_back({hi, -delta});
        });
    }

    std::sort(events.begin(), events.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    StepFunction f;
    f.values.push_back(base);
    double level = base;
    std::size_t i = 0;
    while (i < events.size()) {
        double t = events[i].first;
        while (i < events.size() && events[i].first == t) {
            level += events[i].second;
            ++i;
        }
        f.breakpoints.push_back(t);
        f.values.push_back(level);
    }
    return f;
}

DerandResult derandomize(const HalfSpaceSystem& system, int n_flips, std::int64_t atom_budget) {
    BinomialGrid grid = BinomialGrid::make(n_flips);
    int dim = system.dimension;
    std::vector<double> a_star(dim, 0.0);

    for (int j = 0; j < dim; ++j) {
        std::vector<CoordinateSlice> slices;
        slices.reserve(system.terms.size());
        for (const auto& term : system.terms) {
            CoordinateSlice slice;
            slice.weight = term.weight;
            for (const auto& hs : term.constraints) {
                double z = j < static_cast<int>(hs.normal.size()) ? hs.normal[j] : 0.0;
                double adjusted = hs.threshold;
                for (int i = 0; i < j && i < static_cast<int>(hs.normal.size()); ++i)
                    adjusted -= hs.normal[i] * a_star[i];
                HalfSpace frozen;
                frozen.threshold = adjusted;
                if (j + 1 < static_cast<int>(hs.normal.size()))
                    frozen.normal.assign(hs.normal.begin() + j + 1, hs.normal.end());
                slice.frozen.push_back(std::move(frozen));
                slice.z.push_back(z);
            }
            slices.push_back(std::move(slice));
        }
        StepFunction f = step_approximation(slices, grid, atom_budget);
        a_star[j] = f.best_point();
    }

    DerandResult result;
    result.a_star = std::move(a_star);
    result.achieved = system.indicator_sum(result.a_star);
    return result;
}

}  // namespace trifree
