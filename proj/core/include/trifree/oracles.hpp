#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "trifree/graph.hpp"
#include "trifree/hardness.hpp"
#include "trifree/threecolor.hpp"

namespace trifree {

/// Exhaustive ground truth for small instances.  Each oracle throws
/// std::invalid_argument beyond its size cap.

/// n <= 24: exact maximum cut over 2^(n-1) assignments.
std::pair<std::int64_t, CutAssignment> brute_max_cut(const Multigraph& g);

/// support <= 25 edges: exact maximum-weight triangle-free selection.
std::pair<std::int64_t, EdgeSelection> brute_max_triangle_free(const Multigraph& g);

/// Visits every triangle-free selection of the support once (pruned
/// recursion; same 25-edge cap).
void for_each_triangle_free(const Multigraph& g,
                            const std::function<void(const EdgeSelection&)>& visit);

/// n <= 15: exact maximum bichromatic weight over colourings, symmetry
/// reduced by fixing vertex 0.
std::pair<std::int64_t, ThreeColouring> brute_best_3colouring(const Multigraph& g);

struct E3LinOptimum {
    std::int64_t satisfied = 0;
    std::vector<std::uint8_t> assignment;
    bool exists = true;  ///< false when balanced_only finds no balanced assignment
};

/// num_vars <= 20: exact maximum satisfied count; balanced_only
/// restricts to assignments satisfying equally many equations of each
/// parity.
E3LinOptimum brute_e3lin(const E3LinSystem& sys, bool balanced_only);

}  // namespace trifree
