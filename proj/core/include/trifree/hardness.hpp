#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "trifree/graph.hpp"

namespace trifree {

/// x + y + z = parity (mod 2).  Repeated variables are representable
/// but rejected by the reduction.
struct Equation {
    int x = 0, y = 0, z = 0;
    int parity = 0;

    bool operator==(const Equation&) const = default;
};

struct E3LinSystem {
    int num_vars = 0;
    std::vector<Equation> equations;

    bool operator==(const E3LinSystem&) const = default;
};

/// Text format: header `l <num_vars> <num_eqs>`, then one line
/// `q <x> <y> <z> <p>` per equation; `#` lines are comments.
E3LinSystem parse_e3lin(std::istream& in);
E3LinSystem parse_e3lin_file(const std::string& path);
std::string serialise_e3lin(const E3LinSystem& sys);

std::int64_t satisfied_equations(const E3LinSystem& sys, const std::vector<std::uint8_t>& assignment);

/// Disjoint primed copy with flipped parities: the result has equally
/// many parity-0 and parity-1 equations, and value(balanced, balanced
/// solutions) = 2 * value(sys).
E3LinSystem make_balanced(const E3LinSystem& sys);

/// A weighted terminal graph encoding one parity equation: near-optimal
/// triangle-free subgraphs are bipartite, connect the terminals, and
/// their 2-colourings c satisfy c(zero)+c(x)+c(y)+c(z) = parity (mod 2).
struct Gadget {
    Multigraph graph;
    int zero = 0, x = 0, y = 0, z = 0;
    std::int64_t performance = 0;
    int parity = 0;
};

/// The 5-vertex gadget: complete graph on {0, a, x, y, z} with
/// w(a) = 2, other weights 1, edge weight w(i)w(j).  Performance 9,
/// parity 1.  Vertex order: 0, a, x, y, z.
Gadget gadget9();

/// The 6-vertex gadget: complete graph on {0, 1, a, x, y, z} with
/// w(a) = w(1) = 2, edge weight w(i)w(j) plus 1 extra on the pair
/// {0, 1}.  Performance 17, parity 0; vertex "1" is internal.
/// Vertex order: 0, 1, a, x, y, z.
Gadget gadget17();

struct GadgetVerification {
    bool assignments_covered = false;  ///< every parity-consistent terminal assignment is hit by an optimal bipartite selection
    bool weight_bound = false;         ///< no triangle-free selection heavier than the performance
    bool near_optimal_structure = false;  ///< optimal selections connect terminals within distance 2 of zero, bipartitely, with the right parity
    std::int64_t best_triangle_free = 0;
    std::vector<std::string> failures;

    bool ok() const { return assignments_covered && weight_bound && near_optimal_structure; }
};

/// Exhaustive check of the gadget contract over all 2^|support|
/// selections.  Throws std::invalid_argument when the support exceeds
/// 16 edges.
GadgetVerification verify_gadget(const Gadget& gad);

/// Filling volume = sum(c_i) - n + a into bins of capacities c_i >= 0
/// forces at least ceil(a) bins strictly above c_i - 1; returns a.
double bins_lower_bound(const std::vector<double>& capacities, double volume);

/// One gadget copy per equation; edges listed with the copy's own
/// multiplicities (the assembled Multigraph aggregates overlapping
/// terminal pairs, the blocks keep the per-equation multiset).
struct GadgetBlock {
    int equation = 0;
    int parity = 0;
    std::vector<Edge> edges;
};

struct ReducedInstance {
    Multigraph graph;
    int zero_vertex = 0;
    std::vector<int> var_vertex;
    std::vector<GadgetBlock> blocks;
};

/// Reduction of a balanced system: vertex 0' plus one
/// vertex per variable; each equation glues a copy of the gadget of its
/// parity onto (0', x, y, z) with fresh internal vertices.  Throws
/// std::invalid_argument on unbalanced systems or repeated variables
/// within an equation.
ReducedInstance reduce_to_maxpcsp(const E3LinSystem& sys, const Gadget& parity0, const Gadget& parity1);

/// BFS from 0' in the selected subgraph; each variable gets the parity
/// of its shortest-path length, unreachable variables get 0.
std::vector<std::uint8_t> decode_solution(const ReducedInstance& inst, const EdgeSelection& s);

/// Reduced fraction with positive denominator.
struct Ratio {
    long long num = 0;
    long long den = 1;

    bool operator==(const Ratio&) const = default;
};

/// 1 - 1/(performance0 + performance1), exactly.
Ratio hardness_ratio(const Gadget& a, const Gadget& b);

}  // namespace trifree
