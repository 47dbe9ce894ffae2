#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trifree {

/// One aggregated support edge: unordered pair (u, v), canonicalised to
/// u < v, carrying the total multiplicity of its parallel class.
struct Edge {
    int u = 0;
    int v = 0;
    std::int64_t mult = 1;

    bool operator==(const Edge&) const = default;
};

enum class ParseErrorKind {
    header,        ///< missing or malformed header line
    edge,          ///< malformed edge/equation line or unknown line type
    vertex_range,  ///< id outside the declared range
    loop,          ///< u == v
    multiplicity,  ///< multiplicity < 1
    count,         ///< body line count disagrees with the header
    weight_cap,    ///< total weight above the input ceiling
};

struct ParseError : std::runtime_error {
    ParseError(ParseErrorKind kind, int line, const std::string& message);

    ParseErrorKind kind;
    int line;  ///< 1-based line in the input stream
};

/// Undirected multigraph on vertices 0..n-1.  Parallel edges are stored
/// aggregated (one support edge per unordered pair); loops are rejected.
/// Immutable after construction and safe to share across threads.
class Multigraph {
  public:
    Multigraph() = default;

    /// Validates ids, rejects loops and non-positive multiplicities,
    /// aggregates parallel edges, sorts the support canonically.
    Multigraph(int n, const std::vector<Edge>& edges);

    int vertex_count() const { return n_; }
    std::size_t support_size() const { return edges_.size(); }
    std::int64_t total_weight() const { return total_; }

    /// Canonical support: u < v, lexicographically sorted.
    const std::vector<Edge>& edges() const { return edges_; }

    /// Index into edges() of the pair {u, v}, or -1 if absent.
    int edge_index(int u, int v) const;
    std::int64_t multiplicity(int u, int v) const;

    /// Adjacent (vertex, multiplicity) pairs of u.
    const std::vector<std::pair<int, std::int64_t>>& neighbours(int u) const;

    bool operator==(const Multigraph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

  private:
    int n_ = 0;
    std::int64_t total_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, std::int64_t>>> adj_;
};

/// Subset of a multigraph's support edges, addressed by canonical edge
/// index.  Selecting a support edge selects its whole parallel class.
class EdgeSelection {
  public:
    EdgeSelection() = default;
    explicit EdgeSelection(std::size_t support_size, bool selected = false)
        : bits_(support_size, selected) {}

    static EdgeSelection full(std::size_t support_size) {
        return EdgeSelection(support_size, true);
    }

    std::size_t size() const { return bits_.size(); }
    bool contains(std::size_t edge_index) const { return bits_[edge_index]; }
    void set(std::size_t edge_index, bool selected = true) { bits_[edge_index] = selected; }
    std::size_t count() const;
    bool is_subset_of(const EdgeSelection& other) const;

    bool operator==(const EdgeSelection&) const = default;

  private:
    std::vector<bool> bits_;
};

/// Two-sided vertex assignment; side values are 0 or 1.
struct CutAssignment {
    std::vector<std::uint8_t> side;
};

/// Input ceiling on the total weight accepted by parse_graph.
inline constexpr std::int64_t max_parse_weight = 1'000'000;

/// Line-oriented text format: header `p <n> <m>`, then m lines
/// `e <u> <v> <mult>` (0-based ids); `#` lines are comments.
Multigraph parse_graph(std::istream& in);
Multigraph parse_graph_file(const std::string& path);
std::string serialise_graph(const Multigraph& g);

std::int64_t cut_weight(const Multigraph& g, const CutAssignment& c);

/// The edges crossing the cut, as a selection over the support.
EdgeSelection cut_selection(const Multigraph& g, const CutAssignment& c);

std::int64_t selection_weight(const Multigraph& g, const EdgeSelection& s);

/// True iff no three selected support edges form a triangle.
/// Multiplicities are irrelevant here.
bool is_triangle_free(const Multigraph& g, const EdgeSelection& s);

/// Result of the bipartiteness test on a selected subgraph: a proper
/// 2-colouring when one exists, otherwise an odd cycle witness given as
/// a vertex sequence in cycle order (closing edge last -> first).
struct Bipartition {
    std::optional<CutAssignment> colouring;
    std::vector<int> odd_cycle;
};

Bipartition bipartition(const Multigraph& g, const EdgeSelection& s);

inline constexpr int unreachable = -1;

/// BFS distances from source inside the selected subgraph;
/// `unreachable` for vertices in other components.
std::vector<int> distances_from(const Multigraph& g, const EdgeSelection& s, int source);

}  // namespace trifree
