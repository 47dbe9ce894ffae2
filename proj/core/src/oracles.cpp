#include "trifree/oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace trifree {

std::pair<std::int64_t, CutAssignment> brute_max_cut(const Multigraph& g) {
    int n = g.vertex_count();
    if (n > 24) throw std::invalid_argument("brute_max_cut: more than 24 vertices");
    const auto& edges = g.edges();
    std::int64_t best = 0;
    std::uint32_t best_mask = 0;
    // Vertex n-1 fixed to side 0 (n >= 1); enumerate the rest.
    std::uint32_t limit = n <= 1 ? 1u : 1u << (n - 1);
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        std::int64_t w = 0;
        for (const Edge& e : edges)
            if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) w += e.mult;
        if (w > best) {
            best = w;
            best_mask = mask;
        }
    }
    CutAssignment c;
    c.side.resize(n);
    for (int v = 0; v < n; ++v) c.side[v] = (best_mask >> v) & 1;
    return {best, c};
}

namespace {

struct TriangleFreeSearch {
    const Multigraph& g;
    // closers[i]: indices j < i such that edges i and j close a triangle
    // with some third support edge, paired with that third index.
    std::vector<std::vector<std::pair<int, int>>> closers;
    std::vector<std::int64_t> suffix_weight;

    explicit TriangleFreeSearch(const Multigraph& graph) : g(graph) {
        const auto& edges = g.edges();
        int m = static_cast<int>(edges.size());
        closers.resize(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < i; ++j) {
                const Edge &a = edges[i], &b = edges[j];
                int common = -1, au = -1, bu = -1;
                for (int x : {a.u, a.v})
                    for (int y : {b.u, b.v})
                        if (x == y) {
                            common = x;
                            au = a.u == x ? a.v : a.u;
                            bu = b.u == x ? b.v : b.u;
                        }
                if (common < 0) continue;
                int k = g.edge_index(au, bu);
                if (k >= 0 && k < j) closers[i].push_back({j, k});
            }
        suffix_weight.assign(m + 1, 0);
        for (int i = m - 1; i >= 0; --i) suffix_weight[i] = suffix_weight[i + 1] + edges[i].mult;
    }
};

}  // namespace

void for_each_triangle_free(const Multigraph& g,
                            const std::function<void(const EdgeSelection&)>& visit) {
    if (g.support_size() > 25)
        throw std::invalid_argument("for_each_triangle_free: support above 25 edges");
    TriangleFreeSearch search(g);
    int m = static_cast<int>(g.support_size());
    EdgeSelection current(g.support_size());
    auto recurse = [&](auto&& self, int i) -> void {
        if (i == m) {
            visit(current);
            return;
        }
        current.set(i, false);
        self(self, i + 1);
        bool closes = false;
        for (auto [j, k] : search.closers[i])
            if (current.contains(j) && current.contains(k)) {
                closes = true;
                break;
            }
        if (!closes) {
            current.set(i, true);
            self(self, i + 1);
            current.set(i, false);
        }
    };
    recurse(recurse, 0);
}

std::pair<std::int64_t, EdgeSelection> brute_max_triangle_free(const Multigraph& g) {
    if (g.support_size() > 25)
        throw std::invalid_argument("brute_max_triangle_free: support above 25 edges");
    TriangleFreeSearch search(g);
    const auto& edges = g.edges();
    int m = static_cast<int>(edges.size());
    std::int64_t best = -1;
    EdgeSelection best_sel(g.support_size());
    EdgeSelection current(g.support_size());
    auto recurse = [&](auto&& self, int i, std::int64_t weight) -> void {
        if (weight + search.suffix_weight[i] <= best) return;
        if (i == m) {
            best = weight;
            best_sel = current;
            return;
        }
        bool closes = false;
        for (auto [j, k] : search.closers[i])
            if (current.contains(j) && current.contains(k)) {
                closes = true;
                break;
            }
        if (!closes) {
            current.set(i, true);
            self(self, i + 1, weight + edges[i].mult);
            current.set(i, false);
        }
        self(self, i + 1, weight);
    };
    recurse(recurse, 0, 0);
    return {best, best_sel};
}

std::pair<std::int64_t, ThreeColouring> brute_best_3colouring(const Multigraph& g) {
    int n = g.vertex_count();
    if (n > 15) throw std::invalid_argument("brute_best_3colouring: more than 15 vertices");
    const auto& edges = g.edges();
    ThreeColouring c;
    c.colour.assign(std::max(n, 1), 1);
    std::int64_t best = -1;
    ThreeColouring best_c = c;
    auto recurse = [&](auto&& self, int v) -> void {
        if (v == n) {
            std::int64_t w = 0;
            for (const Edge& e : edges)
                if (c.colour[e.u] != c.colour[e.v]) w += e.mult;
            if (w > best) {
                best = w;
                best_c = c;
            }
            return;
        }
        // Vertex 0 stays at colour 1: colourings are symmetric under
        // relabelling, so this loses nothing.
        int last = v == 0 ? 1 : 3;
        for (int col = 1; col <= last; ++col) {
            c.colour[v] = col;
            self(self, v + 1);
        }
        c.colour[v] = 1;
    };
    if (n == 0) return {0, ThreeColouring{}};
    recurse(recurse, 0);
    return {best, best_c};
}

E3LinOptimum brute_e3lin(const E3LinSystem& sys, bool balanced_only) {
    if (sys.num_vars > 20) throw std::invalid_argument("brute_e3lin: more than 20 variables");
    E3LinOptimum opt;
    opt.satisfied = -1;
    opt.exists = false;
    std::uint32_t limit = 1u << sys.num_vars;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        std::int64_t sat0 = 0, sat1 = 0;
        for (const Equation& eq : sys.equations) {
            int value = ((mask >> eq.x) & 1) ^ ((mask >> eq.y) & 1) ^ ((mask >> eq.z) & 1);
            if (value == eq.parity) (eq.parity == 0 ? sat0 : sat1) += 1;
        }
        if (balanced_only && sat0 != sat1) continue;
        if (sat0 + sat1 > opt.satisfied) {
            opt.satisfied = sat0 + sat1;
            opt.assignment.resize(sys.num_vars);
            for (int v = 0; v < sys.num_vars; ++v) opt.assignment[v] = (mask >> v) & 1;
            opt.exists = true;
        }
    }
    if (!opt.exists) opt.satisfied = 0;
    return opt;
}

}  // namespace trifree
