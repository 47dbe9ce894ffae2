#include "trifree/hardness.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace trifree {

namespace {

/// Non-comment, non-blank lines with their 1-based positions.
struct LineReader {
    std::istream& in;
    int line_no = 0;

    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            std::size_t start = raw.find_first_not_of(" \t\r");
            if (start == std::string::npos || raw[start] == '#') continue;
            out = raw;
            return true;
        }
        return false;
    }
};

bool parse_fields(const std::string& line, char tag, std::vector<long long>& out, int count) {
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head) || head.size() != 1 || head[0] != tag) return false;
    out.clear();
    long long v;
    for (int i = 0; i < count; ++i) {
        if (!(ss >> v)) return false;
        out.push_back(v);
    }
    std::string rest;
    if (ss >> rest) return false;
    return true;
}

Gadget product_gadget(const std::vector<std::int64_t>& vertex_weight, int zero, int x, int y,
                      int z, std::int64_t performance, int parity) {
    const int n = static_cast<int>(vertex_weight.size());
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            edges.push_back({u, v, vertex_weight[u] * vertex_weight[v]});
    Gadget gad{Multigraph(n, edges), zero, x, y, z, performance, parity};
    return gad;
}

/// Connected components of the selected subgraph, vertex -> component id.
std::vector<int> selected_components(const Multigraph& g, const EdgeSelection& s) {
    std::vector<int> comp(g.vertex_count());
    std::iota(comp.begin(), comp.end(), 0);
    const auto& edges = g.edges();
    auto root = [&](int u) {
        while (comp[u] != u) u = comp[u] = comp[comp[u]];
        return u;
    };
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (s.contains(i)) comp[root(edges[i].u)] = root(edges[i].v);
    for (int u = 0; u < g.vertex_count(); ++u) comp[u] = root(u);
    return comp;
}

}  // namespace

E3LinSystem parse_e3lin(std::istream& in) {
    LineReader reader{in};
    std::string line;
    if (!reader.next(line))
        throw ParseError(ParseErrorKind::header, reader.line_no, "missing header");
    std::vector<long long> f;
    if (!parse_fields(line, 'l', f, 2) || f[0] < 0 || f[1] < 0)
        throw ParseError(ParseErrorKind::header, reader.line_no, "expected 'l <vars> <eqs>'");
    const long long n = f[0], m = f[1];
    if (n > 1'000'000)
        throw ParseError(ParseErrorKind::header, reader.line_no, "variable count too large");

    E3LinSystem sys;
    sys.num_vars = static_cast<int>(n);
    for (long long i = 0; i < m; ++i) {
        if (!reader.next(line))
            throw ParseError(ParseErrorKind::count, reader.line_no,
                             "expected " + std::to_string(m) + " equations, got " + std::to_string(i));
        if (!parse_fields(line, 'q', f, 4) || (f[3] != 0 && f[3] != 1))
            throw ParseError(ParseErrorKind::edge, reader.line_no, "expected 'q <x> <y> <z> <0|1>'");
        for (int k = 0; k < 3; ++k)
            if (f[k] < 0 || f[k] >= n)
                throw ParseError(ParseErrorKind::vertex_range, reader.line_no,
                                 "variable id out of range");
        sys.equations.push_back({static_cast<int>(f[0]), static_cast<int>(f[1]),
                                 static_cast<int>(f[2]), static_cast<int>(f[3])});
    }
    if (reader.next(line))
        throw ParseError(ParseErrorKind::count, reader.line_no, "trailing content after equations");
    return sys;
}

E3LinSystem parse_e3lin_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_e3lin(in);
}

std::string serialise_e3lin(const E3LinSystem& sys) {
    std::ostringstream out;
    out << "l " << sys.num_vars << ' ' << sys.equations.size() << '\n';
    for (const Equation& q : sys.equations)
        out << "q " << q.x << ' ' << q.y << ' ' << q.z << ' ' << q.parity << '\n';
    return out.str();
}

std::int64_t satisfied_equations(const E3LinSystem& sys,
                                 const std::vector<std::uint8_t>& assignment) {
    std::int64_t sat = 0;
    for (const Equation& q : sys.equations)
        if (((assignment[q.x] ^ assignment[q.y] ^ assignment[q.z]) & 1) == q.parity) ++sat;
    return sat;
}

E3LinSystem make_balanced(const E3LinSystem& sys) {
    E3LinSystem out;
    out.num_vars = 2 * sys.num_vars;
    out.equations = sys.equations;
    for (const Equation& q : sys.equations)
        out.equations.push_back(
            {q.x + sys.num_vars, q.y + sys.num_vars, q.z + sys.num_vars, 1 - q.parity});
    return out;
}

Gadget gadget9() { return product_gadget({1, 2, 1, 1, 1}, 0, 2, 3, 4, 9, 1); }

Gadget gadget17() {
    Gadget gad = product_gadget({1, 2, 2, 1, 1, 1}, 0, 3, 4, 5, 17, 0);
    std::vector<Edge> edges = gad.graph.edges();
    edges.push_back({0, 1, 1});
    gad.graph = Multigraph(6, edges);
    return gad;
}

GadgetVerification verify_gadget(const Gadget& gad) {
    const Multigraph& g = gad.graph;
    const std::size_t m = g.support_size();
    if (m > 16) throw std::invalid_argument("gadget support too large to enumerate");

    const int terminals[4] = {gad.zero, gad.x, gad.y, gad.z};
    GadgetVerification report;
    report.assignments_covered = true;
    report.weight_bound = true;
    report.near_optimal_structure = true;

    // The 8 terminal assignments consistent with the gadget's parity,
    // encoded as bits c(0) | c(x)<<1 | c(y)<<2 | c(z)<<3.
    bool covered[16] = {};

    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        EdgeSelection sel(m);
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (1u << i)) sel.set(i);
        if (!is_triangle_free(g, sel)) continue;
        const std::int64_t weight = selection_weight(g, sel);
        report.best_triangle_free = std::max(report.best_triangle_free, weight);
        if (weight > gad.performance) {
            report.weight_bound = false;
            report.failures.push_back("triangle-free selection of weight " +
                                      std::to_string(weight) + " exceeds the performance");
            continue;
        }
        if (weight <= gad.performance - 1) continue;

        // Near-optimal: one component holding all terminals, zero within
        // distance 2 of the rest, 2-colourable there with the right parity.
        const std::vector<int> dist = distances_from(g, sel, gad.zero);
        bool structure = true;
        int parity_sum = 0;
        for (int t : terminals) {
            if (dist[t] == unreachable || dist[t] > 2) structure = false;
            else parity_sum ^= dist[t] & 1;
        }
        if (structure) {
            const auto& edges = g.edges();
            for (std::size_t i = 0; i < edges.size(); ++i) {
                if (!sel.contains(i)) continue;
                if (dist[edges[i].u] == unreachable || dist[edges[i].v] == unreachable) continue;
                if (((dist[edges[i].u] ^ dist[edges[i].v]) & 1) == 0) structure = false;
            }
        }
        if (structure && parity_sum != gad.parity) structure = false;
        if (!structure) {
            report.near_optimal_structure = false;
            report.failures.push_back("selection of weight " + std::to_string(weight) +
                                      " breaks the near-optimal structure");
            continue;
        }

        // Which parity-consistent terminal assignments this optimum covers.
        const Bipartition bip = bipartition(g, sel);
        if (!bip.colouring) continue;
        const std::vector<int> comp = selected_components(g, sel);
        for (int c = 0; c < 16; ++c) {
            bool compatible = true;
            for (int i = 0; i < 4 && compatible; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    if (comp[terminals[i]] != comp[terminals[j]]) continue;
                    const int want = ((c >> i) ^ (c >> j)) & 1;
                    const int have = bip.colouring->side[terminals[i]] ^
                                     bip.colouring->side[terminals[j]];
                    if (want != have) {
                        compatible = false;
                        break;
                    }
                }
            if (compatible) covered[c] = true;
        }
    }

    for (int c = 0; c < 16; ++c) {
        const int parity = ((c >> 0) ^ (c >> 1) ^ (c >> 2) ^ (c >> 3)) & 1;
        if (parity != gad.parity || covered[c]) continue;
        report.assignments_covered = false;
        report.failures.push_back("terminal assignment " + std::to_string(c) +
                                  " is not covered by any optimal bipartite selection");
    }
    return report;
}

double bins_lower_bound(const std::vector<double>& capacities, double volume) {
    double sum = 0;
    for (double c : capacities) sum += c;
    return volume - sum + static_cast<double>(capacities.size());
}

ReducedInstance reduce_to_maxpcsp(const E3LinSystem& sys, const Gadget& parity0,
                                  const Gadget& parity1) {
    if (parity0.parity != 0 || parity1.parity != 1)
        throw std::invalid_argument("gadgets must have parities 0 and 1");
    std::int64_t balance = 0;
    for (const Equation& q : sys.equations) balance += q.parity ? 1 : -1;
    if (balance != 0) throw std::invalid_argument("system is not balanced");

    ReducedInstance inst;
    inst.zero_vertex = 0;
    inst.var_vertex.resize(sys.num_vars);
    std::iota(inst.var_vertex.begin(), inst.var_vertex.end(), 1);

    int next_vertex = 1 + sys.num_vars;
    std::vector<Edge> all_edges;
    for (std::size_t e = 0; e < sys.equations.size(); ++e) {
        const Equation& q = sys.equations[e];
        if (q.x == q.y || q.x == q.z || q.y == q.z)
            throw std::invalid_argument("equation repeats a variable");
        if (q.x < 0 || q.x >= sys.num_vars || q.y < 0 || q.y >= sys.num_vars || q.z < 0 ||
            q.z >= sys.num_vars)
            throw std::invalid_argument("variable id out of range");

        const Gadget& gad = q.parity ? parity1 : parity0;
        std::vector<int> to(gad.graph.vertex_count(), -1);
        to[gad.zero] = inst.zero_vertex;
        to[gad.x] = inst.var_vertex[q.x];
        to[gad.y] = inst.var_vertex[q.y];
        to[gad.z] = inst.var_vertex[q.z];
        for (int u = 0; u < gad.graph.vertex_count(); ++u)
            if (to[u] == -1) to[u] = next_vertex++;

        GadgetBlock block{static_cast<int>(e), q.parity, {}};
        for (const Edge& ge : gad.graph.edges()) {
            int u = to[ge.u], v = to[ge.v];
            if (u > v) std::swap(u, v);
            block.edges.push_back({u, v, ge.mult});
            all_edges.push_back({u, v, ge.mult});
        }
        inst.blocks.push_back(std::move(block));
    }
    inst.graph = Multigraph(next_vertex, all_edges);
    return inst;
}

std::vector<std::uint8_t> decode_solution(const ReducedInstance& inst, const EdgeSelection& s) {
    const std::vector<int> dist = distances_from(inst.graph, s, inst.zero_vertex);
    std::vector<std::uint8_t> assignment(inst.var_vertex.size(), 0);
    for (std::size_t i = 0; i < inst.var_vertex.size(); ++i) {
        const int d = dist[inst.var_vertex[i]];
        assignment[i] = d == unreachable ? 0 : static_cast<std::uint8_t>(d & 1);
    }
    return assignment;
}

Ratio hardness_ratio(const Gadget& a, const Gadget& b) {
    const long long den = a.performance + b.performance;
    const long long num = den - 1;
    const long long g = std::gcd(num, den);
    return Ratio{num / g, den / g};
}

}  // namespace trifree
