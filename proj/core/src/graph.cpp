#include "trifree/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace trifree {

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      kind(kind),
      line(line) {}

Multigraph::Multigraph(int n, const std::vector<Edge>& edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    std::map<std::pair<int, int>, std::int64_t> agg;
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw std::invalid_argument("vertex id out of range");
        if (e.u == e.v) throw std::invalid_argument("loop edge");
        if (e.mult < 1) throw std::invalid_argument("non-positive multiplicity");
        agg[std::minmax(e.u, e.v)] += e.mult;
    }
    edges_.reserve(agg.size());
    adj_.resize(n);
    for (const auto& [pair, mult] : agg) {
        edges_.push_back({pair.first, pair.second, mult});
        adj_[pair.first].emplace_back(pair.second, mult);
        adj_[pair.second].emplace_back(pair.first, mult);
        total_ += mult;
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

int Multigraph::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    Edge probe{u, v, 0};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), probe,
                               [](const Edge& a, const Edge& b) {
                                   return std::pair(a.u, a.v) < std::pair(b.u, b.v);
                               });
    if (it == edges_.end() || it->u != u || it->v != v) return -1;
    return static_cast<int>(it - edges_.begin());
}

std::int64_t Multigraph::multiplicity(int u, int v) const {
    int i = edge_index(u, v);
    return i < 0 ? 0 : edges_[i].mult;
}

const std::vector<std::pair<int, std::int64_t>>& Multigraph::neighbours(int u) const {
    return adj_.at(u);
}

std::size_t EdgeSelection::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

bool EdgeSelection::is_subset_of(const EdgeSelection& other) const {
    if (bits_.size() != other.bits_.size()) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] && !other.bits_[i]) return false;
    return true;
}

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

}  // namespace

Multigraph parse_graph(std::istream& in) {
    LineReader reader{in};
    std::string line;
    if (!reader.next(line))
        throw ParseError(ParseErrorKind::header, reader.line_no, "missing header");
    std::vector<long long> f;
    if (!parse_fields(line, 'p', f, 2) || f[0] < 0 || f[1] < 0)
        throw ParseError(ParseErrorKind::header, reader.line_no, "expected 'p <n> <m>'");
    long long n = f[0], m = f[1];
    if (n > 1'000'000)
        throw ParseError(ParseErrorKind::header, reader.line_no, "vertex count too large");

    std::vector<Edge> edges;
    std::int64_t total = 0;
    for (long long i = 0; i < m; ++i) {
        if (!reader.next(line))
            throw ParseError(ParseErrorKind::count, reader.line_no,
                             "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
        if (!parse_fields(line, 'e', f, 3))
            throw ParseError(ParseErrorKind::edge, reader.line_no, "expected 'e <u> <v> <mult>'");
        long long u = f[0], v = f[1], mult = f[2];
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ParseError(ParseErrorKind::vertex_range, reader.line_no, "vertex id out of range");
        if (u == v) throw ParseError(ParseErrorKind::loop, reader.line_no, "loop edge");
        if (mult < 1)
            throw ParseError(ParseErrorKind::multiplicity, reader.line_no, "multiplicity must be >= 1");
        total += mult;
        if (mult > max_parse_weight || total > max_parse_weight)
            throw ParseError(ParseErrorKind::weight_cap, reader.line_no,
                             "total weight above " + std::to_string(max_parse_weight));
        edges.push_back({static_cast<int>(u), static_cast<int>(v), mult});
    }
    if (reader.next(line))
        throw ParseError(ParseErrorKind::count, reader.line_no, "trailing content after edge list");
    return Multigraph(static_cast<int>(n), edges);
}

Multigraph parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_graph(in);
}

std::string serialise_graph(const Multigraph& g) {
    std::ostringstream out;
    out << "p " << g.vertex_count() << ' ' << g.support_size() << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << ' ' << e.mult << '\n';
    return out.str();
}

std::int64_t cut_weight(const Multigraph& g, const CutAssignment& c) {
    std::int64_t w = 0;
    for (const Edge& e : g.edges())
        if (c.side[e.u] != c.side[e.v]) w += e.mult;
    return w;
}

EdgeSelection cut_selection(const Multigraph& g, const CutAssignment& c) {
    EdgeSelection s(g.support_size());
    const auto& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (c.side[edges[i].u] != c.side[edges[i].v]) s.set(i);
    return s;
}

std::int64_t selection_weight(const Multigraph& g, const EdgeSelection& s) {
    std::int64_t w = 0;
    const auto& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (s.contains(i)) w += edges[i].mult;
    return w;
}

bool is_triangle_free(const Multigraph& g, const EdgeSelection& s) {
    const auto& edges = g.edges();
    // Selected neighbourhoods as sorted lists, then intersect per edge.
    std::vector<std::vector<int>> nb(g.vertex_count());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!s.contains(i)) continue;
        nb[edges[i].u].push_back(edges[i].v);
        nb[edges[i].v].push_back(edges[i].u);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!s.contains(i)) continue;
        const auto& a = nb[edges[i].u];
        const auto& b = nb[edges[i].v];
        std::size_t x = 0, y = 0;
        while (x < a.size() && y < b.size()) {
            if (a[x] < b[y]) ++x;
            else if (a[x] > b[y]) ++y;
            else return false;
        }
    }
    return true;
}

Bipartition bipartition(const Multigraph& g, const EdgeSelection& s) {
    int n = g.vertex_count();
    std::vector<int> colour(n, -1), parent(n, -1);
    Bipartition result;
    const auto& edges = g.edges();
    std::vector<std::vector<int>> nb(n);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!s.contains(i)) continue;
        nb[edges[i].u].push_back(edges[i].v);
        nb[edges[i].v].push_back(edges[i].u);
    }
    for (int start = 0; start < n; ++start) {
        if (colour[start] != -1) continue;
        colour[start] = 0;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : nb[u]) {
                if (colour[v] == -1) {
                    colour[v] = colour[u] ^ 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if (colour[v] == colour[u]) {
                    // Odd cycle: join the two BFS paths at their meeting point.
                    std::vector<int> pu{u}, pv{v};
                    std::vector<char> on_pu(n, 0);
                    for (int w = u; w != -1; w = parent[w]) {
                        if (w != u) pu.push_back(w);
                        on_pu[w] = 1;
                    }
                    int meet = v;
                    while (!on_pu[meet]) {
                        meet = parent[meet];
                        pv.push_back(meet);
                    }
                    while (pu.back() != meet) pu.pop_back();
                    // pu: u..meet, pv: v..meet; cycle = meet..u, v..meet's child.
                    std::vector<int> cycle(pu.rbegin(), pu.rend());
                    cycle.insert(cycle.end(), pv.begin(), pv.end() - 1);
                    result.odd_cycle = cycle;
                    return result;
                }
            }
        }
    }
    CutAssignment c;
    c.side.assign(colour.begin(), colour.end());
    result.colouring = std::move(c);
    return result;
}

std::vector<int> distances_from(const Multigraph& g, const EdgeSelection& s, int source) {
    int n = g.vertex_count();
    std::vector<int> dist(n, unreachable);
    const auto& edges = g.edges();
    std::vector<std::vector<int>> nb(n);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!s.contains(i)) continue;
        nb[edges[i].u].push_back(edges[i].v);
        nb[edges[i].v].push_back(edges[i].u);
    }
    dist[source] = 0;
    std::deque<int> queue{source};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : nb[u]) {
            if (dist[v] != unreachable) continue;
            dist[v] = dist[u] + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

}  // namespace trifree
