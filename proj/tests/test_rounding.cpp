#include <doctest.h>

#include <cmath>

#include "trifree/oracles.hpp"
#include "trifree/random.hpp"
#include "trifree/rounding.hpp"

using namespace trifree;
using doctest::Approx;

namespace {

constexpr double pi = 3.14159265358979323846;

/// Star on 4 vertices embedded in the plane with one edge per angle
/// band: (0,1) long, (0,2) middle, (0,3) short.
struct Planted {
    Multigraph g{4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 5}}};
    Embedding emb;

    Planted() : emb(4, 2) {
        double angles[4] = {0.0, 2.5, 2.1, 1.0};
        for (int u = 0; u < 4; ++u) {
            emb.row(u)[0] = std::cos(angles[u]);
            emb.row(u)[1] = std::sin(angles[u]);
        }
    }
};

/// Regular tetrahedron: all pairwise inner products exactly -1/3.
Embedding tetrahedron() {
    Embedding emb(4, 3);
    double s = 1.0 / std::sqrt(3.0);
    double rows[4][3] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    for (int u = 0; u < 4; ++u)
        for (int i = 0; i < 3; ++i) emb.row(u)[i] = rows[u][i];
    return emb;
}

Multigraph complete(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1});
    return Multigraph(n, edges);
}

Multigraph cycle(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n, 1});
    return Multigraph(n, edges);
}

}  // namespace

TEST_SUITE("rounding") {

TEST_CASE("outcome construction guards against triangles") {
    Multigraph g = complete(3);
    EdgeSelection full = EdgeSelection::full(3);
    CHECK_THROWS_AS(make_outcome(g, full, RoundingCase::gw_cut), std::logic_error);
    EdgeSelection two(3);
    two.set(0);
    two.set(1);
    RoundingOutcome ok = make_outcome(g, two, RoundingCase::long_edge);
    CHECK(ok.weight == 2);
    CHECK(ok.case_used == RoundingCase::long_edge);
}

TEST_CASE("hyperplane sampling and sides") {
    Hyperplane h = sample_hyperplane(5, 7);
    CHECK(h.normal.size() == 5);
    CHECK(h.normal == sample_hyperplane(5, 7).normal);
    CHECK(h.normal != sample_hyperplane(5, 8).normal);

    // A vector orthogonal to the normal sits on the positive side.
    Embedding emb(2, 2);
    emb.row(0)[0] = 1;
    emb.row(1)[1] = -1;
    Hyperplane axis{{0.0, 1.0}};
    CHECK(positive_side(emb, 0, axis));
    CHECK(!positive_side(emb, 1, axis));
}

TEST_CASE("gw rounding cuts crossing edges") {
    Planted p;
    // Normal at angle 0.7 rad: vertices 0, 2, 3 land positive, 1 negative.
    Hyperplane h{{std::cos(0.7), std::sin(0.7)}};
    RoundingOutcome out = round_gw(p.g, p.emb, h);
    CHECK(out.case_used == RoundingCase::gw_cut);
    CHECK(out.weight == 2);
    CHECK(out.selection.contains(p.g.edge_index(0, 1)));
    CHECK(!out.selection.contains(p.g.edge_index(0, 2)));
    CHECK(!out.selection.contains(p.g.edge_index(0, 3)));
}

TEST_CASE("threshold branch keeps long edges and separated middles") {
    Planted p;
    RoundingParams params = hybrid_params();
    // Separating normal for the middle pair (0, 2).
    Hyperplane sep{{0.2, -0.98}};
    RoundingOutcome out = round_hybrid_case_b(p.g, p.emb, params, sep);
    CHECK(out.case_used == RoundingCase::long_edge);
    CHECK(out.selection.contains(p.g.edge_index(0, 1)));
    CHECK(out.selection.contains(p.g.edge_index(0, 2)));
    CHECK(!out.selection.contains(p.g.edge_index(0, 3)));
    CHECK(out.weight == 5);

    // Non-separating normal: only the long edge stays.
    Hyperplane same{{std::cos(1.0), std::sin(1.0)}};
    out = round_hybrid_case_b(p.g, p.emb, params, same);
    CHECK(out.weight == 2);
    CHECK(out.selection.contains(p.g.edge_index(0, 1)));
    CHECK(!out.selection.contains(p.g.edge_index(0, 2)));
}

TEST_CASE("inclusion probability piecewise bands") {
    RoundingParams params = hybrid_params();
    double middle_lo = pi - params.tau / 2.0;
    CHECK(inclusion_probability(pi, params) == Approx(1.0).epsilon(1e-12));
    CHECK(inclusion_probability(params.tau, params) ==
          Approx(params.p_case1 * params.tau / pi + params.q_case2).epsilon(1e-12));
    CHECK(inclusion_probability(params.tau - 1e-9, params) ==
          Approx((params.tau - 1e-9) / pi).epsilon(1e-12));
    CHECK(inclusion_probability(middle_lo, params) == Approx(middle_lo / pi).epsilon(1e-12));
    CHECK(inclusion_probability(middle_lo - 1e-9, params) ==
          Approx(params.p_case1 * (middle_lo - 1e-9) / pi).epsilon(1e-12));
    CHECK(inclusion_probability(0.0, params) == 0.0);
    CHECK_THROWS_AS(inclusion_probability(-0.1, params), std::invalid_argument);
    CHECK_THROWS_AS(inclusion_probability(4.0, params), std::invalid_argument);

    // The long-edge band never loses to the raw cut probability.
    for (int i = 0; i <= 100; ++i) {
        double angle = params.tau + (pi - params.tau) * i / 100;
        CHECK(inclusion_probability(angle, params) >= angle / pi - 1e-12);
    }
}

TEST_CASE("hybrid rounding is deterministic and triangle-free") {
    Multigraph g = complete(5);
    auto [emb, report] = solve_maxcut_sdp(g, 1e-3, 17);
    RoundingParams params = hybrid_params();
    RoundingOutcome a = round_hybrid(g, emb, params, 99);
    RoundingOutcome b = round_hybrid(g, emb, params, 99);
    CHECK(a.selection == b.selection);
    CHECK(a.weight == b.weight);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        RoundingOutcome out = round_hybrid(g, emb, params, seed);
        CHECK(is_triangle_free(g, out.selection));
        CHECK(out.weight == selection_weight(g, out.selection));
    }
}

TEST_CASE("hybrid empirical mean matches the inclusion probabilities") {
    Planted p;
    RoundingParams params = hybrid_params();
    double expected = 0;
    for (const Edge& e : p.g.edges())
        expected += static_cast<double>(e.mult) *
                    inclusion_probability(pairwise_angle(p.emb, e.u, e.v), params);

    double mean = 0;
    const int trials = 4000;
    for (int t = 0; t < trials; ++t)
        mean += static_cast<double>(round_hybrid(p.g, p.emb, params, 1000 + t).weight);
    mean /= trials;
    CHECK(mean == Approx(expected).epsilon(0.04));

    // Both branches must actually occur.
    bool saw_cut = false, saw_threshold = false;
    for (int t = 0; t < 2000; ++t) {
        RoundingCase c = round_hybrid(p.g, p.emb, params, 5000 + t).case_used;
        saw_cut |= c == RoundingCase::gw_cut;
        saw_threshold |= c == RoundingCase::long_edge;
    }
    CHECK(saw_cut);
    CHECK(saw_threshold);
}

TEST_CASE("separation systems have the advertised shape") {
    Planted p;
    RoundingParams params = hybrid_params();
    HalfSpaceSystem gw = gw_separation_system(p.g, p.emb);
    CHECK(gw.dimension == 2);
    CHECK(gw.terms.size() == 6);
    CHECK(gw.max_arity() == 2);
    CHECK(gw.terms[0].weight == 2.0);

    HalfSpaceSystem caseb = case_b_separation_system(p.g, p.emb, params);
    CHECK(caseb.terms.size() == 2);
    CHECK(caseb.terms[0].weight == 3.0);

    // The two orientations of one edge are disjoint: at most one can
    // hold at any point.
    std::vector<double> a{0.3, -0.7};
    double both = 0;
    for (int t = 0; t < 2; ++t) {
        bool holds = true;
        for (const auto& hs : gw.terms[t].constraints) {
            double dot = 0;
            for (int i = 0; i < 2; ++i) dot += hs.normal[i] * a[i];
            holds = holds && dot > hs.threshold;
        }
        both += holds ? 1 : 0;
    }
    CHECK(both <= 1);
}

TEST_CASE("derandomised rounding on planted embeddings") {
    // C_5 solved near-optimally puts every edge in the long band, so
    // the threshold branch keeps the whole (triangle-free) cycle.
    Multigraph c5 = cycle(5);
    auto [emb5, rep5] = solve_maxcut_sdp(c5, 1e-4, 3);
    RoundingParams params = hybrid_params();
    RoundingOutcome out5 = derandomised_round(c5, emb5, params);
    CHECK(out5.case_used == RoundingCase::derandomised);
    CHECK(out5.weight == 5);

    // The tetrahedron puts all of K_4 in the short band; the expected
    // cut is 6 * 1.9106 / pi > 3.6, and the only heavier cut is 4.
    Multigraph k4 = complete(4);
    RoundingOutcome out4 = derandomised_round(k4, tetrahedron(), params);
    CHECK(out4.weight == 4);

    RoundingOutcome again = derandomised_round(k4, tetrahedron(), params);
    CHECK(again.selection == out4.selection);
}

TEST_CASE("derandomised rounding beats the expectation on average instances") {
    Planted p;
    RoundingParams params = hybrid_params();
    double expected = 0;
    for (const Edge& e : p.g.edges())
        expected += static_cast<double>(e.mult) *
                    inclusion_probability(pairwise_angle(p.emb, e.u, e.v), params);
    RoundingOutcome out = derandomised_round(p.g, p.emb, params);
    CHECK(static_cast<double>(out.weight) >= expected - 1.0);
}

TEST_CASE("empty graphs round to empty selections") {
    Multigraph empty(4, {});
    Embedding emb = random_embedding(4, 3, 1);
    RoundingParams params = hybrid_params();
    CHECK(round_hybrid(empty, emb, params, 1).weight == 0);
    CHECK(derandomised_round(empty, emb, params).weight == 0);
    CHECK(derandomised_round(empty, emb, params).selection.size() == 0);
}

TEST_CASE("atom budget propagates out of the derandomised round") {
    Multigraph k4 = complete(4);
    DerandConfig cfg;
    cfg.atom_budget = 3;
    CHECK_THROWS_AS(derandomised_round(k4, tetrahedron(), hybrid_params(), cfg),
                    AtomBudgetError);
}

}  // TEST_SUITE
