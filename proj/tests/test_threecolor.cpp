#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "trifree/derand.hpp"
#include "trifree/graph.hpp"
#include "trifree/oracles.hpp"
#include "trifree/random.hpp"
#include "trifree/sdp.hpp"
#include "trifree/threecolor.hpp"

using namespace trifree;

namespace {

Embedding make_embedding(int n, int rank, const std::vector<double>& rows) {
    Embedding emb(n, rank);
    emb.data = rows;
    return emb;
}

GaussianTriple triple_from(const std::vector<double>& a, int rank) {
    GaussianTriple gt;
    gt.a1.assign(a.begin(), a.begin() + rank);
    gt.a2.assign(a.begin() + rank, a.begin() + 2 * rank);
    gt.a3.assign(a.begin() + 2 * rank, a.begin() + 3 * rank);
    return gt;
}

GaussianTriple random_triple(Rng& rng, int rank) {
    std::vector<double> a(3 * rank);
    for (double& x : a) x = rng.next_gaussian();
    return triple_from(a, rank);
}

Multigraph single_edge() { return Multigraph(2, {{0, 1, 1}}); }

Multigraph triangle() { return Multigraph(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}}); }

Multigraph k4() {
    return Multigraph(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
}

}  // namespace

TEST_SUITE("threecolor") {

TEST_CASE("cheng orthant closed form") {
    CHECK(cheng_orthant(0, 0) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(cheng_orthant(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cheng_orthant(0.35, -0.6) == doctest::Approx(0.0355037017701723).epsilon(1e-13));

    Rng rng(11);
    for (int t = 0; t < 16; ++t) {
        const double a = 2 * rng.next_unit() - 1;
        const double b = 2 * rng.next_unit() - 1;
        CHECK(cheng_orthant(a, b) == doctest::Approx(cheng_orthant(b, a)).epsilon(1e-15));
        CHECK(p_alpha(b) == doctest::Approx(cheng_orthant(0.5, b)).epsilon(1e-12));
    }
}

TEST_CASE("p alpha and the margin") {
    CHECK(p_alpha(0) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(p_alpha(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(p_alpha(-1)) <= 1e-12);
    CHECK(p_alpha(0.3) == doctest::Approx(0.14911697058494358).epsilon(1e-14));
    CHECK(p_alpha(-0.5) == doctest::Approx(0.0546639617857937).epsilon(1e-13));

    CHECK(f_margin(0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(std::abs(f_margin(1)) <= 1e-12);
    CHECK(std::abs(f_margin(-1)) <= 1e-12);
    CHECK(f_margin(-0.999) == doctest::Approx(1.64272519844e-4).epsilon(1e-6));

    // the lemma's inequality on a fine grid, and strict positivity inside
    double interior_min = 1;
    for (int i = 0; i <= 2000; ++i) {
        const double alpha = -1.0 + 2.0 * i / 2000.0;
        const double f = f_margin(alpha);
        CHECK(f >= -1e-9);
        if (i > 0 && i < 2000) interior_min = std::min(interior_min, f);
    }
    CHECK(interior_min > 1e-5);
}

TEST_CASE("monte carlo agreement with the four inequalities") {
    const int samples = 1'000'000;
    Rng pick(2026);
    for (int t = 0; t < 20; ++t) {
        const double alpha = 2 * pick.next_unit() - 1;
        const double beta = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
        Rng rng(derive_seed(404, static_cast<std::uint64_t>(t)));
        long hits = 0;
        for (int s = 0; s < samples; ++s) {
            const double x1 = rng.next_gaussian(), x2 = rng.next_gaussian(), x3 = rng.next_gaussian();
            const double y1 = rng.next_gaussian(), y2 = rng.next_gaussian(), y3 = rng.next_gaussian();
            const double z1 = alpha * x1 + beta * y1;
            if (x1 >= x2 && x1 >= x3 && z1 >= alpha * x2 + beta * y2 && z1 >= alpha * x3 + beta * y3)
                ++hits;
        }
        const double p = p_alpha(alpha);
        const double sigma = std::sqrt(p * (1 - p) / samples);
        CHECK(std::abs(static_cast<double>(hits) / samples - p) <= 4 * sigma + 1e-9);
    }
}

TEST_CASE("cheng orthant agrees with direct quadrivariate sampling") {
    const double a = 0.35, b = -0.6, ab = a * b;
    const double cov[4][4] = {{1, a, b, ab}, {a, 1, ab, b}, {b, ab, 1, a}, {ab, b, a, 1}};
    double chol[4][4] = {};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = cov[i][j];
            for (int k = 0; k < j; ++k) s -= chol[i][k] * chol[j][k];
            chol[i][j] = (i == j) ? std::sqrt(s) : s / chol[j][j];
        }
    }
    const int samples = 1'000'000;
    Rng rng(515);
    long hits = 0;
    for (int s = 0; s < samples; ++s) {
        double z[4], u[4];
        for (double& g : z) g = rng.next_gaussian();
        bool all = true;
        for (int i = 0; i < 4; ++i) {
            u[i] = 0;
            for (int j = 0; j <= i; ++j) u[i] += chol[i][j] * z[j];
            all = all && u[i] >= 0;
        }
        if (all) ++hits;
    }
    const double p = cheng_orthant(a, b);
    const double sigma = std::sqrt(p * (1 - p) / samples);
    CHECK(std::abs(static_cast<double>(hits) / samples - p) <= 3 * sigma);
}

TEST_CASE("round three picks the dominant axis") {
    const Embedding emb =
        make_embedding(3, 3, {1, 0, 0, 0.6, 0.8, 0, 0.36, -0.48, 0.8});
    GaussianTriple gt;
    gt.a1 = {1e6, 0, 0};
    gt.a2 = {1e-3, 1e-3, 0};
    gt.a3 = {0, 0, 1e-3};
    const ThreeColouring c = round_three(emb, gt);
    CHECK(c.colour == std::vector<int>{1, 1, 1});

    // exact ties go to the smallest index
    const Embedding one = make_embedding(1, 2, {1, 0});
    GaussianTriple tie;
    tie.a1 = {0.5, 0};
    tie.a2 = {0.5, 0};
    tie.a3 = {0.5, 0};
    CHECK(round_three(one, tie).colour == std::vector<int>{1});
    tie.a1 = {-1, 0};
    CHECK(round_three(one, tie).colour == std::vector<int>{2});
}

TEST_CASE("round three on identical and antipodal vectors") {
    const Embedding same = make_embedding(4, 3, {0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0});
    for (int t = 0; t < 20; ++t) {
        Rng rng(derive_seed(71, static_cast<std::uint64_t>(t)));
        const ThreeColouring c = round_three(same, random_triple(rng, 3));
        CHECK(c.colour[0] == c.colour[1]);
        CHECK(c.colour[0] == c.colour[2]);
        CHECK(c.colour[0] == c.colour[3]);
    }

    const Embedding anti = make_embedding(2, 3, {1, 0, 0, -1, 0, 0});
    int same_colour = 0;
    Rng rng(99);
    for (int t = 0; t < 10'000; ++t) {
        const ThreeColouring c = round_three(anti, random_triple(rng, 3));
        if (c.colour[0] == c.colour[1]) ++same_colour;
    }
    CHECK(same_colour == 0);
}

TEST_CASE("round three is label covariant") {
    const Embedding emb = random_embedding(6, 4, 7);
    Rng rng(13);
    const GaussianTriple base = random_triple(rng, 4);
    const ThreeColouring ref = round_three(emb, base);
    const std::vector<double>* axes[3] = {&base.a1, &base.a2, &base.a3};

    std::array<int, 3> perm = {0, 1, 2};
    do {
        GaussianTriple pg;
        pg.a1 = *axes[perm[0]];
        pg.a2 = *axes[perm[1]];
        pg.a3 = *axes[perm[2]];
        std::array<int, 3> inv{};
        for (int i = 0; i < 3; ++i) inv[perm[i]] = i;
        const ThreeColouring pc = round_three(emb, pg);
        for (int u = 0; u < emb.n; ++u)
            CHECK(pc.colour[u] == inv[ref.colour[u] - 1] + 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("edge event half-spaces have the stated shape") {
    const Embedding emb = make_embedding(2, 1, {1, -1});
    const HalfSpaceTerm term = edge_event_halfspaces(emb, 0, 1, 2, 3, 7);
    CHECK(term.weight == 7.0);
    REQUIRE(term.constraints.size() == 4);
    for (const HalfSpace& h : term.constraints) {
        CHECK(h.normal.size() == 3);
        CHECK(h.threshold == 0.0);
    }
    CHECK(term.constraints[0].normal == std::vector<double>{-1, 1, 0});
    CHECK(term.constraints[1].normal == std::vector<double>{0, 1, -1});
    CHECK(term.constraints[2].normal == std::vector<double>{1, 0, -1});
    CHECK(term.constraints[3].normal == std::vector<double>{0, 1, -1});
}

TEST_CASE("edge events on identical and antipodal endpoints") {
    const Embedding same = make_embedding(2, 2, {0.6, 0.8, 0.6, 0.8});
    HalfSpaceSystem contradictory = colour_system(single_edge(), same);
    REQUIRE(contradictory.terms.size() == 6);
    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> a(6);
        for (double& x : a) x = rng.next_gaussian();
        CHECK(contradictory.indicator_sum(a) == 0.0);
    }

    const Embedding anti = make_embedding(2, 2, {1, 0, -1, 0});
    HalfSpaceSystem certain = colour_system(single_edge(), anti);
    for (int t = 0; t < 500; ++t) {
        std::vector<double> a(6);
        for (double& x : a) x = rng.next_gaussian();
        CHECK(certain.indicator_sum(a) == 1.0);
    }
}

TEST_CASE("edge events match the closed form and the cut bound") {
    const double theta = 1.1;
    const Embedding emb = make_embedding(2, 2, {1, 0, std::cos(theta), std::sin(theta)});
    const double alpha = std::cos(theta);
    const HalfSpaceSystem sys = colour_system(single_edge(), emb);

    const int samples = 200'000;
    Rng rng(909);
    long proper = 0;
    long agree = 0;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> a(sys.dimension);
        for (double& x : a) x = rng.next_gaussian();
        const double ind = sys.indicator_sum(a);
        if (ind == 1.0) ++proper;
        const ThreeColouring c = round_three(emb, triple_from(a, emb.rank));
        if ((ind == 1.0) == (c.colour[0] != c.colour[1])) ++agree;
    }
    const double q = 1 - 3 * p_alpha(alpha);
    const double sigma = std::sqrt(q * (1 - q) / samples);
    CHECK(std::abs(static_cast<double>(proper) / samples - q) <= 4 * sigma);
    CHECK(agree == samples);

    // properly coloured at least as often as the relaxation pays, on
    // random vertex pairs
    for (int t = 0; t < 5; ++t) {
        const Embedding pair = random_embedding(2, 3, derive_seed(55, static_cast<std::uint64_t>(t)));
        const double al = pair.dot(0, 1);
        const HalfSpaceSystem ps = colour_system(single_edge(), pair);
        const int n_mc = 100'000;
        Rng mc(derive_seed(56, static_cast<std::uint64_t>(t)));
        long hits = 0;
        for (int s = 0; s < n_mc; ++s) {
            std::vector<double> a(ps.dimension);
            for (double& x : a) x = mc.next_gaussian();
            if (ps.indicator_sum(a) == 1.0) ++hits;
        }
        const double qq = 1 - 3 * p_alpha(al);
        const double sg = std::sqrt(qq * (1 - qq) / n_mc);
        CHECK(static_cast<double>(hits) / n_mc >= (1 - al) / 2 - 4 * sg);
    }
}

TEST_CASE("colour system counts properly coloured weight") {
    const Multigraph g(4, {{0, 1, 3}, {1, 2, 2}, {0, 2, 1}, {2, 3, 5}});
    const Embedding emb = random_embedding(4, 3, 17);
    const HalfSpaceSystem sys = colour_system(g, emb);
    CHECK(sys.terms.size() == 6 * g.support_size());
    CHECK(sys.dimension == 3 * emb.rank);

    Rng rng(23);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> a(sys.dimension);
        for (double& x : a) x = rng.next_gaussian();
        const ThreeColouring c = round_three(emb, triple_from(a, emb.rank));
        CHECK(sys.indicator_sum(a) == static_cast<double>(colouring_weight(g, c)));
    }
}

TEST_CASE("solve colours bipartite graphs perfectly") {
    const Multigraph path(4, {{0, 1, 2}, {1, 2, 3}, {2, 3, 7}});
    const ThreeColourResult r = solve_k2_k3(path, ThreeColourMode::restarts, 0, 5);
    CHECK(r.satisfied_weight == 12);
    CHECK(r.certified);
    CHECK(r.sdp_bound == doctest::Approx(12.0).epsilon(0.005));
    CHECK(colouring_weight(path, r.colouring) == 12);
    CHECK(r.restarts_used >= 1);
}

TEST_CASE("solve certifies the triangle") {
    const ThreeColourResult r = solve_k2_k3(triangle(), ThreeColourMode::restarts, 0, 1);
    CHECK(r.sdp_bound == doctest::Approx(2.25).epsilon(0.005));
    CHECK(r.certified);
    CHECK(r.satisfied_weight >= 2);
    CHECK(r.satisfied_weight <= brute_best_3colouring(triangle()).first);
}

TEST_CASE("solve beats the best cut on random multigraphs") {
    Rng gen(606);
    int done = 0;
    while (done < 12) {
        const int n = 3 + static_cast<int>(gen.next_u64() % 6);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (gen.next_unit() < 0.5)
                    edges.push_back({u, v, 1 + static_cast<std::int64_t>(gen.next_u64() % 3)});
        if (edges.empty()) continue;
        const Multigraph g(n, edges);
        const ThreeColourResult r =
            solve_k2_k3(g, ThreeColourMode::restarts, 0, derive_seed(7000, done));
        const std::int64_t rho = brute_max_cut(g).first;
        const std::int64_t best3 = brute_best_3colouring(g).first;
        CHECK(r.satisfied_weight >= rho);
        CHECK(r.satisfied_weight <= best3);
        CHECK(r.certified);
        ++done;
    }
}

TEST_CASE("derandomised solve on the smallest instances") {
    // single edge: the full 6-term system is won exactly
    const auto [emb, report] = solve_maxcut_sdp(single_edge(), 0.01, 3);
    CHECK(report.objective == doctest::Approx(1.0).epsilon(1e-6));
    const DerandResult dr = derandomize(colour_system(single_edge(), emb));
    CHECK(dr.achieved == 1.0);

    const ThreeColourResult edge =
        solve_k2_k3(single_edge(), ThreeColourMode::derandomised, 0, 3);
    CHECK(edge.satisfied_weight == 1);
    CHECK(edge.certified);

    // expectation 2.508 on the triangle and 4.687 on K4; the maximiser
    // lands on the proper 3-colouring and the (2,1,1) split
    const ThreeColourResult tri =
        solve_k2_k3(triangle(), ThreeColourMode::derandomised, 0, 3);
    CHECK(tri.satisfied_weight == 3);
    CHECK(tri.certified);

    const ThreeColourResult four = solve_k2_k3(k4(), ThreeColourMode::derandomised, 0, 3);
    CHECK(four.satisfied_weight == 5);
    CHECK(four.certified);
}

TEST_CASE("solve is deterministic and reports its budget use") {
    const Multigraph g = k4();
    const ThreeColourResult a = solve_k2_k3(g, ThreeColourMode::restarts, 0, 42);
    const ThreeColourResult b = solve_k2_k3(g, ThreeColourMode::restarts, 0, 42);
    CHECK(a.colouring.colour == b.colouring.colour);
    CHECK(a.satisfied_weight == b.satisfied_weight);
    CHECK(a.restarts_used == b.restarts_used);

    const ThreeColourResult one = solve_k2_k3(g, ThreeColourMode::restarts, 1, 42);
    CHECK(one.restarts_used == 1);
    CHECK(one.satisfied_weight == colouring_weight(g, one.colouring));

    const ThreeColourResult coarse =
        solve_k2_k3(single_edge(), ThreeColourMode::derandomised, 0, 9, 8);
    CHECK(coarse.satisfied_weight == 1);
    CHECK(coarse.certified);
}

TEST_CASE("solve rejects empty input and tiny atom budgets") {
    CHECK_THROWS_AS(solve_k2_k3(Multigraph(3, {}), ThreeColourMode::restarts, 0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_k2_k3(triangle(), ThreeColourMode::derandomised, 3, 1),
                    AtomBudgetError);
}

}  // TEST_SUITE
