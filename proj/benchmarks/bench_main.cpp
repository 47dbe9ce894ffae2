#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "trifree/derand.hpp"
#include "trifree/graph.hpp"
#include "trifree/hardness.hpp"
#include "trifree/oracles.hpp"
#include "trifree/params.hpp"
#include "trifree/random.hpp"
#include "trifree/rounding.hpp"
#include "trifree/sdp.hpp"
#include "trifree/threecolor.hpp"

namespace {

using namespace trifree;

Multigraph random_graph(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_unit() < p) edges.push_back({u, v, 1});
    if (edges.empty()) edges.push_back({0, 1, 1});
    return Multigraph(n, edges);
}

void BM_SdpSolve(benchmark::State& state) {
    const Multigraph g = random_graph(static_cast<int>(state.range(0)), 0.5, 7);
    for (auto _ : state) {
        auto [emb, report] = solve_maxcut_sdp(g, 1e-4, 1);
        benchmark::DoNotOptimize(report.objective);
    }
}
BENCHMARK(BM_SdpSolve)->Arg(16)->Arg(32)->Arg(64);

void BM_RoundGw(benchmark::State& state) {
    const Multigraph g = random_graph(64, 0.5, 7);
    const auto [emb, report] = solve_maxcut_sdp(g, 1e-4, 1);
    std::uint64_t s = 0;
    for (auto _ : state) {
        const Hyperplane h = sample_hyperplane(emb.rank, derive_seed(1, s++));
        benchmark::DoNotOptimize(round_gw(g, emb, h).weight);
    }
}
BENCHMARK(BM_RoundGw);

void BM_RoundHybrid(benchmark::State& state) {
    const Multigraph g = random_graph(64, 0.5, 7);
    const auto [emb, report] = solve_maxcut_sdp(g, 1e-4, 1);
    const RoundingParams params = hybrid_params();
    std::uint64_t s = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(round_hybrid(g, emb, params, derive_seed(2, s++)).weight);
}
BENCHMARK(BM_RoundHybrid);

void BM_DerandRound(benchmark::State& state) {
    const Multigraph g = random_graph(static_cast<int>(state.range(0)), 0.5, 7);
    const auto [emb, report] = solve_maxcut_sdp(g, 1e-4, 1);
    const RoundingParams params = hybrid_params();
    for (auto _ : state)
        benchmark::DoNotOptimize(derandomised_round(g, emb, params).weight);
}
BENCHMARK(BM_DerandRound)->Arg(8)->Arg(12);

void BM_Color3Restarts(benchmark::State& state) {
    const Multigraph g = random_graph(16, 0.4, 11);
    std::uint64_t s = 0;
    for (auto _ : state) {
        const ThreeColourResult r =
            solve_k2_k3(g, ThreeColourMode::restarts, 0, derive_seed(3, s++));
        benchmark::DoNotOptimize(r.satisfied_weight);
    }
}
BENCHMARK(BM_Color3Restarts);

void BM_VerifyGadget17(benchmark::State& state) {
    const Gadget g = gadget17();
    for (auto _ : state) benchmark::DoNotOptimize(verify_gadget(g).ok());
}
BENCHMARK(BM_VerifyGadget17);

void BM_BruteTriangleFree(benchmark::State& state) {
    const Multigraph g = random_graph(8, 0.7, 5);
    for (auto _ : state) benchmark::DoNotOptimize(brute_max_triangle_free(g).first);
}
BENCHMARK(BM_BruteTriangleFree);

void BM_BinomialGrid(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(BinomialGrid::make(static_cast<int>(state.range(0))).points);
}
BENCHMARK(BM_BinomialGrid)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
