#include <benchmark/benchmark.h>

#include <cstdint>
#include <filesystem>
#include <vector>

#include "massaction/automaton.hpp"
#include "massaction/io.hpp"
#include "massaction/meanfield.hpp"
#include "massaction/rng.hpp"
#include "massaction/scenario.hpp"
#include "massaction/spatial.hpp"
#include "massaction/wellstirred.hpp"

namespace {

using namespace massaction;

ParticleAutomaton table1() {
    return parse_automaton(
        read_text_file(std::filesystem::path(MASSACTION_SCENARIO_DIR) / "table1.aut"));
}

SpatialState random_state(std::size_t m, const Arena& arena, std::uint64_t seed) {
    RngStream rng(seed, 0);
    SpatialState s;
    s.particles.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        s.particles.push_back({i, static_cast<std::uint32_t>(rng.uniform_index(3)),
                               arena.width * rng.u01(), arena.height * rng.u01()});
    }
    return s;
}

void BM_MeanFieldStep(benchmark::State& state) {
    const auto a = table1();
    Concentration x = {0.4, 0.3, 0.3};
    for (auto _ : state) {
        x = step(a, x, 0.1);
        benchmark::DoNotOptimize(x.data());
    }
}
BENCHMARK(BM_MeanFieldStep);

void BM_SsaStep(benchmark::State& state) {
    const auto a = table1();
    const auto m = static_cast<std::uint64_t>(state.range(0));
    auto s = micro_from_counts(std::vector<std::uint64_t>{m * 2 / 5, m * 3 / 10, m * 3 / 10});
    RngStream rng(1, 0);
    for (auto _ : state) {
        ssa_step(a, s, 0.1, rng);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.particles.size()));
}
BENCHMARK(BM_SsaStep)->Arg(1000)->Arg(10000);

void BM_NeighborsBrute(benchmark::State& state) {
    const Arena arena{20.0, 20.0, 0.3, 0.3};
    const auto s = random_state(static_cast<std::size_t>(state.range(0)), arena, 7);
    for (auto _ : state) {
        auto lists = neighbors_brute(s, arena);
        benchmark::DoNotOptimize(lists.data());
    }
}
BENCHMARK(BM_NeighborsBrute)->Arg(250)->Arg(1000)->Arg(4000);

void BM_NeighborsGrid(benchmark::State& state) {
    const Arena arena{20.0, 20.0, 0.3, 0.3};
    const auto s = random_state(static_cast<std::size_t>(state.range(0)), arena, 7);
    for (auto _ : state) {
        auto lists = neighbors_grid(s, arena);
        benchmark::DoNotOptimize(lists.data());
    }
}
BENCHMARK(BM_NeighborsGrid)->Arg(250)->Arg(1000)->Arg(4000)->Arg(16000);

void BM_SpatialStep(benchmark::State& state) {
    const auto config = five_species_scenario('a');
    RngStream rng(3, 0);
    auto s = init_spatial(config, rng);
    for (auto _ : state) {
        spatial_step(config.automaton, s, *config.arena, rng);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.particles.size()));
}
BENCHMARK(BM_SpatialStep);

void BM_DerivePolynomial(benchmark::State& state) {
    const auto a = table1();
    for (auto _ : state) {
        auto sys = derive_polynomial(a, 0.1);
        benchmark::DoNotOptimize(sys.linear.data());
    }
}
BENCHMARK(BM_DerivePolynomial);

}  // namespace

BENCHMARK_MAIN();
