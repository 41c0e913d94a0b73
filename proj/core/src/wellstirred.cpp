#include "massaction/wellstirred.hpp"

#include <cassert>
#include <cmath>
#include <numeric>

#include "run_parallel.hpp"

namespace massaction {

MicroState micro_from_counts(std::span<const std::uint64_t> counts) {
    MicroState s;
    std::uint64_t total = 0;
    for (const auto c : counts) {
        total += c;
    }
    s.particles.reserve(total);
    std::uint64_t id = 0;
    for (std::uint32_t q = 0; q < counts.size(); ++q) {
        for (std::uint64_t c = 0; c < counts[q]; ++c) {
            s.particles.push_back({id++, q});
        }
    }
    return s;
}

std::vector<std::uint64_t> counts(const MicroState& s, std::size_t species_count) {
    std::vector<std::uint64_t> c(species_count, 0);
    for (const auto& p : s.particles) {
        assert(p.state < species_count);
        ++c[p.state];
    }
    return c;
}

void ssa_step(const ParticleAutomaton& a, MicroState& s, double alpha, RngStream& rng) {
    auto& ps = s.particles;
    std::vector<std::uint32_t> pool(ps.size());
    std::iota(pool.begin(), pool.end(), 0);

    const auto take = [&](std::size_t k) {
        const std::uint32_t idx = pool[k];
        pool[k] = pool.back();
        pool.pop_back();
        return idx;
    };

    while (!pool.empty()) {
        const std::uint32_t i = take(rng.uniform_index(pool.size()));
        if (!pool.empty() && rng.u01() < alpha) {
            const std::uint32_t j = take(rng.uniform_index(pool.size()));
            const std::uint32_t p = ps[i].state;
            const std::uint32_t q = ps[j].state;
            ps[i].state = static_cast<std::uint32_t>(a.sample_binary(p, q, rng.u01()));
            ps[j].state = static_cast<std::uint32_t>(a.sample_binary(q, p, rng.u01()));
        } else {
            ps[i].state = static_cast<std::uint32_t>(a.sample_solitary(ps[i].state, rng.u01()));
        }
    }
}

std::vector<std::vector<std::uint64_t>> simulate_ssa(const ParticleAutomaton& a,
                                                     std::span<const std::uint64_t> initial,
                                                     double alpha, std::size_t horizon,
                                                     RngStream rng) {
    assert(initial.size() == a.species_count());
    MicroState s = micro_from_counts(initial);
    std::vector<std::vector<std::uint64_t>> series;
    series.reserve(horizon + 1);
    series.push_back(counts(s, a.species_count()));
    for (std::size_t t = 0; t < horizon; ++t) {
        ssa_step(a, s, alpha, rng);
        series.push_back(counts(s, a.species_count()));
    }
    return series;
}

EnsembleSeries series_stats(const std::vector<std::vector<std::vector<std::uint64_t>>>& runs) {
    EnsembleSeries out;
    if (runs.empty() || runs.front().empty()) {
        return out;
    }
    const std::size_t reps = runs.size();
    const std::size_t steps = runs.front().size();
    const std::size_t n = runs.front().front().size();
    out.mean.assign(steps, std::vector<double>(n, 0.0));
    out.stddev.assign(steps, std::vector<double>(n, 0.0));

    for (std::size_t t = 0; t < steps; ++t) {
        for (std::size_t k = 0; k < n; ++k) {
            double sum = 0.0;
            for (std::size_t rep = 0; rep < reps; ++rep) {
                sum += static_cast<double>(runs[rep][t][k]);
            }
            out.mean[t][k] = sum / static_cast<double>(reps);
        }
        if (reps > 1) {
            for (std::size_t k = 0; k < n; ++k) {
                double ss = 0.0;
                for (std::size_t rep = 0; rep < reps; ++rep) {
                    const double d = static_cast<double>(runs[rep][t][k]) - out.mean[t][k];
                    ss += d * d;
                }
                out.stddev[t][k] = std::sqrt(ss / static_cast<double>(reps - 1));
            }
        }
    }
    return out;
}

EnsembleSeries ensemble(const ParticleAutomaton& a, std::span<const std::uint64_t> initial,
                        double alpha, std::size_t horizon, std::size_t replicates,
                        std::uint64_t seed, std::size_t jobs) {
    std::vector<std::vector<std::vector<std::uint64_t>>> runs(replicates);
    detail::run_parallel(replicates, jobs, [&](std::size_t rep) {
        runs[rep] = simulate_ssa(a, initial, alpha, horizon, RngStream(seed, rep));
    });
    return series_stats(runs);
}

}  // namespace massaction
