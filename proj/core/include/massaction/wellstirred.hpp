#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "massaction/automaton.hpp"
#include "massaction/rng.hpp"
#include "massaction/series.hpp"

namespace massaction {

struct MicroParticle {
    std::uint64_t id = 0;
    std::uint32_t state = 0;

    bool operator==(const MicroParticle&) const = default;
};

struct MicroState {
    std::vector<MicroParticle> particles;

    bool operator==(const MicroState&) const = default;
};

// Particles with ids 0..m-1, laid out species block by species block.
MicroState micro_from_counts(std::span<const std::uint64_t> counts);

std::vector<std::uint64_t> counts(const MicroState& s, std::size_t species_count);

// One synchronous round: particles are drawn without replacement; a drawn
// particle reacts pairwise with probability alpha when a partner is still
// available (consuming the partner without its own coin), and solitarily
// otherwise. A particle left alone at the end reacts solitarily without
// spending a coin. Both pairwise outcomes are sampled from the pre-round
// states, initiator first.
void ssa_step(const ParticleAutomaton& a, MicroState& s, double alpha, RngStream& rng);

// Count series at t = 0..horizon.
std::vector<std::vector<std::uint64_t>> simulate_ssa(const ParticleAutomaton& a,
                                                     std::span<const std::uint64_t> initial,
                                                     double alpha, std::size_t horizon,
                                                     RngStream rng);

// Replicate rep runs on RngStream(seed, rep); jobs only schedules the work,
// the statistics are identical for any jobs value.
EnsembleSeries ensemble(const ParticleAutomaton& a, std::span<const std::uint64_t> initial,
                        double alpha, std::size_t horizon, std::size_t replicates,
                        std::uint64_t seed, std::size_t jobs = 1);

}  // namespace massaction
