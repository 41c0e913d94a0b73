#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "massaction/automaton.hpp"
#include "massaction/rng.hpp"
#include "massaction/series.hpp"

namespace massaction {

// Rectangular torus with reaction radius and per-step diffusion bound.
struct Arena {
    double width = 0.0;
    double height = 0.0;
    double radius = 0.0;    // pairwise reaction radius r
    double max_step = 0.0;  // diffusion step length bound s

    double area() const { return width * height; }

    bool operator==(const Arena&) const = default;
};

struct SpatialParticle {
    std::uint64_t id = 0;
    std::uint32_t state = 0;
    double x = 0.0;
    double y = 0.0;

    bool operator==(const SpatialParticle&) const = default;
};

struct SpatialState {
    std::vector<SpatialParticle> particles;

    bool operator==(const SpatialState&) const = default;
};

// Minimum-image Euclidean distance on the torus.
double torus_distance(double ax, double ay, double bx, double by, double width, double height);

// Maps v into [0, period).
double wrap_coordinate(double v, double period);

// Per particle in index order: step length h uniform on [0, max_step]
// (drawn first), heading uniform on [0, 2*pi) (drawn second).
void diffuse(SpatialState& s, const Arena& arena, RngStream& rng);

// neighbors[i] lists the indices j != i with torus distance strictly below
// arena.radius, ascending. Brute force and the uniform-grid accelerator are
// exchangeable: same predicate, same output.
using NeighborLists = std::vector<std::vector<std::uint32_t>>;
NeighborLists neighbors_brute(const SpatialState& s, const Arena& arena);
NeighborLists neighbors_grid(const SpatialState& s, const Arena& arena);
NeighborLists neighbors(const SpatialState& s, const Arena& arena);

// Synchronous reaction round against the pre-round states: a particle with
// no neighbors reacts solitarily; otherwise it samples one pairwise outcome
// per neighbor (a multiset, ordered by neighbor id) and keeps one of them
// uniformly. Each particle consumes its own substream keyed by particle id
// off the parent stream's current position, so the result is invariant
// under reordering of the particle vector.
void react_phase(const ParticleAutomaton& a, SpatialState& s, const NeighborLists& neighbors,
                 const RngStream& rng);

// One synchronous step: diffuse, rebuild neighborhoods, react.
void spatial_step(const ParticleAutomaton& a, SpatialState& s, const Arena& arena, RngStream& rng);

std::vector<std::uint64_t> counts(const SpatialState& s, std::size_t species_count);

// Encounter probability bridge: alpha = 1 - (1 - pi r^2 / area)^(m - 1).
double alpha_from_geometry(double radius, double area, std::uint64_t m);

using FrameSink = std::function<void(std::size_t t, const SpatialState&)>;

// Count series at t = 0..horizon; the sink, when set, sees every state
// including the initial one.
std::vector<std::vector<std::uint64_t>> simulate_spatial(const ParticleAutomaton& a,
                                                         SpatialState state, const Arena& arena,
                                                         std::size_t horizon, RngStream rng,
                                                         const FrameSink& sink = {});

}  // namespace massaction
