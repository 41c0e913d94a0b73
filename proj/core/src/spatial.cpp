#include "massaction/spatial.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <numbers>

#include "massaction/errors.hpp"

namespace massaction {
namespace {

constexpr std::uint64_t kReactKey = 0x72656163745F3031ULL;

double axis_delta(double a, double b, double period) {
    double d = std::fabs(a - b);
    return std::min(d, period - d);
}

double distance_sq(const SpatialParticle& a, const SpatialParticle& b, const Arena& arena) {
    const double dx = axis_delta(a.x, b.x, arena.width);
    const double dy = axis_delta(a.y, b.y, arena.height);
    return dx * dx + dy * dy;
}

// Cell edge stays >= radius, so a 3x3 cell neighborhood covers the disc.
// The extent is capped so sparse radii cannot blow up the cell table.
std::size_t grid_extent(double span, double radius, std::size_t m) {
    const auto by_radius = static_cast<std::size_t>(std::floor(span / radius));
    const auto cap = 2 * static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m)))) + 1;
    return std::clamp<std::size_t>(std::min(by_radius, cap), 1, 4096);
}

}  // namespace

double wrap_coordinate(double v, double period) {
    double w = std::fmod(v, period);
    if (w < 0.0) {
        w += period;
    }
    return (w >= period) ? 0.0 : w;
}

double torus_distance(double ax, double ay, double bx, double by, double width, double height) {
    const double dx = axis_delta(ax, bx, width);
    const double dy = axis_delta(ay, by, height);
    return std::sqrt(dx * dx + dy * dy);
}

void diffuse(SpatialState& s, const Arena& arena, RngStream& rng) {
    for (auto& p : s.particles) {
        const double h = arena.max_step * rng.u01_closed();
        const double theta = 2.0 * std::numbers::pi * rng.u01();
        p.x = wrap_coordinate(p.x + h * std::cos(theta), arena.width);
        p.y = wrap_coordinate(p.y + h * std::sin(theta), arena.height);
    }
}

NeighborLists neighbors_brute(const SpatialState& s, const Arena& arena) {
    const std::size_t m = s.particles.size();
    NeighborLists out(m);
    if (arena.radius <= 0.0) {
        return out;
    }
    const double r2 = arena.radius * arena.radius;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (distance_sq(s.particles[i], s.particles[j], arena) < r2) {
                out[i].push_back(static_cast<std::uint32_t>(j));
                out[j].push_back(static_cast<std::uint32_t>(i));
            }
        }
    }
    for (auto& list : out) {
        std::sort(list.begin(), list.end());
    }
    return out;
}

NeighborLists neighbors_grid(const SpatialState& s, const Arena& arena) {
    const std::size_t m = s.particles.size();
    NeighborLists out(m);
    if (m == 0 || arena.radius <= 0.0) {
        return out;
    }
    const double r2 = arena.radius * arena.radius;
    const std::size_t nx = grid_extent(arena.width, arena.radius, m);
    const std::size_t ny = grid_extent(arena.height, arena.radius, m);
    const double cw = arena.width / static_cast<double>(nx);
    const double ch = arena.height / static_cast<double>(ny);

    const auto cell_x = [&](double x) {
        return std::min(nx - 1, static_cast<std::size_t>(x / cw));
    };
    const auto cell_y = [&](double y) {
        return std::min(ny - 1, static_cast<std::size_t>(y / ch));
    };

    std::vector<std::vector<std::uint32_t>> cells(nx * ny);
    for (std::size_t i = 0; i < m; ++i) {
        cells[cell_y(s.particles[i].y) * nx + cell_x(s.particles[i].x)].push_back(
            static_cast<std::uint32_t>(i));
    }

    std::array<std::size_t, 9> candidate_cells{};
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t cx = cell_x(s.particles[i].x);
        const std::size_t cy = cell_y(s.particles[i].y);
        std::size_t candidates = 0;
        for (std::size_t dy = 0; dy < 3; ++dy) {
            const std::size_t gy = (cy + ny + dy - 1) % ny;
            for (std::size_t dx = 0; dx < 3; ++dx) {
                const std::size_t gx = (cx + nx + dx - 1) % nx;
                candidate_cells[candidates++] = gy * nx + gx;
            }
        }
        // Wrapped extents below 3 cells revisit the same cell; deduplicate.
        std::sort(candidate_cells.begin(), candidate_cells.begin() + candidates);
        const auto end = std::unique(candidate_cells.begin(), candidate_cells.begin() + candidates);
        for (auto it = candidate_cells.begin(); it != end; ++it) {
            for (const std::uint32_t j : cells[*it]) {
                if (j != i && distance_sq(s.particles[i], s.particles[j], arena) < r2) {
                    out[i].push_back(j);
                }
            }
        }
        std::sort(out[i].begin(), out[i].end());
    }
    return out;
}

NeighborLists neighbors(const SpatialState& s, const Arena& arena) {
    return (s.particles.size() < 64) ? neighbors_brute(s, arena) : neighbors_grid(s, arena);
}

void react_phase(const ParticleAutomaton& a, SpatialState& s, const NeighborLists& neighbors,
                 const RngStream& rng) {
    const std::size_t m = s.particles.size();
    assert(neighbors.size() == m);
    std::vector<std::uint32_t> next(m);
    std::vector<std::pair<std::uint64_t, std::uint32_t>> encounters;
    std::vector<std::uint32_t> outcomes;

    for (std::size_t i = 0; i < m; ++i) {
        const auto& p = s.particles[i];
        RngStream sub = rng.substream(p.id, kReactKey);
        if (neighbors[i].empty()) {
            next[i] = static_cast<std::uint32_t>(a.sample_solitary(p.state, sub.u01()));
            continue;
        }
        encounters.clear();
        for (const std::uint32_t j : neighbors[i]) {
            encounters.emplace_back(s.particles[j].id, s.particles[j].state);
        }
        std::sort(encounters.begin(), encounters.end());
        outcomes.clear();
        for (const auto& [id, state] : encounters) {
            outcomes.push_back(static_cast<std::uint32_t>(a.sample_binary(p.state, state, sub.u01())));
        }
        next[i] = outcomes[sub.uniform_index(outcomes.size())];
    }
    for (std::size_t i = 0; i < m; ++i) {
        s.particles[i].state = next[i];
    }
}

void spatial_step(const ParticleAutomaton& a, SpatialState& s, const Arena& arena, RngStream& rng) {
    diffuse(s, arena, rng);
    const NeighborLists nbr = neighbors(s, arena);
    react_phase(a, s, nbr, rng);
}

std::vector<std::uint64_t> counts(const SpatialState& s, std::size_t species_count) {
    std::vector<std::uint64_t> c(species_count, 0);
    for (const auto& p : s.particles) {
        assert(p.state < species_count);
        ++c[p.state];
    }
    return c;
}

double alpha_from_geometry(double radius, double area, std::uint64_t m) {
    if (!(area > 0.0) || !(radius >= 0.0)) {
        throw InvalidGeometryError("arena area must be positive and radius non-negative");
    }
    if (m == 0) {
        throw InvalidGeometryError("population must be at least 1");
    }
    const double disc = std::numbers::pi * radius * radius;
    if (disc > area) {
        throw InvalidGeometryError("reaction disc area exceeds arena area");
    }
    // log1p keeps the disc fraction at full precision; forming 1 - p first
    // would cost ~1e-13 after the (m - 1)th power.
    const double p = disc / area;
    if (m == 1 || p == 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(m - 1) * std::log1p(-p));
}

std::vector<std::vector<std::uint64_t>> simulate_spatial(const ParticleAutomaton& a,
                                                         SpatialState state, const Arena& arena,
                                                         std::size_t horizon, RngStream rng,
                                                         const FrameSink& sink) {
    std::vector<std::vector<std::uint64_t>> series;
    series.reserve(horizon + 1);
    series.push_back(counts(state, a.species_count()));
    if (sink) {
        sink(0, state);
    }
    for (std::size_t t = 1; t <= horizon; ++t) {
        spatial_step(a, state, arena, rng);
        series.push_back(counts(state, a.species_count()));
        if (sink) {
            sink(t, state);
        }
    }
    return series;
}

}  // namespace massaction
