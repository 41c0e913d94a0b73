#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "massaction/automaton.hpp"
#include "massaction/meanfield.hpp"
#include "massaction/rng.hpp"
#include "massaction/spatial.hpp"

namespace massaction {

enum class Model { kMean, kSsa, kSpatial };

std::string_view to_string(Model model);
std::optional<Model> model_from_string(std::string_view name);

// Axis-aligned placement box, sampled uniformly on [x0, x1) x [y0, y1).
struct Region {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;

    bool operator==(const Region&) const = default;
};

struct SpeciesPlacement {
    std::uint64_t count = 0;
    std::optional<Region> region;  // nullopt: whole arena

    bool operator==(const SpeciesPlacement&) const = default;
};

// A fully validated run description. `alpha` empty means "derive from the
// arena geometry"; regions require an arena and must lie inside it.
struct ScenarioConfig {
    ParticleAutomaton automaton;
    Model model = Model::kMean;
    std::vector<SpeciesPlacement> placement;  // indexed like automaton.species()
    std::optional<Arena> arena;
    std::size_t horizon = 0;
    std::uint64_t seed = 0;
    std::size_t replicates = 1;
    std::optional<double> alpha;
    double c_bin = kDefaultBinaryWeight;

    std::uint64_t total_population() const;
    std::vector<std::uint64_t> initial_counts() const;
    Concentration initial_concentration() const;
    double effective_alpha() const;

    bool operator==(const ScenarioConfig&) const = default;
};

// Re-checks every structural invariant (population, arena geometry, regions,
// alpha range, replicate count); parse_scenario applies it, and callers that
// mutate a config afterwards should too.
void validate_scenario(const ScenarioConfig& config);

// Line-oriented "key = value" format under [section] headers; sections
// [automaton] (path = <file>, or the automaton text inlined verbatim),
// [model] (type), [population] (<species> = <count> [@ x0,y0,x1,y1]),
// [arena] (width, height, r, s) and [run] (T, seed, replicates,
// alpha = <number>|geometry, c_bin). '#' starts a comment.
ScenarioConfig parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& file);

// Canonical form with the automaton inlined; parse(serialize(c)) == c.
std::string serialize_scenario(const ScenarioConfig& config);

// Particles with ids 0..m-1, species block by species block; per particle
// x is drawn before y from the species region (or the whole arena).
SpatialState init_spatial(const ScenarioConfig& config, RngStream& rng);

// The bundled two-predator arena study; variant 'a' mixes everything,
// 'b' confines both rare species to the same central unit square,
// 'c' separates them into opposite corners.
ScenarioConfig five_species_scenario(char variant);

}  // namespace massaction
