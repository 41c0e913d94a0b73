#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "massaction/scenario.hpp"

namespace massaction {

inline constexpr const char* kToolVersion = "0.1.0";

// Everything needed to reproduce a run; deliberately free of wall-clock or
// host details so repeated runs produce identical sidecars.
struct RunMetadata {
    std::string tool_version;
    std::string rng_algorithm;
    std::string scenario_hash;  // fnv1a64 over the canonical scenario form
    std::string model;
    std::uint64_t seed = 0;
    std::uint64_t streams = 0;  // RNG streams consumed (replicates, +1 spatial init)
    double alpha = 0.0;         // effective encounter probability
    double c_bin = 0.0;
    std::uint64_t population = 0;
    std::uint64_t horizon = 0;
    std::uint64_t replicates = 0;
};

RunMetadata make_metadata(const ScenarioConfig& config);
std::string metadata_json(const RunMetadata& meta);

struct RunResult {
    std::vector<std::filesystem::path> files;
};

// Simulates config.model and writes <model>.csv plus <model>.meta.json into
// out_dir (created if missing). A single replicate yields a plain
// trajectory/count series; several yield an ensemble CSV. frame_cadence > 0
// (spatial, single replicate only) additionally writes
// frames/frame_<t>.csv every that-many steps.
RunResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                       std::size_t jobs = 1, std::size_t frame_cadence = 0);

// The bundled five-species comparison: spatial and ssa ensembles plus the
// mean-field trajectory at the geometry-bridged alpha, written as
// five_<variant>_{spatial,ssa,mean}.csv with metadata sidecars.
RunResult run_experiment(char variant, const std::filesystem::path& out_dir,
                         std::uint64_t seed, std::size_t replicates, std::size_t jobs = 1);

}  // namespace massaction
