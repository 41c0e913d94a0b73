#include "massaction/runner.hpp"

#include <nlohmann/json.hpp>

#include "massaction/errors.hpp"
#include "massaction/io.hpp"
#include "massaction/meanfield.hpp"
#include "massaction/wellstirred.hpp"
#include "run_parallel.hpp"

namespace massaction {
namespace {

std::string hex16(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (std::size_t i = 16; i-- > 0; v >>= 4) {
        out[i] = digits[v & 0xF];
    }
    return out;
}

std::vector<std::vector<double>> as_double_rows(const std::vector<std::vector<std::uint64_t>>& series) {
    std::vector<std::vector<double>> rows;
    rows.reserve(series.size());
    for (const auto& r : series) {
        rows.emplace_back(r.begin(), r.end());
    }
    return rows;
}

// One model simulated and written as <base>.csv + <base>.meta.json.
RunResult run_model(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                    const std::string& base, std::size_t jobs, std::size_t frame_cadence) {
    if (frame_cadence > 0 && config.model != Model::kSpatial) {
        throw InputError("frame dumps require the spatial model");
    }
    if (frame_cadence > 0 && config.replicates != 1) {
        throw InputError("frame dumps require replicates = 1");
    }
    std::filesystem::create_directories(out_dir);

    const auto& a = config.automaton;
    const double alpha = config.effective_alpha();
    std::string csv;

    switch (config.model) {
        case Model::kMean: {
            const auto trajectory =
                simulate_mean(a, config.initial_concentration(), alpha, config.horizon, config.c_bin);
            csv = trajectory_csv(a.species(), trajectory);
            break;
        }
        case Model::kSsa: {
            const auto initial = config.initial_counts();
            if (config.replicates == 1) {
                csv = trajectory_csv(
                    a.species(),
                    as_double_rows(simulate_ssa(a, initial, alpha, config.horizon,
                                                RngStream(config.seed, 0))));
            } else {
                const EnsembleSeries stats = ensemble(a, initial, alpha, config.horizon,
                                                      config.replicates, config.seed, jobs);
                csv = ensemble_csv(a.species(), stats.mean, stats.stddev);
            }
            break;
        }
        case Model::kSpatial: {
            if (config.replicates == 1) {
                FrameSink sink;
                std::filesystem::path frame_dir;
                if (frame_cadence > 0) {
                    frame_dir = out_dir / "frames";
                    std::filesystem::create_directories(frame_dir);
                    sink = [&](std::size_t t, const SpatialState& state) {
                        if (t % frame_cadence == 0) {
                            write_text_file(frame_dir / ("frame_" + std::to_string(t) + ".csv"),
                                            frame_csv(a.species(), state));
                        }
                    };
                }
                RngStream rng(config.seed, 0);
                SpatialState state = init_spatial(config, rng);
                csv = trajectory_csv(a.species(),
                                     as_double_rows(simulate_spatial(a, std::move(state),
                                                                     *config.arena, config.horizon,
                                                                     rng, sink)));
            } else {
                std::vector<std::vector<std::vector<std::uint64_t>>> runs(config.replicates);
                detail::run_parallel(config.replicates, jobs, [&](std::size_t rep) {
                    RngStream rng(config.seed, rep);
                    SpatialState state = init_spatial(config, rng);
                    runs[rep] = simulate_spatial(a, std::move(state), *config.arena,
                                                 config.horizon, rng);
                });
                const EnsembleSeries stats = series_stats(runs);
                csv = ensemble_csv(a.species(), stats.mean, stats.stddev);
            }
            break;
        }
    }

    RunResult result;
    const auto csv_path = out_dir / (base + ".csv");
    write_text_file(csv_path, csv);
    result.files.push_back(csv_path);

    const auto meta_path = out_dir / (base + ".meta.json");
    write_text_file(meta_path, metadata_json(make_metadata(config)));
    result.files.push_back(meta_path);
    return result;
}

}  // namespace

RunMetadata make_metadata(const ScenarioConfig& config) {
    RunMetadata meta;
    meta.tool_version = kToolVersion;
    meta.rng_algorithm = RngStream::kAlgorithmId;
    meta.scenario_hash = "fnv1a64:" + hex16(fnv1a64(serialize_scenario(config)));
    meta.model = to_string(config.model);
    meta.seed = config.seed;
    meta.streams = (config.model == Model::kMean) ? 0 : config.replicates;
    meta.alpha = config.effective_alpha();
    meta.c_bin = config.c_bin;
    meta.population = config.total_population();
    meta.horizon = config.horizon;
    meta.replicates = config.replicates;
    return meta;
}

std::string metadata_json(const RunMetadata& meta) {
    nlohmann::json j;
    j["schema"] = "massaction/run-metadata/1";
    j["tool_version"] = meta.tool_version;
    j["rng_algorithm"] = meta.rng_algorithm;
    j["scenario_hash"] = meta.scenario_hash;
    j["model"] = meta.model;
    j["seed"] = meta.seed;
    j["streams"] = meta.streams;
    j["alpha"] = meta.alpha;
    j["c_bin"] = meta.c_bin;
    j["population"] = meta.population;
    j["horizon"] = meta.horizon;
    j["replicates"] = meta.replicates;
    return j.dump(2) + "\n";
}

RunResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                       std::size_t jobs, std::size_t frame_cadence) {
    return run_model(config, out_dir, std::string(to_string(config.model)), jobs, frame_cadence);
}

RunResult run_experiment(char variant, const std::filesystem::path& out_dir, std::uint64_t seed,
                         std::size_t replicates, std::size_t jobs) {
    ScenarioConfig config = five_species_scenario(variant);
    config.seed = seed;
    config.replicates = replicates;

    const std::string prefix = std::string("five_") + variant + '_';
    RunResult all;

    ScenarioConfig spatial_cfg = config;
    RunResult r1 = run_model(spatial_cfg, out_dir, prefix + "spatial", jobs, 0);

    ScenarioConfig ssa_cfg = config;
    ssa_cfg.model = Model::kSsa;
    RunResult r2 = run_model(ssa_cfg, out_dir, prefix + "ssa", jobs, 0);

    ScenarioConfig mean_cfg = config;
    mean_cfg.model = Model::kMean;
    mean_cfg.replicates = 1;
    RunResult r3 = run_model(mean_cfg, out_dir, prefix + "mean", jobs, 0);

    all.files.insert(all.files.end(), r1.files.begin(), r1.files.end());
    all.files.insert(all.files.end(), r2.files.begin(), r2.files.end());
    all.files.insert(all.files.end(), r3.files.begin(), r3.files.end());
    return all;
}

}  // namespace massaction
