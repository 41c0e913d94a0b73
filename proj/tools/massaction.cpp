#include <cstdint>
#include <exception>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "massaction/errors.hpp"
#include "massaction/io.hpp"
#include "massaction/meanfield.hpp"
#include "massaction/runner.hpp"
#include "massaction/scenario.hpp"
#include "massaction/spatial.hpp"

namespace {

struct DeriveArgs {
    std::string automaton_file;
    double alpha = 0.0;
    double c_bin = massaction::kDefaultBinaryWeight;
    int precision = 2;
};

struct RunArgs {
    std::string scenario_file;
    std::string out_dir;
    std::string model;
    std::string alpha;
    double c_bin = 0.0;
    bool c_bin_set = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t replicates = 0;
    bool replicates_set = false;
    std::size_t jobs = 1;
    std::size_t frames = 0;
};

struct AlphaArgs {
    double radius = 0.0;
    double width = 0.0;
    double height = 0.0;
    std::uint64_t population = 0;
};

struct ExperimentArgs {
    std::string variant;
    std::string out_dir;
    std::uint64_t seed = 1;
    std::uint64_t replicates = 20;
    std::size_t jobs = 1;
};

int do_derive(const DeriveArgs& args) {
    const auto automaton = massaction::parse_automaton(massaction::read_text_file(args.automaton_file));
    const auto system = massaction::derive_polynomial(automaton, args.alpha, args.c_bin);
    fmt::print("{}", massaction::format_polynomial(system, automaton.species(), args.precision));
    return 0;
}

int do_run(const RunArgs& args) {
    massaction::ScenarioConfig config = massaction::load_scenario(args.scenario_file);
    if (!args.model.empty()) {
        const auto model = massaction::model_from_string(args.model);
        if (!model) {
            throw massaction::InputError("unknown model '" + args.model +
                                         "', expected mean, ssa or spatial");
        }
        config.model = *model;
    }
    if (!args.alpha.empty()) {
        if (args.alpha == "geometry") {
            config.alpha = std::nullopt;
        } else {
            const auto v = massaction::parse_double(args.alpha);
            if (!v) {
                throw massaction::InputError("invalid --alpha value '" + args.alpha + "'");
            }
            config.alpha = *v;
        }
    }
    if (args.c_bin_set) {
        config.c_bin = args.c_bin;
    }
    if (args.seed_set) {
        config.seed = args.seed;
    }
    if (args.replicates_set) {
        config.replicates = args.replicates;
    }
    massaction::validate_scenario(config);

    const auto result = massaction::run_scenario(config, args.out_dir, args.jobs, args.frames);
    for (const auto& file : result.files) {
        fmt::print("{}\n", file.string());
    }
    return 0;
}

int do_alpha(const AlphaArgs& args) {
    const double alpha = massaction::alpha_from_geometry(
        args.radius, args.width * args.height, args.population);
    fmt::print("{:.6g}\n", alpha);
    return 0;
}

int do_experiment(const ExperimentArgs& args) {
    if (args.variant.size() != 1) {
        throw massaction::InputError("unknown experiment variant; expected a, b or c");
    }
    const auto result = massaction::run_experiment(args.variant[0], args.out_dir, args.seed,
                                                   args.replicates, args.jobs);
    for (const auto& file : result.files) {
        fmt::print("{}\n", file.string());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mass-action dynamics of interacting probabilistic automata"};
    app.require_subcommand(1);

    DeriveArgs derive_args;
    auto* derive = app.add_subcommand(
        "derive", "Print the mean-field polynomial system of an automaton");
    derive->add_option("automaton", derive_args.automaton_file, "Automaton file")->required();
    derive->add_option("--alpha", derive_args.alpha, "Encounter probability")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    derive->add_option("--c-bin", derive_args.c_bin, "Weight of the pairwise drift term");
    derive->add_option("--precision", derive_args.precision, "Coefficient decimals")
        ->check(CLI::Range(0, 17));

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Simulate a scenario file");
    run->add_option("scenario", run_args.scenario_file, "Scenario file")->required();
    run->add_option("--out", run_args.out_dir, "Output directory")->required();
    run->add_option("--model", run_args.model, "Override the model (mean, ssa, spatial)");
    run->add_option("--alpha", run_args.alpha, "Override alpha (number or 'geometry')");
    run->add_option("--c-bin", run_args.c_bin, "Override the pairwise drift weight")
        ->each([&](const std::string&) { run_args.c_bin_set = true; });
    run->add_option("--seed", run_args.seed, "Override the seed")
        ->each([&](const std::string&) { run_args.seed_set = true; });
    run->add_option("--replicates", run_args.replicates, "Override the replicate count")
        ->each([&](const std::string&) { run_args.replicates_set = true; });
    run->add_option("--jobs", run_args.jobs, "Worker threads for replicate ensembles")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1024}));
    run->add_option("--frames", run_args.frames,
                    "Spatial frame dump cadence in steps (0 = off, needs replicates = 1)");

    AlphaArgs alpha_args;
    auto* alpha = app.add_subcommand(
        "alpha", "Encounter probability bridged from arena geometry");
    alpha->add_option("r", alpha_args.radius, "Reaction radius")->required();
    alpha->add_option("width", alpha_args.width, "Arena width")->required();
    alpha->add_option("height", alpha_args.height, "Arena height")->required();
    alpha->add_option("m", alpha_args.population, "Population size")->required();

    ExperimentArgs experiment_args;
    auto* experiment = app.add_subcommand(
        "experiment", "Run a bundled five-species variant in all three models");
    experiment->add_option("variant", experiment_args.variant, "Variant: a, b or c")->required();
    experiment->add_option("--out", experiment_args.out_dir, "Output directory")->required();
    experiment->add_option("--seed", experiment_args.seed, "Base seed");
    experiment->add_option("--replicates", experiment_args.replicates, "Replicates per model");
    experiment->add_option("--jobs", experiment_args.jobs, "Worker threads")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1024}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (derive->parsed()) {
            return do_derive(derive_args);
        }
        if (run->parsed()) {
            return do_run(run_args);
        }
        if (alpha->parsed()) {
            return do_alpha(alpha_args);
        }
        if (experiment->parsed()) {
            return do_experiment(experiment_args);
        }
    } catch (const massaction::InputError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    } catch (const massaction::SimulationError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 3;
    }
    return 0;
}
