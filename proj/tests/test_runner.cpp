#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "massaction/errors.hpp"
#include "massaction/io.hpp"
#include "massaction/runner.hpp"
#include "massaction/scenario.hpp"

using namespace massaction;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag) : path(fs::temp_directory_path() / tag) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("mean run lands on the tabulated attractor and reruns identically") {
    const auto c = load_scenario(testutil::scenario_dir() / "table1_sparse.scn");
    TempDir dir("massaction_runner_mean");
    const auto result = run_scenario(c, dir.path);
    REQUIRE(result.files.size() == 2);
    CHECK(fs::exists(dir.path / "mean.csv"));
    CHECK(fs::exists(dir.path / "mean.meta.json"));

    const std::string csv = read_text_file(dir.path / "mean.csv");
    CHECK(csv.rfind("t,q1,q2,q3\n", 0) == 0);
    const auto last_line_start = csv.rfind("\n500,");
    REQUIRE(last_line_start != std::string::npos);
    const std::string last = csv.substr(last_line_start + 1);
    // Final row within 1e-3 per component of (0.366, 0.195, 0.437).
    std::vector<double> vals;
    std::size_t from = last.find(',') + 1;
    while (from < last.size()) {
        std::size_t to = last.find_first_of(",\n", from);
        vals.push_back(parse_double(last.substr(from, to - from)).value());
        from = to + 1;
        if (last[to] == '\n') break;
    }
    REQUIRE(vals.size() == 3);
    CHECK(std::fabs(vals[0] - 0.366) < 1e-3);
    CHECK(std::fabs(vals[1] - 0.195) < 1e-3);
    CHECK(std::fabs(vals[2] - 0.437) < 1e-3);

    const std::string meta = read_text_file(dir.path / "mean.meta.json");
    CHECK(meta.find("\"massaction/run-metadata/1\"") != std::string::npos);
    CHECK(meta.find("\"fnv1a64:") != std::string::npos);
    CHECK(meta.find("\"mean\"") != std::string::npos);

    run_scenario(c, dir.path);
    CHECK(read_text_file(dir.path / "mean.csv") == csv);
    CHECK(read_text_file(dir.path / "mean.meta.json") == meta);
}

TEST_CASE("ssa ensemble emits mean and std columns") {
    auto c = load_scenario(testutil::scenario_dir() / "table1_sparse.scn");
    c.model = Model::kSsa;
    c.replicates = 5;
    c.horizon = 20;
    validate_scenario(c);
    TempDir dir("massaction_runner_ssa");
    run_scenario(c, dir.path, 2);
    const std::string csv = read_text_file(dir.path / "ssa.csv");
    CHECK(csv.rfind("t,q1_mean,q2_mean,q3_mean,q1_std,q2_std,q3_std\n", 0) == 0);

    // Job count must not leak into the bytes.
    TempDir serial("massaction_runner_ssa_serial");
    run_scenario(c, serial.path, 1);
    CHECK(read_text_file(serial.path / "ssa.csv") == csv);
}

TEST_CASE("spatial single run writes frames at the requested cadence") {
    auto c = five_species_scenario('c');
    c.horizon = 20;
    c.replicates = 1;
    validate_scenario(c);
    TempDir dir("massaction_runner_frames");
    run_scenario(c, dir.path, 1, 10);
    CHECK(fs::exists(dir.path / "spatial.csv"));
    CHECK(fs::exists(dir.path / "frames" / "frame_0.csv"));
    CHECK(fs::exists(dir.path / "frames" / "frame_10.csv"));
    CHECK(fs::exists(dir.path / "frames" / "frame_20.csv"));
    CHECK_FALSE(fs::exists(dir.path / "frames" / "frame_5.csv"));
    const std::string frame = read_text_file(dir.path / "frames" / "frame_0.csv");
    CHECK(frame.rfind("id,species,x,y\n", 0) == 0);

    // Frames only make sense for a single spatial replicate.
    c.replicates = 3;
    CHECK_THROWS_AS((void)run_scenario(c, dir.path, 1, 10), InputError);
}

TEST_CASE("metadata records the effective alpha and stream count") {
    auto c = five_species_scenario('a');
    const auto meta = make_metadata(c);
    CHECK(meta.model == "spatial");
    CHECK(meta.alpha == doctest::Approx(0.5402682031385666).epsilon(1e-15));
    CHECK(meta.population == 1100);
    CHECK(meta.replicates == 20);
    CHECK(meta.scenario_hash.rfind("fnv1a64:", 0) == 0);
    CHECK(meta.scenario_hash.size() == 8 + 16);
    CHECK(metadata_json(meta) == metadata_json(make_metadata(c)));
}

TEST_CASE("experiment bundles the three models side by side") {
    TempDir dir("massaction_runner_exp");
    const auto result = run_experiment('c', dir.path, 7, 2, 2);
    for (const char* base : {"five_c_spatial", "five_c_ssa", "five_c_mean"}) {
        CHECK(fs::exists(dir.path / (std::string(base) + ".csv")));
        CHECK(fs::exists(dir.path / (std::string(base) + ".meta.json")));
    }
    CHECK(result.files.size() == 6);
}
