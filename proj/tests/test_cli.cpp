#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "massaction/io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Runs the installed binary with stdout captured and stderr discarded.
CliResult cli(const std::string& args) {
    static int counter = 0;
    const fs::path capture =
        fs::temp_directory_path() / ("massaction_cli_out_" + std::to_string(counter++));
    const std::string command = std::string(MASSACTION_CLI_PATH) + " " + args + " > " +
                                capture.string() + " 2> /dev/null";
    const int raw = std::system(command.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    if (fs::exists(capture)) {
        r.out = massaction::read_text_file(capture);
        fs::remove(capture);
    }
    return r;
}

std::string scenario(const char* name) {
    return (testutil::scenario_dir() / name).string();
}

}  // namespace

TEST_CASE("derive prints the tabulated system at default precision") {
    const auto r = cli("derive " + scenario("table1.aut") + " --alpha 0.1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("q1' = q1 - 0.09*q1 + 0.09*q2 - 0.06*q1*q2 + 0.08*q1*q3 + 0.08*q2*q3\n") !=
          std::string::npos);
    CHECK(r.out.find("q2' = q2 + 0.09*q1 - 0.18*q2 - 0.04*q1*q2 + 0.06*q2*q3\n") !=
          std::string::npos);
    CHECK(r.out.find("q3' = q3 + 0.09*q2 + 0.10*q1*q2 - 0.08*q1*q3 - 0.14*q2*q3\n") !=
          std::string::npos);

    const auto dense = cli("derive " + scenario("table1.aut") + " --alpha 0.9");
    CHECK(dense.exit_code == 0);
    CHECK(dense.out.find("q3' = q3 + 0.01*q2 + 0.90*q1*q2 - 0.72*q1*q3 - 1.26*q2*q3\n") !=
          std::string::npos);
}

TEST_CASE("derive exits 2 on input problems") {
    CHECK(cli("derive /nonexistent.aut --alpha 0.1").exit_code == 2);
    CHECK(cli("derive " + scenario("table1.aut") + " --alpha 1.5").exit_code == 2);
}

TEST_CASE("alpha subcommand evaluates the bridge") {
    const auto r = cli("alpha 0.3 20 20 1100");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0.540268\n");
    CHECK(cli("alpha 0.3 20 20 1").out == "0\n");
    CHECK(cli("alpha 0 20 20 10").out == "0\n");
    CHECK(cli("alpha 30 20 20 10").exit_code == 2);
}

TEST_CASE("run produces files and repeats byte-identically across jobs") {
    const fs::path dir1 = fs::temp_directory_path() / "massaction_cli_run1";
    const fs::path dir2 = fs::temp_directory_path() / "massaction_cli_run2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    const std::string base = "run " + scenario("table1_sparse.scn") +
                             " --model ssa --replicates 6 --seed 5 ";
    CHECK(cli(base + "--out " + dir1.string() + " --jobs 1").exit_code == 0);
    CHECK(cli(base + "--out " + dir2.string() + " --jobs 4").exit_code == 0);
    CHECK(massaction::read_text_file(dir1 / "ssa.csv") ==
          massaction::read_text_file(dir2 / "ssa.csv"));
    CHECK(massaction::read_text_file(dir1 / "ssa.meta.json") ==
          massaction::read_text_file(dir2 / "ssa.meta.json"));
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("run exits 2 on bad inputs and 3 on runtime failure") {
    CHECK(cli("run /nonexistent.scn --out /tmp/massaction_void").exit_code == 2);

    // A system that leaves the simplex on the first step.
    const fs::path bad = fs::temp_directory_path() / "massaction_cli_bad.scn";
    massaction::write_text_file(bad,
                                "[automaton]\n"
                                "species: a b\n"
                                "solitary:\n"
                                "1 0\n"
                                "0 1\n"
                                "binary a:\n"
                                "0 1\n"
                                "0 1\n"
                                "binary b:\n"
                                "0 1\n"
                                "0 1\n"
                                "[model]\n"
                                "type = mean\n"
                                "[run]\n"
                                "T = 10\n"
                                "alpha = 0.9\n"
                                "[population]\n"
                                "a = 100\n");
    const fs::path out = fs::temp_directory_path() / "massaction_cli_bad_out";
    fs::remove_all(out);
    CHECK(cli("run " + bad.string() + " --out " + out.string()).exit_code == 3);
    fs::remove(bad);
    fs::remove_all(out);
}

TEST_CASE("help and unknown flags map to the documented codes") {
    CHECK(cli("--help").exit_code == 0);
    CHECK(cli("derive --help").exit_code == 0);
    CHECK(cli("frobnicate").exit_code == 2);
    CHECK(cli("run --out /tmp/nowhere").exit_code == 2);
}
