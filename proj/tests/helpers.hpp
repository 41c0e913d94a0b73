#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "massaction/automaton.hpp"
#include "massaction/io.hpp"

namespace testutil {

inline std::filesystem::path scenario_dir() { return MASSACTION_SCENARIO_DIR; }

inline massaction::ParticleAutomaton table1() {
    return massaction::parse_automaton(
        massaction::read_text_file(scenario_dir() / "table1.aut"));
}

// Identity dynamics: nothing ever changes state.
inline massaction::ParticleAutomaton identity_automaton(std::size_t n) {
    std::vector<std::string> species;
    for (std::size_t i = 0; i < n; ++i) species.push_back("s" + std::to_string(i));
    std::vector<std::vector<double>> sol(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<std::vector<double>>> bin(n, sol);
    for (std::size_t i = 0; i < n; ++i) {
        sol[i][i] = 1.0;
        for (std::size_t j = 0; j < n; ++j) bin[i][j][i] = 1.0;
    }
    return massaction::ParticleAutomaton::validate(species, sol, bin);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
        if (d > worst) worst = d;
    }
    return worst;
}

}  // namespace testutil
