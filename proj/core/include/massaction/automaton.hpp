#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace massaction {

inline constexpr double kRowSumTolerance = 1e-9;

// Finite-state particle type: n named species, one solitary transition row
// per state and one binary transition row per (state, encountered state)
// pair. Every row is checked stochastic within kRowSumTolerance and then
// renormalized by its own sum, so downstream math sees rows that sum to 1
// up to a final rounding. Instances are immutable after construction.
class ParticleAutomaton {
public:
    // Zero species; a placeholder until a validated instance is assigned.
    ParticleAutomaton() = default;

    static ParticleAutomaton validate(std::vector<std::string> species,
                                      std::vector<std::vector<double>> solitary,
                                      std::vector<std::vector<std::vector<double>>> binary);

    std::size_t species_count() const { return species_.size(); }
    const std::vector<std::string>& species() const { return species_; }
    std::optional<std::size_t> species_index(std::string_view name) const;

    // delta(from, bottom, to)
    double solitary(std::size_t from, std::size_t to) const {
        return solitary_[from * species_.size() + to];
    }
    // delta(from, input, to)
    double binary(std::size_t from, std::size_t input, std::size_t to) const {
        const std::size_t n = species_.size();
        return binary_[(from * n + input) * n + to];
    }

    std::span<const double> solitary_row(std::size_t from) const {
        return {solitary_.data() + from * species_.size(), species_.size()};
    }
    std::span<const double> binary_row(std::size_t from, std::size_t input) const {
        const std::size_t n = species_.size();
        return {binary_.data() + (from * n + input) * n, n};
    }

    // Inverse-CDF draw from the row selected by (from, input): u in [0, 1)
    // lands in the cumulative interval of the outcome it picks. The interval
    // of the last nonzero entry absorbs the rounding slack at the top, so
    // every u maps to an outcome of positive probability.
    std::size_t sample(std::size_t from, std::optional<std::size_t> input, double u) const;
    std::size_t sample_solitary(std::size_t from, double u) const;
    std::size_t sample_binary(std::size_t from, std::size_t input, double u) const;

    bool operator==(const ParticleAutomaton&) const = default;

private:
    std::vector<std::string> species_;
    std::vector<double> solitary_;  // n*n, [from][to]
    std::vector<double> binary_;    // n*n*n, [from][input][to]
};

// Outcome of testing whether a joint two-particle outcome table factors as
// the outer product of its marginals, i.e. whether a pairwise rule can be
// realized by two independent per-particle draws.
struct CausalProductCheck {
    bool is_product = false;
    std::string diagnostic;  // names the worst entry when the check fails
};

CausalProductCheck check_causal_product(const std::vector<std::vector<double>>& joint,
                                        double tolerance = kRowSumTolerance);

// Text format, round-trips bit-exactly through serialize_automaton:
//
//   species: q1 q2 q3
//   solitary:
//   0.9 0.1 0
//   ...          (n rows of n entries)
//   binary q1:
//   ...          (n rows: delta(row state, q1, .))
//
// '#' starts a comment; blank lines are ignored.
ParticleAutomaton parse_automaton(std::string_view text);
std::string serialize_automaton(const ParticleAutomaton& a);

}  // namespace massaction
