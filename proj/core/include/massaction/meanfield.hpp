#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "massaction/automaton.hpp"

namespace massaction {

using Concentration = std::vector<double>;

// Weight on the pairwise drift term. The default of 2 counts each unordered
// encounter once per participant, which is the convention the reference
// polynomial systems in the test suite are written in.
inline constexpr double kDefaultBinaryWeight = 2.0;

// Solitary drift: delta1[k] = sum_i (x_i d(q_i, _, q_k) - x_k d(q_k, _, q_i)).
// The paired form makes sum_k delta1[k] == 0 an algebraic identity, so mass
// is conserved exactly instead of drifting by a factor per step.
std::vector<double> delta1(const ParticleAutomaton& a, std::span<const double> x);

// Pairwise drift: delta2[k] = sum_ij (x_i x_j d(q_i, q_j, q_k)
//                                     - x_k x_i d(q_k, q_i, q_j)), same pairing.
std::vector<double> delta2(const ParticleAutomaton& a, std::span<const double> x);

// x' = x + (1 - alpha) delta1 + c_bin alpha delta2. Components landing in
// [-1e-12, 0) are clamped to 0; anything lower throws
// NegativeConcentrationError.
Concentration step(const ParticleAutomaton& a, std::span<const double> x, double alpha,
                   double c_bin = kDefaultBinaryWeight);

// One update in explicit polynomial form: x'_k = x_k + sum_i linear[k][i] x_i
// + sum_{i<=j} bilinear[k][pair(i,j)] x_i x_j. Coefficients of the unordered
// pair {i, j} are merged into the canonical i <= j slot.
struct PolynomialSystem {
    std::size_t n = 0;
    std::vector<std::vector<double>> linear;
    std::vector<std::vector<double>> bilinear;

    static std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n);
    std::size_t pair_index(std::size_t i, std::size_t j) const { return pair_index(i, j, n); }

    Concentration evaluate(std::span<const double> x) const;

    bool operator==(const PolynomialSystem&) const = default;
};

PolynomialSystem derive_polynomial(const ParticleAutomaton& a, double alpha,
                                   double c_bin = kDefaultBinaryWeight);

// One line per species, coefficients rounded to `precision` decimals and
// zero terms dropped: "q1' = q1 - 0.09*q1 + 0.08*q1*q3".
std::string format_polynomial(const PolynomialSystem& sys, const std::vector<std::string>& species,
                              int precision = 2);

// Trajectory x(0), ..., x(horizon); throws NegativeConcentrationError with
// the offending step attached if the update exits the simplex.
std::vector<Concentration> simulate_mean(const ParticleAutomaton& a, Concentration x0, double alpha,
                                         std::size_t horizon, double c_bin = kDefaultBinaryWeight);

struct FixpointResult {
    Concentration x;
    std::size_t iterations = 0;
};

// Iterates step() until the residual ||step(x) - x||_inf drops below tol;
// returns the first such iterate. Throws NoConvergenceError past max_iter.
FixpointResult fixpoint(const ParticleAutomaton& a, Concentration x0, double alpha, double tol,
                        std::size_t max_iter, double c_bin = kDefaultBinaryWeight);

}  // namespace massaction
