#include "massaction/meanfield.hpp"

#include <cassert>
#include <cmath>

#include "massaction/errors.hpp"
#include "massaction/io.hpp"

namespace massaction {
namespace {

constexpr double kClampBand = 1e-12;

}  // namespace

std::vector<double> delta1(const ParticleAutomaton& a, std::span<const double> x) {
    const std::size_t n = a.species_count();
    assert(x.size() == n);
    std::vector<double> d(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += x[i] * a.solitary(i, k) - x[k] * a.solitary(k, i);
        }
        d[k] = acc;
    }
    return d;
}

std::vector<double> delta2(const ParticleAutomaton& a, std::span<const double> x) {
    const std::size_t n = a.species_count();
    assert(x.size() == n);
    std::vector<double> d(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                acc += x[i] * x[j] * a.binary(i, j, k) - x[k] * x[i] * a.binary(k, i, j);
            }
        }
        d[k] = acc;
    }
    return d;
}

Concentration step(const ParticleAutomaton& a, std::span<const double> x, double alpha,
                   double c_bin) {
    const auto d1 = delta1(a, x);
    const auto d2 = delta2(a, x);
    Concentration next(x.begin(), x.end());
    for (std::size_t k = 0; k < next.size(); ++k) {
        next[k] += (1.0 - alpha) * d1[k] + c_bin * alpha * d2[k];
        if (next[k] < 0.0) {
            if (next[k] < -kClampBand) {
                throw NegativeConcentrationError(k, next[k]);
            }
            next[k] = 0.0;
        }
    }
    return next;
}

std::size_t PolynomialSystem::pair_index(std::size_t i, std::size_t j, std::size_t n) {
    if (i > j) {
        std::swap(i, j);
    }
    // Slot of {i, j} in row-major upper-triangle order, diagonal included.
    return i * n - i * (i + 1) / 2 + j;
}

Concentration PolynomialSystem::evaluate(std::span<const double> x) const {
    assert(x.size() == n);
    Concentration next(x.begin(), x.end());
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += linear[k][i] * x[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                acc += bilinear[k][pair_index(i, j)] * x[i] * x[j];
            }
        }
        next[k] += acc;
    }
    return next;
}

PolynomialSystem derive_polynomial(const ParticleAutomaton& a, double alpha, double c_bin) {
    const std::size_t n = a.species_count();
    PolynomialSystem sys;
    sys.n = n;
    sys.linear.assign(n, std::vector<double>(n, 0.0));
    sys.bilinear.assign(n, std::vector<double>(n * (n + 1) / 2, 0.0));

    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const double kron = (i == k) ? 1.0 : 0.0;
            sys.linear[k][i] = (1.0 - alpha) * (a.solitary(i, k) - kron);
        }
        // Ordered coefficient on x_i x_j, then folded onto canonical i <= j.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double kron = (i == k) ? 1.0 : 0.0;
                const double coeff = c_bin * alpha * (a.binary(i, j, k) - kron);
                sys.bilinear[k][sys.pair_index(i, j)] += coeff;
            }
        }
    }
    return sys;
}

namespace {

double round_to(double v, int precision) {
    const double scale = std::pow(10.0, precision);
    return std::round(v * scale) / scale;
}

void append_term(std::string& line, double coeff, const std::string& monomial, int precision) {
    line += (coeff < 0.0) ? " - " : " + ";
    line += format_fixed(std::fabs(coeff), precision);
    line += '*';
    line += monomial;
}

}  // namespace

std::string format_polynomial(const PolynomialSystem& sys, const std::vector<std::string>& species,
                              int precision) {
    assert(species.size() == sys.n);
    std::string out;
    for (std::size_t k = 0; k < sys.n; ++k) {
        std::string line = species[k] + "' = " + species[k];
        for (std::size_t i = 0; i < sys.n; ++i) {
            const double c = round_to(sys.linear[k][i], precision);
            if (c != 0.0) {
                append_term(line, c, species[i], precision);
            }
        }
        for (std::size_t i = 0; i < sys.n; ++i) {
            for (std::size_t j = i; j < sys.n; ++j) {
                const double c = round_to(sys.bilinear[k][sys.pair_index(i, j)], precision);
                if (c != 0.0) {
                    append_term(line, c, species[i] + "*" + species[j], precision);
                }
            }
        }
        out += line;
        out += '\n';
    }
    return out;
}

std::vector<Concentration> simulate_mean(const ParticleAutomaton& a, Concentration x0, double alpha,
                                         std::size_t horizon, double c_bin) {
    std::vector<Concentration> trajectory;
    trajectory.reserve(horizon + 1);
    trajectory.push_back(std::move(x0));
    for (std::size_t t = 0; t < horizon; ++t) {
        try {
            trajectory.push_back(step(a, trajectory.back(), alpha, c_bin));
        } catch (NegativeConcentrationError& e) {
            e.set_step(t + 1);
            throw;
        }
    }
    return trajectory;
}

FixpointResult fixpoint(const ParticleAutomaton& a, Concentration x0, double alpha, double tol,
                        std::size_t max_iter, double c_bin) {
    Concentration x = std::move(x0);
    for (std::size_t it = 0; it <= max_iter; ++it) {
        const Concentration next = step(a, x, alpha, c_bin);
        double residual = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            residual = std::max(residual, std::fabs(next[k] - x[k]));
        }
        if (residual < tol) {
            return {std::move(x), it};
        }
        x = next;
    }
    throw NoConvergenceError(max_iter);
}

}  // namespace massaction
