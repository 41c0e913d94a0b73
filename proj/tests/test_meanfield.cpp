#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "massaction/errors.hpp"
#include "massaction/meanfield.hpp"
#include "massaction/rng.hpp"

using namespace massaction;

namespace {

// Both particles of an encounter always leave state a; solitary is inert.
ParticleAutomaton always_leaving() {
    std::vector<std::vector<double>> sol = {{1.0, 0.0}, {0.0, 1.0}};
    std::vector<std::vector<std::vector<double>>> bin = {
        {{0.0, 1.0}, {0.0, 1.0}},
        {{0.0, 1.0}, {0.0, 1.0}},
    };
    return ParticleAutomaton::validate({"a", "b"}, sol, bin);
}

std::vector<double> random_simplex_point(RngStream& rng, std::size_t n) {
    std::vector<double> x(n);
    double sum = 0.0;
    for (auto& v : x) {
        v = -std::log(1.0 - rng.u01());
        sum += v;
    }
    for (auto& v : x) v /= sum;
    return x;
}

}  // namespace

TEST_CASE("drift terms sum to zero exactly by pairing") {
    const auto a = testutil::table1();
    RngStream rng(31, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_simplex_point(rng, 3);
        const auto d1 = delta1(a, x);
        const auto d2 = delta2(a, x);
        CHECK(std::fabs(d1[0] + d1[1] + d1[2]) < 1e-15);
        CHECK(std::fabs(d2[0] + d2[1] + d2[2]) < 1e-15);
    }
}

TEST_CASE("step keeps the simplex for c_bin at most 1") {
    const auto a = testutil::table1();
    RngStream rng(32, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto x = random_simplex_point(rng, 3);
        const double alpha = rng.u01();
        const auto y = step(a, x, alpha, 1.0);
        double sum = 0.0;
        for (double v : y) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(std::fabs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("identity dynamics are a fixed point everywhere") {
    const auto a = testutil::identity_automaton(4);
    RngStream rng(33, 0);
    const auto x = random_simplex_point(rng, 4);
    const auto y = step(a, x, 0.7);
    for (std::size_t k = 0; k < 4; ++k) CHECK(y[k] == doctest::Approx(x[k]).epsilon(1e-15));
}

TEST_CASE("first update from the reference start is exact") {
    // Hand-evaluated in exact rational arithmetic for alpha=0.1, c_bin=2.
    const auto a = testutil::table1();
    const auto traj = simulate_mean(a, {0.4, 0.3, 0.3}, 0.1, 1);
    REQUIRE(traj.size() == 2);
    CHECK(traj[1][0] == doctest::Approx(0.4006).epsilon(1e-12));
    CHECK(traj[1][1] == doctest::Approx(0.2826).epsilon(1e-12));
    CHECK(traj[1][2] == doctest::Approx(0.3168).epsilon(1e-12));
}

TEST_CASE("derived polynomial agrees with step on random points") {
    const auto a = testutil::table1();
    for (double alpha : {0.1, 0.5, 0.9}) {
        const auto sys = derive_polynomial(a, alpha);
        RngStream rng(34, 0);
        for (int trial = 0; trial < 50; ++trial) {
            const auto x = random_simplex_point(rng, 3);
            const auto via_step = step(a, x, alpha);
            const auto via_poly = sys.evaluate(x);
            CHECK(testutil::max_abs_diff(via_step, via_poly) < 1e-12);
        }
    }
}

TEST_CASE("tabulated coefficients come out of the derivation") {
    const auto a = testutil::table1();
    const auto sys = derive_polynomial(a, 0.1);
    const auto p = [&](std::size_t i, std::size_t j) { return sys.pair_index(i, j); };
    CHECK(sys.linear[0][0] == doctest::Approx(-0.09).epsilon(1e-9));
    CHECK(sys.linear[0][1] == doctest::Approx(0.09).epsilon(1e-9));
    CHECK(sys.linear[0][2] == doctest::Approx(0.0).scale(1.0));
    CHECK(sys.bilinear[0][p(0, 1)] == doctest::Approx(-0.06).epsilon(1e-9));
    CHECK(sys.bilinear[0][p(0, 2)] == doctest::Approx(0.08).epsilon(1e-9));
    CHECK(sys.bilinear[0][p(1, 2)] == doctest::Approx(0.08).epsilon(1e-9));
    CHECK(sys.bilinear[2][p(0, 1)] == doctest::Approx(0.10).epsilon(1e-9));
    CHECK(sys.bilinear[2][p(1, 2)] == doctest::Approx(-0.14).epsilon(1e-9));
}

TEST_CASE("polynomial printing drops zero terms and pins precision") {
    const auto id = testutil::identity_automaton(2);
    const auto sys = derive_polynomial(id, 0.5);
    CHECK(format_polynomial(sys, id.species()) == "s0' = s0\ns1' = s1\n");

    const auto a = testutil::table1();
    const auto printed = format_polynomial(derive_polynomial(a, 0.1), a.species());
    CHECK(printed.find("q1' = q1 - 0.09*q1 + 0.09*q2 - 0.06*q1*q2 + 0.08*q1*q3 + 0.08*q2*q3") !=
          std::string::npos);
}

TEST_CASE("fixpoint lands on the tabulated attractors") {
    const auto a = testutil::table1();
    const auto sparse = fixpoint(a, {0.4, 0.3, 0.3}, 0.1, 1e-10, 10000);
    CHECK(sparse.x[0] == doctest::Approx(0.366779863).epsilon(1e-6));
    CHECK(sparse.x[1] == doctest::Approx(0.195979702).epsilon(1e-6));
    CHECK(sparse.x[2] == doctest::Approx(0.437240436).epsilon(1e-6));
    CHECK(sparse.iterations <= 10000);

    const auto dense = fixpoint(a, {0.4, 0.3, 0.3}, 0.9, 1e-10, 10000);
    CHECK(dense.x[0] == doctest::Approx(0.939179835).epsilon(1e-6));
    CHECK(dense.x[1] == doctest::Approx(0.027609071).epsilon(1e-6));
    CHECK(dense.x[2] == doctest::Approx(0.033211094).epsilon(1e-6));
}

TEST_CASE("an oscillator never converges") {
    std::vector<std::vector<double>> sol = {{0.0, 1.0}, {1.0, 0.0}};
    std::vector<std::vector<std::vector<double>>> bin = {
        {{1.0, 0.0}, {1.0, 0.0}},
        {{0.0, 1.0}, {0.0, 1.0}},
    };
    const auto swap2 = ParticleAutomaton::validate({"a", "b"}, sol, bin);
    CHECK_THROWS_AS((void)fixpoint(swap2, {1.0, 0.0}, 0.0, 1e-9, 50), NoConvergenceError);
}

TEST_CASE("leaving the simplex raises with the step attached") {
    const auto a = always_leaving();
    try {
        (void)simulate_mean(a, {1.0, 0.0}, 0.75, 10, 2.0);
        FAIL("expected NegativeConcentrationError");
    } catch (const NegativeConcentrationError& e) {
        CHECK(e.step().value() == 1);
    }
    // At c_bin * alpha = 1 the update stops exactly at the boundary.
    const auto y = step(a, std::vector<double>{1.0, 0.0}, 0.5, 2.0);
    CHECK(y[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(y[1] == doctest::Approx(1.0));
}

TEST_CASE("trajectory length is horizon plus one") {
    const auto a = testutil::table1();
    const auto traj = simulate_mean(a, {0.4, 0.3, 0.3}, 0.1, 17);
    CHECK(traj.size() == 18);
}
