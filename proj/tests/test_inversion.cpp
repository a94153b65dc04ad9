#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qlaplace/inversion.hpp"

using namespace qlaplace;
using Catch::Approx;

TEST_CASE("talbot recovers the analytic catalog") {
    InversionConfig cfg;
    auto step = inverse_laplace([](complex p) { return 1.0 / p; }, 1.0, cfg);
    REQUIRE(std::abs(step.value - 1.0) < 1e-8);
    REQUIRE(step.est_error >= std::abs(step.value - 1.0));

    auto decay = inverse_laplace([](complex p) { return 1.0 / (p + 1.0); }, 1.0, cfg);
    REQUIRE(std::abs(decay.value - std::exp(-1.0)) < 1e-8);
    REQUIRE(decay.est_error >= std::abs(decay.value - std::exp(-1.0)));

    for (double t : {0.5, 1.0, 2.0}) {
        auto ramp = inverse_laplace([](complex p) { return 1.0 / (p * p); }, t, cfg);
        REQUIRE(std::abs(ramp.value - t) < 1e-8);
        REQUIRE(ramp.est_error >= std::abs(ramp.value - t));
    }
}

TEST_CASE("inverse is linear") {
    InversionConfig cfg;
    for (double t : {0.3, 1.0, 3.0}) {
        auto mix = inverse_laplace(
            [](complex p) { return 2.0 / p + 3.0 / (p + 1.0); }, t, cfg);
        REQUIRE(std::abs(mix.value - (2.0 + 3.0 * std::exp(-t))) < 1e-8);
    }
}

TEST_CASE("vertical contour method on the catalog") {
    InversionConfig cfg;
    cfg.method = InversionConfig::Method::bromwich_trapezoid;
    auto decay = inverse_laplace([](complex p) { return 1.0 / (p + 1.0); }, 1.0, cfg);
    REQUIRE(std::abs(decay.value - std::exp(-1.0)) < 1e-6);
    REQUIRE(decay.est_error >= std::abs(decay.value - std::exp(-1.0)));
}

TEST_CASE("validation") {
    InversionConfig cfg;
    REQUIRE_THROWS_AS(inverse_laplace([](complex p) { return 1.0 / p; }, -1.0, cfg),
                      std::domain_error);
    cfg.node_count = 4;
    REQUIRE_THROWS_AS(inverse_laplace([](complex p) { return 1.0 / p; }, 1.0, cfg),
                      std::domain_error);
}

TEST_CASE("non-decaying images trip the node-doubling check") {
    InversionConfig cfg;
    REQUIRE_THROWS_AS(
        inverse_laplace([](complex p) { return std::sin(p) + p * p; }, 1.0, cfg),
        OscillationError);
}

TEST_CASE("round trip recovers the step") {
    std::vector<double> t_grid;
    for (int i = 0; i < 20; ++i) t_grid.push_back(0.1 + i * (4.9 / 19.0));
    auto rep = roundtrip_check(FunctionSpec::heaviside_step(), t_grid, 1e-3);
    REQUIRE(rep.sup_error <= 2e-3);
    REQUIRE(rep.samples.size() == t_grid.size());
}

TEST_CASE("round trip recovers the q-exponential density") {
    std::vector<double> t_grid;
    for (int i = 0; i < 20; ++i) t_grid.push_back(0.1 + i * (4.9 / 19.0));
    auto rep = roundtrip_check(FunctionSpec::q_exp_density(1.0), t_grid, 1e-4);
    REQUIRE(rep.sup_error <= 1e-3);
}

TEST_CASE("round-trip error decreases with epsilon") {
    std::vector<double> t_grid = {0.5, 1.0, 2.0, 4.0};
    double prev = 1e300;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        auto rep = roundtrip_check(FunctionSpec::heaviside_step(), t_grid, eps);
        REQUIRE(rep.sup_error < prev);
        prev = rep.sup_error;
    }
}

TEST_CASE("round-trip validation") {
    std::vector<double> ok = {1.0};
    REQUIRE_THROWS_AS(roundtrip_check(FunctionSpec::heaviside_step(), {0.0}, 1e-3),
                      std::domain_error);
    REQUIRE_THROWS_AS(roundtrip_check(FunctionSpec::heaviside_step(), ok, 0.5),
                      std::domain_error);
    REQUIRE_THROWS_AS(roundtrip_check(FunctionSpec::heaviside_step(true), ok, 1e-3),
                      std::domain_error);
}
