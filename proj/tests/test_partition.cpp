#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qlaplace/closedform.hpp"
#include "qlaplace/partition.hpp"

using namespace qlaplace;
using Catch::Approx;

namespace {
const QuadratureConfig cfg;
}

TEST_CASE("constant density reproduces the step transform") {
    auto dos = DensityOfStates::make(FunctionSpec::constant(1.0));
    for (double qv : {1.2, 1.5, 1.8}) {
        QIndex q(qv);
        for (double B : {1.0, 2.0, 5.0}) {
            complex z = q_partition(dos, {B, 0}, q, cfg).value;
            complex closed = step_transform({B, 0}, q).value;
            REQUIRE(std::abs(z - closed) <= 1e-8 * std::abs(closed));
        }
    }
    // the flat spectrum at q = 1.5, B = 2 is exactly 1
    REQUIRE(q_partition(dos, {2, 0}, QIndex(1.5), cfg).value.real() ==
            Approx(1.0).epsilon(1e-8));
}

TEST_CASE("constant density classical limit") {
    auto dos = DensityOfStates::make(FunctionSpec::constant(1.0));
    auto z = q_partition(dos, {2, 0}, QIndex(1.0 + 1e-5), cfg);
    REQUIRE(std::abs(z.value.real() - 0.5) < 1e-4);
    REQUIRE(q_partition(dos, {-2, 0}, QIndex(1.5), cfg).value == complex(0.0, 0.0));
}

TEST_CASE("q-exponential density keeps the (2-q) factor") {
    // the integrand reduces to [1+(q-1)(alpha+B)u]^{1/(1-q)}, so the value
    // is 1/((2-q)(B+alpha)); the bare 1/(B+alpha) misses the (2-q) factor
    auto dos = DensityOfStates::make(FunctionSpec::q_exp_density(1.0));
    QIndex q(1.5);
    complex z = q_partition_pr(dos, {2, 0}, q, cfg).value;
    double oracle = 1.0 / ((2.0 - 1.5) * (2.0 + 1.0));
    REQUIRE(z.real() == Approx(oracle).epsilon(1e-8));
    REQUIRE(std::abs(z.real() - 1.0 / 3.0) > 0.3);  // the (2-q)-less guess fails

    // generic points against the same elementary reduction
    for (double qv : {1.2, 1.7}) {
        for (double B : {0.5, 3.0}) {
            complex zz = q_partition_pr(dos, {B, 0}, QIndex(qv), cfg).value;
            REQUIRE(zz.real() == Approx(1.0 / ((2.0 - qv) * (B + 1.0))).epsilon(1e-8));
        }
    }
}

TEST_CASE("q-exponential density limits") {
    QIndex q(1.5);
    // alpha -> 0 collapses onto the constant density
    auto small = DensityOfStates::make(FunctionSpec::q_exp_density(1e-8));
    auto flat = DensityOfStates::make(FunctionSpec::constant(1.0));
    complex a = q_partition_pr(small, {2, 0}, q, cfg).value;
    complex b = q_partition(flat, {2, 0}, q, cfg).value;
    REQUIRE(std::abs(a - b) < 1e-6);

    // q -> 1 is the classical Laplace transform of e^{-alpha u}
    auto dos = DensityOfStates::make(FunctionSpec::q_exp_density(1.0));
    complex c = q_partition_pr(dos, {2, 0}, QIndex(1.0 + 1e-5), cfg).value;
    REQUIRE(std::abs(c.real() - 1.0 / 3.0) < 1e-4);
}

TEST_CASE("partition values are real, positive and decreasing in B") {
    auto dos = DensityOfStates::make(FunctionSpec::q_exp_density(0.7));
    QIndex q(1.4);
    double prev = 1e300;
    for (double B : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        complex z = q_partition_pr(dos, {B, 0}, q, cfg).value;
        REQUIRE(std::abs(z.imag()) < 1e-12);
        REQUIRE(z.real() > 0.0);
        REQUIRE(z.real() < prev);
        prev = z.real();
    }
}

TEST_CASE("density-of-states validation") {
    REQUIRE_THROWS_AS(DensityOfStates::make(FunctionSpec::power_window(1, 2, 1, 2)),
                      std::domain_error);
    REQUIRE_THROWS_AS(DensityOfStates::make(FunctionSpec::heaviside_step(true)),
                      std::domain_error);
    REQUIRE_THROWS_AS(
        DensityOfStates::make(FunctionSpec::tabulated({{-1.0, 1.0}, {1.0, 1.0}})),
        std::domain_error);
    auto ok = DensityOfStates::make(FunctionSpec::q_exp_density(1.0));
    REQUIRE(ok.q_dependent);
    auto flat = DensityOfStates::make(FunctionSpec::constant(2.0));
    REQUIRE_FALSE(flat.q_dependent);
    REQUIRE_THROWS_AS(q_partition_pr(flat, {1, 0}, QIndex(1.5), cfg),
                      std::domain_error);
}

TEST_CASE("tabulated density works through the partition path") {
    auto dos = DensityOfStates::make(
        FunctionSpec::tabulated({{0.0, 1.0}, {1.0, 1.0}, {2.0, 0.0}}));
    QIndex q(1.0 + 1e-6);
    complex z = q_partition(dos, {1.0, 0}, q, cfg).value;
    // classical oracle: int_0^1 e^{-u} du + int_1^2 (2-u) e^{-u} du
    //                 = (1 - e^{-1}) + e^{-2}
    double want = 1.0 - std::exp(-1.0) + std::exp(-2.0);
    REQUIRE(z.real() == Approx(want).epsilon(1e-4));
}
