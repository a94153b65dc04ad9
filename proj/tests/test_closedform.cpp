#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qlaplace/closedform.hpp"
#include "qlaplace/transform.hpp"

using namespace qlaplace;
using Catch::Approx;

namespace {
const QuadratureConfig cfg;
}

TEST_CASE("step transform closed forms") {
    QIndex q(1.5);
    REQUIRE(step_transform({2, 0}, q).value.real() == Approx(1.0));
    REQUIRE(step_transform({3, 0}, QIndex::classical()).value.real() ==
            Approx(1.0 / 3.0));
    REQUIRE(step_transform({-1, 0}, q).value == complex(0.0, 0.0));
    REQUIRE(step_transform({-1, 0}, q, StepVariant::left_step).value.real() ==
            Approx(-2.0));
    REQUIRE_THROWS_AS(step_transform({0, 1}, q), std::domain_error);
}

TEST_CASE("step family branch parity: 1 = H(x) + H(-x)") {
    QIndex q(1.3);
    for (complex p : {complex(1.5, 0.0), complex(-1.5, 0.0), complex(2.0, 1.0),
                      complex(-2.0, 1.0)}) {
        complex whole = step_transform(p, q, StepVariant::one).value;
        complex right = step_transform(p, q, StepVariant::right_step).value;
        complex left = step_transform(p, q, StepVariant::left_step).value;
        REQUIRE(std::abs(whole - (right + left)) < 1e-15 * std::abs(whole));
        // quadrature agrees on the active branch
        auto fc = FunctionSpec::constant(1.0);
        auto quad = q_laplace_bilateral(fc, p, q, cfg).value;
        REQUIRE(std::abs(quad - whole) <= 1e-8 * std::abs(whole));
    }
}

TEST_CASE("scaled step closed form and its reductions") {
    QIndex q15(1.5);
    REQUIRE(scaled_step_transform({1, 0}, q15, 1.5, true).value.real() ==
            Approx(2.0 * std::sqrt(1.5)).epsilon(1e-14));
    // q' = 1 reduces to the plain step
    REQUIRE(scaled_step_transform({2, 0}, q15, 1.0).value ==
            step_transform({2, 0}, q15).value);
    // q -> 1 is the classical transform of the constant q'
    REQUIRE(scaled_step_transform({2, 0}, QIndex::classical(), 1.7).value.real() ==
            Approx(1.7 / 2.0).epsilon(1e-14));
    REQUIRE(scaled_step_transform({-2, 0}, q15, 1.5).value == complex(0.0, 0.0));
    REQUIRE_THROWS_AS(scaled_step_transform({1, 0}, q15, 2.5, true),
                      std::domain_error);
}

TEST_CASE("power window special case is member independent") {
    QIndex q(1.5);  // beta = 2
    auto fam = equivalence_family(1.0, q, {0.1, 0.05});
    complex want = q_exp(complex(-1.0, 0.0), q);
    for (const auto& m : fam) {
        auto r = power_window_transform({1, 0}, q, m.lambda(), m.beta(), m.window_a(),
                                        m.window_b());
        REQUIRE(r.supported);
        REQUIRE(r.formula_id == FormulaId::power_window_special);
        REQUIRE(std::abs(r.value - want) < 1e-12);
    }
}

TEST_CASE("power window generic regimes against quadrature") {
    struct Set {
        double q, beta, lambda, a, b, p;
    };
    for (const Set& s : {Set{1.2, 2.0, 0.7, 0.5, 1.5, 1.3},    // ascending regime
                         Set{1.5, 3.0, 1.0, 1.0, 2.0, 1.0}}) {  // descending regime
        QIndex q(s.q);
        auto closed = power_window_transform({s.p, 0}, q, s.lambda, s.beta, s.a, s.b);
        REQUIRE(closed.supported);
        auto f = FunctionSpec::power_window(s.lambda, s.beta, s.a, s.b);
        auto quad = q_laplace_bilateral(f, {s.p, 0}, q, cfg).value;
        REQUIRE(std::abs(quad - closed.value) <= 1e-7 * std::abs(closed.value));
    }
}

TEST_CASE("power window edge and flag behavior") {
    QIndex q(1.5);
    // vanishing window
    auto tiny = power_window_transform({1, 0}, q, 1.0, 3.0, 1.0, 1.0 + 1e-9);
    REQUIRE(tiny.supported);
    REQUIRE(std::abs(tiny.value) < 1e-6);
    // right-supported window vanishes on the left half plane
    REQUIRE(power_window_transform({-1, 0}, q, 1.0, 3.0, 1.0, 2.0).value ==
            complex(0.0, 0.0));
    // complex p is flagged, never guessed
    REQUIRE_FALSE(power_window_transform({1, 2}, q, 1.0, 3.0, 1.0, 2.0).supported);
    REQUIRE_THROWS_AS(power_window_transform({1, 0}, q, 1.0, 3.0, 2.0, 1.0),
                      std::domain_error);
}

TEST_CASE("q-Gaussian fixed-q parameters at q = 1.5") {
    QIndex q(1.5);
    double C = c_q(1.0, q);
    double mu = -1.0 / q.deficit() + 0.5;
    double gamma = 0.5 * std::pow(C, q.deficit()) * std::sqrt(q.deficit());
    REQUIRE(mu == Approx(-1.5));
    REQUIRE(gamma == Approx(0.5 * std::sqrt(C) * std::sqrt(0.5)).epsilon(1e-14));

    double p = 2.0 / gamma;
    auto closed = qgauss_fixed_transform({p, 0}, q, 1.0, true);
    REQUIRE(closed.supported);
    auto quad = q_laplace_fixed(FunctionSpec::q_gaussian_density(1.0, q), {p, 0}, cfg);
    REQUIRE(std::abs(quad.value - closed.value) <= 1e-5 * std::abs(closed.value));
}

TEST_CASE("q-Gaussian fixed-q flags and zero branch") {
    QIndex q(1.5);
    REQUIRE(qgauss_fixed_transform({-5, 0}, q, 1.0, true).value == complex(0.0, 0.0));
    REQUIRE_FALSE(qgauss_fixed_transform({1, 1}, q, 1.0).supported);
    // gamma p <= 1 is outside the Legendre envelope
    REQUIRE_FALSE(qgauss_fixed_transform({0.5, 0}, q, 1.0, true).supported);
    REQUIRE_THROWS_AS(qgauss_fixed_transform({1, 0}, QIndex::classical(), 1.0),
                      std::domain_error);
}

TEST_CASE("first-order G closed form envelope") {
    QIndex q(1.5);
    // beta = 1 equals the beta-free display
    auto g1 = qgauss_firstorder_G({1, 0}, q, 1.0);
    auto g1b = qgauss_firstorder_G({1, 0}, q, 1.0, 1.0);
    REQUIRE(g1.supported);
    REQUIRE(g1b.supported);
    REQUIRE(g1.value == g1b.value);
    REQUIRE(g1.formula_id == FormulaId::qgauss_firstorder_G);
    REQUIRE(g1b.formula_id == FormulaId::qgauss_firstorder_Gbeta);

    REQUIRE_FALSE(qgauss_firstorder_G({1, 0}, QIndex(1.2), 1.0).supported);
    REQUIRE_FALSE(qgauss_firstorder_G({100, 0}, q, 1.0).supported);  // z > 60
    REQUIRE_FALSE(qgauss_firstorder_G({1, 1}, q, 1.0).supported);
    REQUIRE_FALSE(qgauss_firstorder_G({-1, 0}, q, 1.0).supported);
}
