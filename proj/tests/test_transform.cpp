#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qlaplace/closedform.hpp"
#include "qlaplace/transform.hpp"

using namespace qlaplace;
using Catch::Approx;

namespace {
const QuadratureConfig cfg;
}

TEST_CASE("unilateral step transform") {
    auto f = FunctionSpec::heaviside_step();
    QIndex q(1.5);
    auto v = q_laplace_unilateral(f, {2, 0}, q, cfg);
    REQUIRE(v.converged);
    REQUIRE(v.branch == Branch::right);
    REQUIRE(v.value.real() == Approx(1.0).epsilon(1e-9));
    REQUIRE(std::abs(v.value.imag()) < 1e-12);

    // near-classical limit against 1/p
    auto nc = q_laplace_unilateral(f, {3, 0}, QIndex(1.0 + 1e-5), cfg);
    REQUIRE(std::abs(nc.value.real() - 1.0 / 3.0) < 1e-4);

    // H[Re p] kills the left half plane but the branch stays "right"
    auto z = q_laplace_unilateral(f, {-1, 0}, q, cfg);
    REQUIRE(z.value == complex(0.0, 0.0));
    REQUIRE(z.branch == Branch::right);
}

TEST_CASE("degenerate imaginary axis is rejected") {
    auto f = FunctionSpec::heaviside_step();
    REQUIRE_THROWS_AS(q_laplace_unilateral(f, {0, 1}, QIndex(1.5), cfg),
                      std::domain_error);
    REQUIRE_THROWS_AS(q_laplace_bilateral(f, {0, -2}, QIndex(1.5), cfg),
                      std::domain_error);
}

TEST_CASE("bilateral transform of one-sided and two-sided functions") {
    QIndex q(1.5);
    auto lstep = FunctionSpec::heaviside_step(true);
    auto lv = q_laplace_bilateral(lstep, {-1, 0}, q, cfg);
    REQUIRE(lv.branch == Branch::left);
    REQUIRE(lv.value.real() == Approx(1.0 / (0.5 * -1.0)).epsilon(1e-9));

    auto one = FunctionSpec::constant(1.0);
    auto pos = q_laplace_bilateral(one, {2, 0}, q, cfg);
    auto negv = q_laplace_bilateral(one, {-2, 0}, q, cfg);
    REQUIRE(pos.branch == Branch::both);
    REQUIRE(pos.value.real() == Approx(1.0).epsilon(1e-9));
    REQUIRE(negv.value.real() == Approx(-1.0).epsilon(1e-9));

    // q-Gaussian at nearly classical q matches the classical transform
    auto g = FunctionSpec::q_gaussian_density(1.0, QIndex(1.5));
    auto nearly = q_laplace_bilateral(g, {1, 0}, QIndex(1.0 + 1e-6), cfg);
    auto classical = classical_laplace(g, {1, 0}, cfg);
    REQUIRE(std::abs(nearly.value - classical.value) < 1e-4);
}

TEST_CASE("fixed transform uses the function's own index") {
    auto sstep = FunctionSpec::scaled_step(1.5);
    auto v = q_laplace_fixed(sstep, {1, 0}, cfg);
    REQUIRE(v.value.real() == Approx(2.0 * std::sqrt(1.5)).epsilon(1e-9));

    // a q-Gaussian carries q'; compare one point against the Legendre form
    QIndex q(1.5);
    auto g = FunctionSpec::q_gaussian_density(1.0, q);
    double C = c_q(1.0, q);
    double gamma = 0.5 * std::pow(C, 0.5) * std::sqrt(0.5);
    double p = 2.0 / gamma;
    auto closed = qgauss_fixed_transform({p, 0}, q, 1.0, true);
    REQUIRE(closed.supported);
    auto quad = q_laplace_fixed(g, {p, 0}, cfg);
    REQUIRE(std::abs(quad.value - closed.value) <=
            1e-5 * std::abs(closed.value));

    // no intrinsic index: collapses to the bilateral transform at the fallback
    auto step = FunctionSpec::heaviside_step();
    auto fb = q_laplace_fixed(step, {2, 0}, cfg, QIndex(1.3));
    auto bi = q_laplace_bilateral(step, {2, 0}, QIndex(1.3), cfg);
    REQUIRE(fb.value == bi.value);
    REQUIRE_THROWS_AS(q_laplace_fixed(step, {2, 0}, cfg), std::domain_error);
}

TEST_CASE("equivalence family construction and class transform") {
    QIndex q(1.5);  // beta = 2
    auto fam = equivalence_family(1.0, q, {0.1, 0.05});
    REQUIRE(fam.size() == 2);
    REQUIRE(fam[0].window_b() == Approx(1.0 / 9.0).epsilon(1e-12));

    for (double pr : {0.5, 1.0, 2.0}) {
        complex v0 = q_laplace_class(fam[0], {pr, 0}, q, cfg).value;
        complex v1 = q_laplace_class(fam[1], {pr, 0}, q, cfg).value;
        complex target = q_exp(complex(-pr, 0), q);
        REQUIRE(std::abs(v0 - v1) < 2e-6);
        REQUIRE(std::abs(v0 - target) < 2e-6);
    }

    // kernel is 1 at p = 0, so the class value is the unit window mass
    REQUIRE(q_laplace_class(fam[0], {0, 0}, q, cfg).value.real() ==
            Approx(1.0).epsilon(1e-9));

    // tail mass below 1 leaves no solvable right endpoint
    REQUIRE_THROWS_AS(equivalence_family(1.0, q, {2.0}), NoSolutionError);
    REQUIRE_THROWS_AS(equivalence_family(1.0, QIndex::classical(), {0.1}),
                      std::domain_error);
}

TEST_CASE("classical transform values") {
    auto step = FunctionSpec::heaviside_step();
    REQUIRE(classical_laplace(step, {3, 0}, cfg).value.real() ==
            Approx(1.0 / 3.0).epsilon(1e-10));
    auto one = FunctionSpec::constant(1.0);
    REQUIRE(classical_laplace(one, {2, 0}, cfg).value.real() ==
            Approx(0.5).epsilon(1e-10));

    auto g = FunctionSpec::q_gaussian_density(1.0, QIndex(1.5));
    auto closed = qgauss_firstorder_G({1, 0}, QIndex(1.5), 1.0);
    REQUIRE(closed.supported);
    REQUIRE(std::abs(classical_laplace(g, {1, 0}, cfg).value - closed.value) <=
            1e-5 * std::abs(closed.value));
}

TEST_CASE("constant-function reduction c^{2-q}/((2-q)p)") {
    for (double c : {0.5, 1.0, 3.0}) {
        auto f = FunctionSpec::constant(c);
        for (double qv : {1.2, 1.5, 1.8}) {
            for (double pr : {0.7, 2.0}) {
                auto v = q_laplace_unilateral(f, {pr, 0}, QIndex(qv), cfg);
                double want = std::pow(c, 2.0 - qv) / ((2.0 - qv) * pr);
                REQUIRE(v.value.real() == Approx(want).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("step homogeneity L(s p) = L(p)/s") {
    auto f = FunctionSpec::heaviside_step();
    QIndex q(1.3);
    complex base = q_laplace_unilateral(f, {1, 0}, q, cfg).value;
    for (double s : {0.5, 2.0, 7.0}) {
        complex scaled = q_laplace_unilateral(f, {s, 0}, q, cfg).value;
        REQUIRE(std::abs(scaled - base / s) < 1e-9 * std::abs(base / s) + 1e-12);
    }
}

TEST_CASE("classical-limit convergence is first order in q-1") {
    auto fit_slope = [](const std::vector<double>& eps,
                        const std::vector<double>& err) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < eps.size(); ++i) {
            double x = std::log(eps[i]), y = std::log(err[i]);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        double n = static_cast<double>(eps.size());
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    std::vector<double> eps = {1e-2, 1e-3, 1e-4, 1e-5};
    for (int which = 0; which < 2; ++which) {
        FunctionSpec f = which == 0
                             ? FunctionSpec::heaviside_step()
                             : FunctionSpec::q_gaussian_density(1.0, QIndex(1.5));
        complex ref = classical_laplace(f, {1, 0}, cfg).value;
        std::vector<double> errs;
        for (double e : eps)
            errs.push_back(std::abs(
                q_laplace_unilateral(f, {1, 0}, QIndex(1.0 + e), cfg).value - ref));
        REQUIRE(fit_slope(eps, errs) == Approx(1.0).margin(0.2));
    }
}

TEST_CASE("divergence pre-check rejects too-slow tails") {
    auto f = FunctionSpec::constant(1.0);
    REQUIRE_THROWS_AS(q_laplace_unilateral(f, {1, 0}, QIndex(1.99), cfg),
                      DivergenceError);
    // at p = 0 a constant has no decay at all
    REQUIRE_THROWS_AS(q_laplace_bilateral(f, {0, 0}, QIndex(1.5), cfg),
                      DivergenceError);
}

TEST_CASE("window factor zeroes inadmissible q in every variant") {
    auto f = FunctionSpec::heaviside_step();
    for (double q_raw : {0.3, 2.0, 5.0}) {
        for (Variant variant :
             {Variant::bilateral, Variant::unilateral, Variant::fixed,
              Variant::equivalence_class, Variant::classical, Variant::partition}) {
            auto v = evaluate_transform(f, {1, 0}, q_raw, variant, cfg);
            REQUIRE(v.value == complex(0.0, 0.0));
            REQUIRE(v.branch == Branch::outside_q_window);
            REQUIRE(v.converged);
        }
    }
}

TEST_CASE("tabulated functions integrate piecewise") {
    auto tri = FunctionSpec::tabulated({{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}});
    for (double pr : {0.8, 2.0}) {
        // triangle = box*box convolution: L = ((1-e^{-p})/p)^2
        double want = std::pow((1.0 - std::exp(-pr)) / pr, 2.0);
        auto v = classical_laplace(tri, {pr, 0}, cfg);
        REQUIRE(v.value.real() == Approx(want).epsilon(1e-10));
    }
    REQUIRE_THROWS_AS(FunctionSpec::tabulated({{0.0, 1.0}, {1.0, -0.5}}),
                      std::domain_error);
    REQUIRE_THROWS_AS(FunctionSpec::tabulated({{1.0, 1.0}, {0.5, 0.5}}),
                      std::domain_error);
}

TEST_CASE("non-convergence is reported, value still returned") {
    QuadratureConfig tight;
    tight.rel_tol = 1e-15;  // below the attainable estimate floor
    tight.abs_tol = 1e-300;
    tight.max_subdivisions = 2;
    auto g = FunctionSpec::q_gaussian_density(1.0, QIndex(1.5));
    auto v = q_laplace_bilateral(g, {1, 0}, QIndex(1.5), tight);
    REQUIRE_FALSE(v.converged);
    REQUIRE(std::abs(v.value) > 0.0);
    REQUIRE(v.abs_err > 0.0);
}
