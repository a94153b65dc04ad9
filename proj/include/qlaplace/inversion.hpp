#pragma once

// Numerical inverse Laplace transform. Two contours:
//
//   talbot             deformed cotangent contour (midpoint rule on the
//                      optimized parameterization); fast, but evaluates the
//                      image at Re(p) < 0, so it needs an analytically
//                      continued image function.
//   bromwich_trapezoid vertical line Re(p) = a/t with Euler-accelerated
//                      alternating summation; every node has Re(p) > 0,
//                      which is what transform-engine images provide.
//
// Round trips through the transform engine therefore always run on the
// vertical contour.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qlaplace/errors.hpp"
#include "qlaplace/transform.hpp"

namespace qlaplace {

struct InversionConfig {
    enum class Method { talbot, bromwich_trapezoid };
    Method method = Method::talbot;
    int node_count = 48;
    double contour_scale = 2.0;  // contour radius/abscissa multiplier, ~2/t
};

struct InversionResult {
    double value = 0.0;
    double est_error = 0.0;
};

using LaplaceImage = std::function<complex(complex)>;

namespace inversion_detail {

// Midpoint-rule Talbot on s(theta) = c (N/t)(-0.6122 + 0.5017 theta
// cot(0.6407 theta) + 0.2645 i theta), theta in (0, pi), using conjugate
// symmetry of the image.
inline double talbot_eval(const LaplaceImage& F, double t, int n_nodes, double scale) {
    const int half = std::max(4, n_nodes / 2);
    const double lam = 0.5 * scale * n_nodes / t;
    double sum = 0.0;
    for (int j = 0; j < half; ++j) {
        double th = (j + 0.5) * specfun::pi / half;
        double u = 0.6407 * th;
        double cot = std::cos(u) / std::sin(u);
        complex sigma(-0.6122 + 0.5017 * th * cot, 0.2645 * th);
        complex dsigma(0.5017 * (cot - u / (std::sin(u) * std::sin(u))), 0.2645);
        complex s = lam * sigma;
        complex z = std::exp(s * t) * F(s) * (lam * dsigma);
        sum += z.imag();
    }
    return sum / half;
}

// Euler-accelerated Fourier series on the line Re(p) = a/t:
//   f(t) ~ (e^a / t) sum_{k=0}^{2M} eta_k (-1)^k Re F((a + i pi k)/t).
// The image values are cached by k so node-doubled reruns reuse them.
inline double euler_eval(const std::vector<double>& reF, double t, double a, int M) {
    std::vector<double> eta(2 * M + 1, 1.0);
    eta[0] = 0.5;
    eta[2 * M] = std::pow(2.0, -M);
    double binom = 1.0;  // C(M, k) / 2^M running product
    for (int k = 1; k < M; ++k) {
        binom *= static_cast<double>(M - k + 1) / k;
        eta[2 * M - k] = eta[2 * M - k + 1] + binom * std::pow(2.0, -M);
    }
    double sum = 0.0;
    for (int k = 0; k <= 2 * M; ++k) {
        double term = eta[k] * reF[static_cast<std::size_t>(k)];
        sum += (k % 2 == 0) ? term : -term;
    }
    return std::exp(a) / t * sum;
}

}  // namespace inversion_detail

// Invert a Laplace image at t > 0. The value is computed at half, full and
// doubled node counts; the returned estimate is the last doubling
// difference, and OscillationError is raised when doubling stops helping.
inline InversionResult inverse_laplace(const LaplaceImage& F, double t,
                                       const InversionConfig& cfg = {}) {
    if (!(t > 0.0)) throw std::domain_error("inverse_laplace: requires t > 0");
    if (cfg.node_count < 8)
        throw std::domain_error("inverse_laplace: node_count must be >= 8");
    if (!(cfg.contour_scale > 0.0))
        throw std::domain_error("inverse_laplace: contour_scale must be > 0");

    // Three node levels N/4, N/2, N; the finest is returned and the last
    // doubling difference is the estimate. Levels go downward because on
    // both contours the roundoff amplification grows with the node count,
    // so doubling beyond the configured N would poison the estimate.
    double f_quarter, f_half, f_full;
    if (cfg.method == InversionConfig::Method::talbot) {
        f_quarter = inversion_detail::talbot_eval(F, t, cfg.node_count / 4, cfg.contour_scale);
        f_half = inversion_detail::talbot_eval(F, t, cfg.node_count / 2, cfg.contour_scale);
        f_full = inversion_detail::talbot_eval(F, t, cfg.node_count, cfg.contour_scale);
    } else {
        // abscissa a = 3.5 * contour_scale balances aliasing (e^{-2a})
        // against roundoff amplification (e^{a}); the Fourier nodes of the
        // coarse levels are subsets of the fine level, so the image values
        // are computed once
        const double a = 3.5 * cfg.contour_scale;
        const int M = std::max(8, cfg.node_count / 2);
        std::vector<double> reF(static_cast<std::size_t>(2 * M + 1));
        for (int k = 0; k <= 2 * M; ++k)
            reF[static_cast<std::size_t>(k)] =
                F(complex(a, specfun::pi * k) / t).real();
        f_quarter = inversion_detail::euler_eval(reF, t, a, M / 4);
        f_half = inversion_detail::euler_eval(reF, t, a, M / 2);
        f_full = inversion_detail::euler_eval(reF, t, a, M);
    }

    double est_prev = std::abs(f_half - f_quarter);
    double est = std::abs(f_full - f_half);
    double floor = 1e-12 * std::max(1.0, std::abs(f_full));
    if (est > 10.0 * floor && est > 3.0 * est_prev)
        throw OscillationError(
            "inverse_laplace: node doubling does not reduce the error estimate");
    est = 2.0 * std::max(est, 0.1 * floor);
    if (cfg.method == InversionConfig::Method::bromwich_trapezoid) {
        // the vertical contour aliases images of f beyond 3t; the node
        // differences cannot see that term, so add its scale explicitly
        est += std::exp(-7.0 * cfg.contour_scale) * (1.0 + std::abs(f_full));
    }
    return InversionResult{f_full, est};
}

struct RoundtripSample {
    double t;
    double recovered;
    double expected;
    double abs_error;
};

struct RoundtripReport {
    double sup_error = 0.0;
    std::vector<RoundtripSample> samples;
};

// Round trip through the transform engine: invert p -> L(f)(p, 1 + epsilon)
// on the t grid and compare against f itself. The unilateral image only
// exists for Re(p) > 0, so the vertical contour is used regardless of the
// configured method.
inline RoundtripReport roundtrip_check(const FunctionSpec& f,
                                       const std::vector<double>& t_grid,
                                       double epsilon,
                                       InversionConfig cfg = {}) {
    if (!(epsilon > 0.0) || epsilon > 1e-2)
        throw std::domain_error("roundtrip_check: epsilon must be in (0, 1e-2]");
    if (f.support_lo() < 0.0)
        throw std::domain_error("roundtrip_check: f must be supported on [0, inf)");
    for (double t : t_grid)
        if (!(t > 0.0)) throw std::domain_error("roundtrip_check: t grid must be > 0");

    cfg.method = InversionConfig::Method::bromwich_trapezoid;
    const QIndex q(1.0 + epsilon);
    QuadratureConfig qcfg;
    qcfg.rel_tol = 1e-12;
    qcfg.abs_tol = 1e-15;
    LaplaceImage image = [&](complex p) {
        return q_laplace_unilateral(f, p, q, qcfg).value;
    };

    RoundtripReport report;
    report.samples.reserve(t_grid.size());
    for (double t : t_grid) {
        InversionResult inv = inverse_laplace(image, t, cfg);
        double expected = f.eval(t, q);
        double err = std::abs(inv.value - expected);
        report.samples.push_back(RoundtripSample{t, inv.value, expected, err});
        report.sup_error = std::max(report.sup_error, err);
    }
    return report;
}

}  // namespace qlaplace
