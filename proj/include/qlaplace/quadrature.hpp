#pragma once

// Adaptive complex-valued quadrature built on 15-point Gauss-Kronrod panels.
// Semi-infinite integrals go through the compactifying substitution
// x = t/(1-t) by default; a power-law tail-extrapolation policy is available
// for integrands with known algebraic decay.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "qlaplace/errors.hpp"

namespace qlaplace {

using complex = std::complex<double>;

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_subdivisions = 2000;
    enum class TailPolicy { compactify, power_law_extrapolate };
    TailPolicy tail_policy = TailPolicy::compactify;
};

struct IntegralEstimate {
    complex value{0.0, 0.0};
    double abs_err = 0.0;
    long evaluations = 0;
};

namespace quad_detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (abscissae for the interval [-1, 1], symmetric).
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    complex value;
    double err;
};

struct PanelOrder {
    bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

template <class F>
inline Panel gk15(F&& f, double a, double b, long& evals) {
    const double hl = 0.5 * (b - a);
    const double center = 0.5 * (a + b);
    complex fv[15];
    // index layout: 0..6 -> +xgk[0..6], 7 -> center, 8..14 -> -xgk[0..6]
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center + hl * xgk[i]);
        fv[8 + i] = f(center - hl * xgk[i]);
    }
    fv[7] = f(center);
    evals += 15;
    for (int i = 0; i < 15; ++i) {
        if (!std::isfinite(fv[i].real()) || !std::isfinite(fv[i].imag()))
            throw NumericsError("quadrature: non-finite integrand value");
    }

    complex resk = wgk[7] * fv[7];
    complex resg = wg[3] * fv[7];
    double resabs = wgk[7] * std::abs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        resk += wgk[i] * (fv[i] + fv[8 + i]);
        resabs += wgk[i] * (std::abs(fv[i]) + std::abs(fv[8 + i]));
    }
    // Gauss nodes are the odd-indexed Kronrod abscissae
    for (int j = 0; j < 3; ++j) {
        int i = 2 * j + 1;
        resg += wg[j] * (fv[i] + fv[8 + i]);
    }

    complex mean = resk * 0.5;
    double resasc = wgk[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += wgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[8 + i] - mean));

    double err = std::abs(resk - resg) * std::abs(hl);
    resabs *= std::abs(hl);
    resasc *= std::abs(hl);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(eps * 50.0 * resabs, err);
    return Panel{a, b, resk * hl, err};
}

}  // namespace quad_detail

// Adaptive integration of a complex-valued integrand over [a, b].
// Throws QuadratureError (carrying the best estimates) when the subdivision
// budget is exhausted with the error still above tolerance.
template <class F>
inline IntegralEstimate integrate_interval(F&& f, double a, double b,
                                           const QuadratureConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_subdivisions < 1)
        throw std::invalid_argument("integrate_interval: invalid QuadratureConfig");
    IntegralEstimate out;
    if (a == b) return out;

    std::priority_queue<quad_detail::Panel, std::vector<quad_detail::Panel>,
                        quad_detail::PanelOrder>
        heap;
    heap.push(quad_detail::gk15(f, a, b, out.evaluations));
    complex total = heap.top().value;
    double total_err = heap.top().err;

    int splits = 0;
    while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
        if (splits >= cfg.max_subdivisions)
            throw QuadratureError("quadrature: subdivision budget exhausted",
                                  total, total_err);
        quad_detail::Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw QuadratureError("quadrature: interval no longer splittable",
                                  total, total_err);
        quad_detail::Panel left =
            quad_detail::gk15(f, worst.a, mid, out.evaluations);
        quad_detail::Panel right =
            quad_detail::gk15(f, mid, worst.b, out.evaluations);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++splits;
    }
    out.value = total;
    out.abs_err = total_err;
    return out;
}

// Integral of g over [lo, infinity). The compactify policy substitutes
// x = lo + (t/(1-t))^m; the default m = 1 is the plain compactification,
// while m > 1 strengthens the map so slowly decaying algebraic tails
// (exponent just above 1) become resolvable near t = 1. Callers that know
// the tail exponent gamma should pass m ~ 2.5/(gamma - 1), clamped to
// [1, 16]. The power-law policy instead integrates a finite stretch and
// closes the tail with a locally fitted x^{-gamma} extrapolation.
template <class F>
inline IntegralEstimate integrate_semi_infinite(F&& g, const QuadratureConfig& cfg,
                                                double lo = 0.0,
                                                double tail_power = 1.0) {
    if (!(tail_power >= 1.0) || !(tail_power <= 16.0))
        throw std::invalid_argument("integrate_semi_infinite: tail_power in [1, 16]");
    if (cfg.tail_policy == QuadratureConfig::TailPolicy::compactify) {
        const double m = tail_power;
        auto mapped = [&, m](double t) -> complex {
            double om = 1.0 - t;
            if (om <= 0.0 || t <= 0.0) return complex(0.0, 0.0);
            double s = t / om;
            double x = lo + (m == 1.0 ? s : std::pow(s, m));
            double jac = (m == 1.0 ? 1.0 : m * std::pow(s, m - 1.0)) / (om * om);
            if (!std::isfinite(x) || !std::isfinite(jac)) return complex(0.0, 0.0);
            return g(x) * jac;
        };
        return integrate_interval(mapped, 0.0, 1.0, cfg);
    }

    const double cut = std::max(1.0, std::abs(lo)) * 1e3;
    double X = lo + cut;
    IntegralEstimate head = integrate_interval(g, lo, X, cfg);

    complex g1 = g(X), g2 = g(2.0 * X), g0 = g(0.5 * (lo + X) + 0.5 * X);
    const double ln2 = std::log(2.0);
    double gamma1 = std::log(std::abs(g1) / std::abs(g2)) / ln2;
    double gamma0 =
        std::log(std::abs(g0) / std::abs(g1)) / std::log(X / (0.75 * X + 0.25 * lo));
    head.evaluations += 3;
    if (std::abs(g1) == 0.0 && std::abs(g2) == 0.0) return head;
    if (!(gamma1 > 1.05))
        throw DivergenceError("integrate_semi_infinite: tail exponent <= 1.05");
    complex tail = g1 * X / (gamma1 - 1.0);
    double tail_err =
        std::abs(tail) * (std::abs(gamma1 - gamma0) / std::max(0.05, gamma1 - 1.0) +
                          1e-3);
    head.value += tail;
    head.abs_err += tail_err;
    return head;
}

}  // namespace qlaplace
