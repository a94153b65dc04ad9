#pragma once

// Expansion of the transform kernel in powers of (q - 1) and the first-order
// transform machinery built on the classical transforms G(p) and G(p, beta).
// The kernel satisfies
//   {1-(1-q)px f^{q-1}}^{1/(1-q)} = exp( sum_{n>=0} g(x,p,n) (q-1)^n ),
//   g(x,p,n) = sum_{m=0}^n [(-1)^{n+1-m} (n-m+1)^{m-1} / m!]
//              (px)^{n-m+1} ln^m f(x),
// and to first order the transform is
//   L = G(p) + [ p^2/2 d^2G/dp^2 + p d/dp d/dbeta G(p,beta) ]_{beta=1} (q-1).

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qlaplace/errors.hpp"
#include "qlaplace/transform.hpp"

namespace qlaplace {

struct SeriesOrder {
    int n_max;
    explicit SeriesOrder(int n) : n_max(n) {
        // coefficient growth makes orders beyond 12 meaningless in doubles
        if (n < 0 || n > 12)
            throw std::domain_error("SeriesOrder: n_max must be in [0, 12]");
    }
};

// Coefficient g(x, p, n) of (q-1)^n in the exponent of the kernel expansion.
// The ln f(x) dependence enters through the supplied fx > 0.
inline complex g_coeff(double x, ComplexPoint p, int n, double fx) {
    if (!(fx > 0.0)) throw std::domain_error("g_coeff: requires f(x) > 0");
    if (n < 0) throw std::domain_error("g_coeff: requires n >= 0");
    const complex px = p * x;
    const double lf = std::log(fx);
    complex sum = 0.0;
    double inv_mfact = 1.0;  // 1/m!
    double lfm = 1.0;        // ln^m f
    for (int m = 0; m <= n; ++m) {
        if (m > 0) {
            inv_mfact /= m;
            lfm *= lf;
        }
        double sign = ((n + 1 - m) % 2 == 0) ? 1.0 : -1.0;
        double coeff = sign * std::pow(static_cast<double>(n - m + 1), m - 1) * inv_mfact;
        sum += coeff * std::pow(px, n - m + 1) * lfm;
    }
    return sum;
}

// Kernel via the truncated exponent sum exp(sum_{n<=N} g (q-1)^n). Exactly
// exp(-p x) at N = 0. Throws InstabilityError when the last retained term
// dominates the first.
inline complex kernel_series(double x, ComplexPoint p, const QIndex& q, double fx,
                             SeriesOrder order) {
    if (!(fx > 0.0)) throw std::domain_error("kernel_series: requires f(x) > 0");
    const double d = q.deficit();
    complex sum = 0.0;
    complex first = 0.0, last = 0.0;
    double dn = 1.0;  // (q-1)^n
    for (int n = 0; n <= order.n_max; ++n) {
        complex term = g_coeff(x, p, n, fx) * dn;
        if (n == 0) first = term;
        last = term;
        sum += term;
        dn *= d;
    }
    if (order.n_max >= 1 && std::abs(first) > 0.0 && std::abs(last) > std::abs(first))
        throw InstabilityError(
            "kernel_series: truncated exponent unstable, last term exceeds first");
    return std::exp(sum);
}

// G(p): the branch-windowed classical transform of f.
inline complex g_big(const FunctionSpec& f, ComplexPoint p,
                     const QuadratureConfig& cfg = {}) {
    TransformValue v = classical_laplace(f, p, cfg);
    if (!v.converged)
        throw QuadratureError("g_big: classical transform did not converge",
                              v.value, v.abs_err);
    return v.value;
}

namespace series_detail {

// Classical transform with integrand [f(x)]^beta e^{-p x}, branch-windowed
// like the bilateral transform.
inline TransformValue classical_power_transform(const FunctionSpec& f, ComplexPoint p,
                                                double beta,
                                                const QuadratureConfig& cfg) {
    transform_detail::check_axis(p);
    const QIndex q1 = QIndex::classical();

    auto one_side = [&](ComplexPoint peff, bool mirrored) {
        auto g = [&](double t) -> complex {
            double x = mirrored ? -t : t;
            double fx = f.eval(x, q1);
            if (fx == 0.0) return complex(0.0, 0.0);
            return std::pow(fx, beta) * std::exp(-peff * t);
        };
        transform_detail::PieceSum acc;
        double lo = mirrored ? -f.support_hi() : f.support_lo();
        double hi = mirrored ? -f.support_lo() : f.support_hi();
        lo = std::max(lo, 0.0);
        if (!(hi > lo)) return acc;
        if (std::isinf(hi)) {
            // e^{-p x} decays exponentially for Re p > 0; p = 0 needs the
            // power of the function's own tail to carry the integral
            double tail_power = 1.0;
            if (peff.real() == 0.0) {
                double e = beta * f.tail_exponent(q1, true);
                if (f.kind() == FunctionKind::q_gaussian) {
                    double sprime = f.gaussian().qprime.deficit();
                    e = sprime == 0.0 ? std::numeric_limits<double>::infinity()
                                      : 2.0 * beta / sprime;
                }
                if (!(e > transform_detail::min_tail_exponent))
                    throw DivergenceError("classical_power_transform: divergent tail");
                tail_power = transform_detail::tail_power_for(e);
            }
            transform_detail::accumulate_tail(acc, g, lo, cfg, tail_power);
        } else {
            transform_detail::accumulate_interval(acc, g, lo, hi, cfg);
        }
        return acc;
    };

    transform_detail::PieceSum acc;
    if (p.real() > 0.0 || p == ComplexPoint(0.0, 0.0)) {
        if (f.mass_on_positive_axis()) acc = one_side(p, false);
    }
    if (p.real() < 0.0 || p == ComplexPoint(0.0, 0.0)) {
        if (f.mass_on_negative_axis()) {
            auto l = one_side(-p, true);
            acc.value -= l.value;
            acc.abs_err += l.abs_err;
            acc.converged = acc.converged && l.converged;
        }
    }
    return transform_detail::finish(acc, transform_detail::support_branch(f), cfg);
}

}  // namespace series_detail

// G(p, beta): classical transform of [f(x)]^beta; G(p, 1) = G(p).
inline complex g_big_beta(const FunctionSpec& f, ComplexPoint p, double beta,
                          const QuadratureConfig& cfg = {}) {
    TransformValue v = series_detail::classical_power_transform(f, p, beta, cfg);
    if (!v.converged)
        throw QuadratureError("g_big_beta: transform did not converge", v.value,
                              v.abs_err);
    return v.value;
}

// First-order transform in powers of (q-1):
//   G(p) + [ p^2/2 G''(p) + p d/dp D_beta G(p,beta)|_{beta=1} ] (q-1),
// with the p-derivatives taken by 5-point central stencils (step
// 1e-3 max(1,|p|)) and the beta-derivative by a central difference of step
// 1e-5. Quadrature failures at any stencil point surface as StencilError.
inline complex first_order_transform(const FunctionSpec& f, ComplexPoint p,
                                     const QIndex& q,
                                     const QuadratureConfig& cfg = {}) {
    if (q.deficit() > 0.15)
        throw std::domain_error("first_order_transform: requires q - 1 <= 0.15");

    QuadratureConfig tight = cfg;
    tight.rel_tol = std::min(cfg.rel_tol, 1e-12);
    tight.abs_tol = std::min(cfg.abs_tol, 1e-14);

    const double h = 1e-3 * std::max(1.0, std::abs(p));
    const double db = 1e-5;
    if (p.real() != 0.0 && std::abs(p.real()) <= 2.0 * h)
        throw StencilError("first_order_transform: stencil crosses Re(p) = 0");

    try {
        auto G = [&](ComplexPoint pp) { return g_big(f, pp, tight); };
        auto Dbeta = [&](ComplexPoint pp) {
            return (g_big_beta(f, pp, 1.0 + db, tight) -
                    g_big_beta(f, pp, 1.0 - db, tight)) /
                   (2.0 * db);
        };

        complex g0 = G(p);
        complex gpp = (-G(p + 2.0 * h) + 16.0 * G(p + h) - 30.0 * g0 +
                       16.0 * G(p - h) - G(p - 2.0 * h)) /
                      (12.0 * h * h);
        complex mixed = (-Dbeta(p + 2.0 * h) + 8.0 * Dbeta(p + h) -
                         8.0 * Dbeta(p - h) + Dbeta(p - 2.0 * h)) /
                        (12.0 * h);
        return g0 + (0.5 * p * p * gpp + p * mixed) * q.deficit();
    } catch (const NumericsError& e) {
        throw StencilError(std::string("first_order_transform: stencil evaluation failed: ") +
                           e.what());
    }
}

}  // namespace qlaplace
