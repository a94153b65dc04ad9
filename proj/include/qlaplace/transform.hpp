#pragma once

// The q-Laplace transform engine. All variants reduce to branch-windowed
// adaptive quadrature of f(x) * {1 - (1-q) p x f(x)^{q-1}}^{1/(1-q)}:
//
//   bilateral:   H[Re p] int_0^inf ...  -  H[-Re p] int_{-inf}^0 ...
//   unilateral:  H[Re p] int_0^inf ...
//   fixed:       bilateral evaluated at the function's own index q'
//   class:       the fixed transform on an equivalence-class representative
//   classical:   the q = 1 specialization (kernel exp(-p x))
//
// with the whole object multiplied by the window factor H(q-1) - H(q-2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qlaplace/errors.hpp"
#include "qlaplace/function_spec.hpp"
#include "qlaplace/qmath.hpp"
#include "qlaplace/quadrature.hpp"

namespace qlaplace {

enum class Branch { right, left, both, outside_q_window };

inline const char* to_string(Branch b) {
    switch (b) {
        case Branch::right: return "right";
        case Branch::left: return "left";
        case Branch::both: return "both";
        case Branch::outside_q_window: return "outside_q_window";
    }
    return "?";
}

struct TransformValue {
    complex value{0.0, 0.0};
    double abs_err = 0.0;
    bool converged = true;
    Branch branch = Branch::right;
};

namespace transform_detail {

// Minimum admissible tail decay exponent; integrands decaying slower than
// x^{-1.05} are rejected as (effectively) divergent.
inline constexpr double min_tail_exponent = 1.05;

inline void check_axis(ComplexPoint p) {
    if (p.real() == 0.0 && p.imag() != 0.0)
        throw std::domain_error(
            "transform: Re(p) = 0 with Im(p) != 0 is degenerate");
}

// Support-derived branch annotation for two-sided transforms.
inline Branch support_branch(const FunctionSpec& f) {
    bool pos = f.mass_on_positive_axis();
    bool neg = f.mass_on_negative_axis();
    if (pos && neg) return Branch::both;
    if (neg) return Branch::left;
    return Branch::right;
}

struct PieceSum {
    complex value{0.0, 0.0};
    double abs_err = 0.0;
    bool converged = true;
};

template <class G>
inline void accumulate_interval(PieceSum& acc, G&& g, double a, double b,
                                const QuadratureConfig& cfg) {
    try {
        IntegralEstimate est = integrate_interval(g, a, b, cfg);
        acc.value += est.value;
        acc.abs_err += est.abs_err;
    } catch (const QuadratureError& e) {
        acc.value += e.value;
        acc.abs_err += e.abs_err;
        acc.converged = false;
    }
}

template <class G>
inline void accumulate_tail(PieceSum& acc, G&& g, double lo,
                            const QuadratureConfig& cfg, double tail_power) {
    try {
        IntegralEstimate est = integrate_semi_infinite(g, cfg, lo, tail_power);
        acc.value += est.value;
        acc.abs_err += est.abs_err;
    } catch (const QuadratureError& e) {
        acc.value += e.value;
        acc.abs_err += e.abs_err;
        acc.converged = false;
    }
}

// Map strengthening for slowly decaying algebraic tails: exponents close to
// 1 need a steep substitution to stay resolvable in double precision.
inline double tail_power_for(double exponent) {
    if (!std::isfinite(exponent) || exponent >= 3.5) return 1.0;
    return std::clamp(2.5 / (exponent - 1.0), 1.0, 16.0);
}

// int over [0, inf) of f(x) kernel(x, p, q, f(x)) dx, restricted to the
// support of f. Requires Re(p) >= 0 so the kernel base stays in the right
// half plane (asserted per evaluation).
inline PieceSum half_line_integral(const FunctionSpec& f, ComplexPoint p,
                                   const QIndex& q, bool mirrored,
                                   const QuadratureConfig& cfg) {
    PieceSum acc;
    auto g = [&](double t) -> complex {
        double x = mirrored ? -t : t;
        double fx = f.eval(x, q);
        if (fx == 0.0) return complex(0.0, 0.0);
        complex k = kernel(t, p, q, fx);
        return fx * k;
    };

    double lo = mirrored ? -f.support_hi() : f.support_lo();
    double hi = mirrored ? -f.support_lo() : f.support_hi();
    lo = std::max(lo, 0.0);
    if (!(hi > lo)) return acc;

    // kernel base sanity: Re(p) >= 0 and t >= 0 keep Re(base) >= 1
    if (p.real() < 0.0)
        throw std::logic_error("half_line_integral: needs Re(p) >= 0");

    std::vector<double> cuts;
    cuts.push_back(lo);
    for (double b : f.interior_breakpoints()) {
        double t = mirrored ? -b : b;
        if (t > lo && t < hi) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());

    QuadratureConfig piece_cfg = cfg;
    std::size_t npieces = cuts.size() + (std::isinf(hi) ? 0 : 0);
    piece_cfg.abs_tol = cfg.abs_tol / static_cast<double>(std::max<std::size_t>(1, npieces));

    if (std::isinf(hi)) {
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            accumulate_interval(acc, g, cuts[i], cuts[i + 1], piece_cfg);
        double expo = f.tail_exponent(q, p == ComplexPoint(0.0, 0.0));
        accumulate_tail(acc, g, cuts.back(), piece_cfg, tail_power_for(expo));
    } else {
        cuts.push_back(hi);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            accumulate_interval(acc, g, cuts[i], cuts[i + 1], piece_cfg);
    }
    return acc;
}

// Divergence pre-check for the half-line integral with unbounded support.
inline void check_decay(const FunctionSpec& f, ComplexPoint p, const QIndex& q,
                        bool mirrored) {
    double hi = mirrored ? -f.support_lo() : f.support_hi();
    if (!std::isinf(hi)) return;
    double e = f.tail_exponent(q, p == ComplexPoint(0.0, 0.0));
    if (!(e > min_tail_exponent))
        throw DivergenceError(
            "transform: integrand tail exponent " + std::to_string(e) +
            " <= " + std::to_string(min_tail_exponent) + " (divergent or too slow)");
}

inline TransformValue finish(PieceSum acc, Branch branch,
                             const QuadratureConfig& cfg) {
    TransformValue out;
    out.value = acc.value;
    out.abs_err = acc.abs_err;
    out.branch = branch;
    out.converged = acc.converged &&
                    acc.abs_err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(acc.value));
    return out;
}

}  // namespace transform_detail

// Unilateral transform H[Re p] int_0^inf f(x) kernel dx. Identically zero
// (with branch annotation "right") for Re(p) < 0.
inline TransformValue q_laplace_unilateral(const FunctionSpec& f, ComplexPoint p,
                                           const QIndex& q,
                                           const QuadratureConfig& cfg = {}) {
    transform_detail::check_axis(p);
    TransformValue out;
    out.branch = Branch::right;
    if (p.real() < 0.0) return out;
    if (!f.mass_on_positive_axis()) return out;
    transform_detail::check_decay(f, p, q, false);
    auto acc = transform_detail::half_line_integral(f, p, q, false, cfg);
    return transform_detail::finish(acc, Branch::right, cfg);
}

// Bilateral transform: right-branch integral for Re(p) > 0, minus the
// left-half-line integral for Re(p) < 0. At p = 0 the kernel is 1 and both
// windows are taken with the H(0) = 1 convention, giving
// int_0^inf f - int_{-inf}^0 f.
inline TransformValue q_laplace_bilateral(const FunctionSpec& f, ComplexPoint p,
                                          const QIndex& q,
                                          const QuadratureConfig& cfg = {}) {
    transform_detail::check_axis(p);
    Branch branch = transform_detail::support_branch(f);
    transform_detail::PieceSum acc;
    if (p == ComplexPoint(0.0, 0.0)) {
        if (f.mass_on_positive_axis()) {
            transform_detail::check_decay(f, p, q, false);
            auto r = transform_detail::half_line_integral(f, p, q, false, cfg);
            acc.value += r.value;
            acc.abs_err += r.abs_err;
            acc.converged = acc.converged && r.converged;
        }
        if (f.mass_on_negative_axis()) {
            transform_detail::check_decay(f, p, q, true);
            auto l = transform_detail::half_line_integral(f, p, q, true, cfg);
            acc.value -= l.value;
            acc.abs_err += l.abs_err;
            acc.converged = acc.converged && l.converged;
        }
        return transform_detail::finish(acc, branch, cfg);
    }
    if (p.real() > 0.0) {
        if (!f.mass_on_positive_axis())
            return transform_detail::finish(acc, branch, cfg);
        transform_detail::check_decay(f, p, q, false);
        acc = transform_detail::half_line_integral(f, p, q, false, cfg);
        return transform_detail::finish(acc, branch, cfg);
    }
    // Re(p) < 0: minus the integral over (-inf, 0], mirrored onto [0, inf)
    if (!f.mass_on_negative_axis())
        return transform_detail::finish(acc, branch, cfg);
    transform_detail::check_decay(f, p, q, true);
    acc = transform_detail::half_line_integral(f, -p, q, true, cfg);
    acc.value = -acc.value;
    return transform_detail::finish(acc, branch, cfg);
}

// Classical (q = 1) specialization: branch-windowed Laplace transform with
// kernel exp(-p x).
inline TransformValue classical_laplace(const FunctionSpec& f, ComplexPoint p,
                                        const QuadratureConfig& cfg = {}) {
    return q_laplace_bilateral(f, p, QIndex::classical(), cfg);
}

// Singular transform: the bilateral transform evaluated at the function's
// own index q'. Functions without an intrinsic index collapse to the
// bilateral transform at the supplied fallback.
inline TransformValue q_laplace_fixed(const FunctionSpec& f, ComplexPoint p,
                                      const QuadratureConfig& cfg = {},
                                      std::optional<QIndex> fallback_q = std::nullopt) {
    std::optional<double> qi = f.intrinsic_q();
    if (qi.has_value()) return q_laplace_bilateral(f, p, QIndex(*qi), cfg);
    if (fallback_q.has_value()) return q_laplace_bilateral(f, p, *fallback_q, cfg);
    throw std::domain_error(
        "q_laplace_fixed: function carries no index q' and no fallback given");
}

// Equivalence-class transform: the value of the singular transform on a
// class representative, at the class index q'. Equal for every member of
// the class by construction.
inline TransformValue q_laplace_class(const FunctionSpec& representative,
                                      ComplexPoint p, const QIndex& qprime,
                                      const QuadratureConfig& cfg = {}) {
    return q_laplace_bilateral(representative, p, qprime, cfg);
}

enum class Variant { bilateral, unilateral, fixed, equivalence_class, classical, partition };

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::bilateral: return "bilateral";
        case Variant::unilateral: return "unilateral";
        case Variant::fixed: return "fixed";
        case Variant::equivalence_class: return "class";
        case Variant::classical: return "classical";
        case Variant::partition: return "partition";
    }
    return "?";
}

// Raw-q entry point: applies the window factor H(q-1) - H(q-2) before any
// validation, so q outside [1, 2) yields exactly zero instead of an error.
inline TransformValue evaluate_transform(const FunctionSpec& f, ComplexPoint p,
                                         double q_raw, Variant variant,
                                         const QuadratureConfig& cfg = {}) {
    if (!QIndex::admissible(q_raw)) {
        TransformValue out;
        out.branch = Branch::outside_q_window;
        return out;
    }
    QIndex q(q_raw);
    switch (variant) {
        case Variant::bilateral:
            return q_laplace_bilateral(f, p, q, cfg);
        case Variant::unilateral:
            return q_laplace_unilateral(f, p, q, cfg);
        case Variant::fixed:
            return q_laplace_fixed(f, p, cfg, q);
        case Variant::equivalence_class:
            return q_laplace_class(f, p, q, cfg);
        case Variant::classical:
            return classical_laplace(f, p, cfg);
        case Variant::partition:
            return q_laplace_unilateral(f, p, q, cfg);
    }
    throw std::logic_error("evaluate_transform: unknown variant");
}

// Members of one equivalence class: power windows with beta = 1/(q-1),
// shared lambda, and for each left endpoint a the right endpoint b solved
// from the unit-normalization tie
//   lambda^beta (a^{1-beta} - b^{1-beta}) / (beta - 1) = 1.
// All members share the transform value q_exp(-p lambda, q).
inline std::vector<FunctionSpec> equivalence_family(double lambda, const QIndex& q,
                                                    const std::vector<double>& a_values) {
    if (q.is_classical())
        throw std::domain_error("equivalence_family: requires q > 1");
    if (!(lambda > 0.0))
        throw std::domain_error("equivalence_family: requires lambda > 0");
    const double beta = 1.0 / q.deficit();
    std::vector<FunctionSpec> members;
    members.reserve(a_values.size());
    for (double a : a_values) {
        if (!(a > 0.0))
            throw std::domain_error("equivalence_family: requires a > 0");
        // mass of the unbounded tail from a must exceed 1
        double tail_mass = std::pow(lambda, beta) * std::pow(a, 1.0 - beta) / (beta - 1.0);
        if (!(tail_mass > 1.0))
            throw NoSolutionError(
                "equivalence_family: tail mass from a = " + std::to_string(a) +
                " is " + std::to_string(tail_mass) + " <= 1, no b solves the tie");
        double b_pow = std::pow(a, 1.0 - beta) - (beta - 1.0) * std::pow(lambda, -beta);
        double b = std::pow(b_pow, 1.0 / (1.0 - beta));
        members.push_back(FunctionSpec::power_window(lambda, beta, a, b));
    }
    return members;
}

}  // namespace qlaplace
