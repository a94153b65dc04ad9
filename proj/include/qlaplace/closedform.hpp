#pragma once

// Closed-form transform values for the catalog functions that admit them.
// These are the regression targets the quadrature engine is checked against.
// A closed form never extrapolates: outside its validated envelope it
// reports supported = false and the caller falls back to quadrature.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>

#include "qlaplace/qmath.hpp"
#include "qlaplace/specfun.hpp"

namespace qlaplace {

enum class FormulaId {
    step,
    left_step,
    one,
    scaled_step,
    power_window,
    power_window_special,
    qgauss_fixed,
    qgauss_firstorder_G,
    qgauss_firstorder_Gbeta,
};

struct ClosedFormResult {
    complex value{0.0, 0.0};
    FormulaId formula_id = FormulaId::step;
    bool supported = true;
    double est_error = 0.0;
};

enum class StepVariant { right_step, left_step, one };

// Transform of the step family:
//   f = H(x):   H[Re p] / ((2-q) p)
//   f = H(-x):  H[-Re p] / ((2-q) p)
//   f = 1:      1 / ((2-q) p)  on either half plane
inline ClosedFormResult step_transform(ComplexPoint p, const QIndex& q,
                                       StepVariant variant = StepVariant::right_step) {
    if (p.real() == 0.0)
        throw std::domain_error("step_transform: requires Re(p) != 0");
    ClosedFormResult r;
    const complex base = 1.0 / ((2.0 - q.value()) * p);
    switch (variant) {
        case StepVariant::right_step:
            r.formula_id = FormulaId::step;
            r.value = p.real() > 0.0 ? base : complex(0.0, 0.0);
            break;
        case StepVariant::left_step:
            r.formula_id = FormulaId::left_step;
            r.value = p.real() < 0.0 ? base : complex(0.0, 0.0);
            break;
        case StepVariant::one:
            r.formula_id = FormulaId::one;
            r.value = base;
            break;
    }
    r.est_error = std::abs(r.value) * 4e-16;
    return r;
}

// Transform of f(x) = q' H(x):  q'^{2-q} / (2-q) * H[Re p] / p.
// With pr_form = true the singular-transform version is evaluated, i.e. the
// same display at q = q' (then q' must itself be an admissible index).
inline ClosedFormResult scaled_step_transform(ComplexPoint p, const QIndex& q,
                                              double qprime, bool pr_form = false) {
    if (!(qprime > 0.0))
        throw std::domain_error("scaled_step_transform: requires q' > 0");
    double qe = q.value();
    if (pr_form) {
        if (!QIndex::admissible(qprime))
            throw std::domain_error("scaled_step_transform: pr form needs q' in [1,2)");
        qe = qprime;
    }
    ClosedFormResult r;
    r.formula_id = FormulaId::scaled_step;
    if (p.real() > 0.0)
        r.value = std::pow(qprime, 2.0 - qe) / (2.0 - qe) / p;
    r.est_error = std::abs(r.value) * 1e-15;
    return r;
}

namespace closedform_detail {

struct WindowF {
    double s, rho;
    double c;  // (q-1) p lambda^{beta(q-1)}
};

}  // namespace closedform_detail

// Transform of the power window f = (lambda/x)^beta on [a, b]. Two
// hypergeometric regimes split at beta (q-1) = 1; at the split itself the
// kernel is x-independent and the value collapses to the elementary
//   [window mass] * q_exp(-p lambda, q).
// Complex p and hypergeometric arguments outside the supported region are
// flagged, never approximated.
inline ClosedFormResult power_window_transform(ComplexPoint p, const QIndex& q,
                                               double lambda, double beta, double a,
                                               double b) {
    if (!(lambda > 0.0) || !(0.0 < a && a < b))
        throw std::domain_error("power_window_transform: needs lambda > 0, 0 < a < b");
    if (p.real() == 0.0 && p.imag() != 0.0)
        throw std::domain_error("power_window_transform: degenerate Re(p) = 0");
    ClosedFormResult r;
    r.formula_id = FormulaId::power_window;
    if (p.real() < 0.0) return r;  // right-supported window, H[Re p] = 0

    const double d = q.deficit();
    const double delta = 1.0 - beta * d;

    if (std::abs(delta) < 1e-12) {
        // beta = 1/(q-1): kernel base is 1 + (q-1) p lambda for every x
        double mass = std::pow(lambda, beta) *
                      (std::pow(a, 1.0 - beta) - std::pow(b, 1.0 - beta)) /
                      (beta - 1.0);
        r.formula_id = FormulaId::power_window_special;
        r.value = mass * q_exp(-p * lambda, q);
        r.est_error = std::abs(r.value) * 1e-14;
        return r;
    }

    if (p.imag() != 0.0 || q.is_classical()) {
        r.supported = false;  // quadrature covers complex p and q = 1
        return r;
    }
    const double pr = p.real();
    const double s = 1.0 / d;
    const double c = d * pr * std::pow(lambda, beta * d);

    try {
        if (delta > 0.0) {
            // ascending regime: argument -1/(c x^delta)
            const double rho = (s - 1.0) / delta;
            auto F = [&](double x) {
                return specfun::gauss_2f1(s, rho, rho + 1.0,
                                          -1.0 / (c * std::pow(x, delta)));
            };
            auto fa = F(a);
            auto fb = F(b);
            double expo = (q.value() - 2.0) / d;  // 1 - s
            complex val = (d / (2.0 - q.value())) * std::pow(d * pr, -s) *
                          (std::pow(a, expo) * fa.value - std::pow(b, expo) * fb.value);
            r.value = val;
            r.est_error = std::pow(d * pr, -s) *
                          (std::pow(a, expo) * fa.est_error +
                           std::pow(b, expo) * fb.est_error) +
                          std::abs(val) * 1e-14;
        } else {
            // descending regime: argument -c x^delta (here beta > 1/(q-1) > 1)
            const double rho = (beta - 1.0) / (beta * d - 1.0);
            auto F = [&](double x) {
                return specfun::gauss_2f1(s, rho, rho + 1.0, -c * std::pow(x, delta));
            };
            auto fa = F(a);
            auto fb = F(b);
            complex val = std::pow(lambda, beta) / (beta - 1.0) *
                          (std::pow(a, 1.0 - beta) * fa.value -
                           std::pow(b, 1.0 - beta) * fb.value);
            r.value = val;
            r.est_error = std::pow(lambda, beta) / (beta - 1.0) *
                          (std::pow(a, 1.0 - beta) * fa.est_error +
                           std::pow(b, 1.0 - beta) * fb.est_error) +
                          std::abs(val) * 1e-14;
        }
    } catch (const UnsupportedRegionError&) {
        r.supported = false;
    } catch (const AccuracyError&) {
        r.supported = false;
    }
    return r;
}

// Fixed-q transform of the q-Gaussian through the associated Legendre
// function:
//   gamma = (C_q^{q-1}/2) sqrt((q-1)/alpha),  mu = 1/(1-q) + 1/2,
//   L = C_q Gamma(-mu)/sqrt((q-1) alpha) 2^{-mu-1} (gamma^2 p^2 - 1)^{mu/2}
//       * { H[Re p] P^mu_{-1-mu}(gamma p) - H[-Re p] P^mu_{-1-mu}(-gamma p) },
// the unilateral variant keeping only the right branch. Validated for real p
// with gamma |p| > 1; everything else is flagged unsupported.
inline ClosedFormResult qgauss_fixed_transform(ComplexPoint p, const QIndex& q,
                                               double alpha, bool unilateral = false) {
    if (q.is_classical())
        throw std::domain_error("qgauss_fixed_transform: requires q > 1");
    if (!(alpha > 0.0))
        throw std::domain_error("qgauss_fixed_transform: requires alpha > 0");
    ClosedFormResult r;
    r.formula_id = FormulaId::qgauss_fixed;
    if (p.imag() != 0.0) {
        r.supported = false;
        return r;
    }
    const double pr = p.real();
    if (unilateral && pr < 0.0) return r;  // H[Re p] kills the only branch
    if (pr == 0.0) {
        r.supported = false;
        return r;
    }

    const double d = q.deficit();
    const double C = c_q(alpha, q);
    const double gamma = 0.5 * std::pow(C, d) * std::sqrt(d / alpha);
    const double mu = -1.0 / d + 0.5;
    const double gp = gamma * std::abs(pr);
    if (!(gp > 1.0)) {
        r.supported = false;  // Legendre argument must exceed 1
        return r;
    }
    try {
        auto P = specfun::legendre_p(mu, -1.0 - mu, gp);
        double gmu = specfun::gamma_fn(-mu).value.real();
        double pref = C * gmu / std::sqrt(d * alpha) * std::pow(2.0, -mu - 1.0) *
                      std::pow(gp * gp - 1.0, 0.5 * mu);
        double sign = pr > 0.0 ? 1.0 : -1.0;
        r.value = sign * pref * P.value;
        r.est_error = std::abs(pref) * P.est_error + std::abs(r.value) * 1e-13;
    } catch (const UnsupportedRegionError&) {
        r.supported = false;
    } catch (const AccuracyError&) {
        r.supported = false;
    }
    return r;
}

// Classical transform of the q-Gaussian (and of its beta-th power), the
// first-order building block G(p, q') resp. G(p, q', beta):
//   G = (C^beta / kappa) (sqrt(pi)/2) (2/z)^nu Gamma(nu + 1/2)(H_nu - Y_nu)(z),
//   kappa = sqrt((q'-1) alpha),  z = p/kappa,  nu = 1/2 - beta/(q'-1).
// Validated for q' in [1.3, 1.9] and real p > 0 with z <= 60. The Gamma
// weighted Struve/Neumann combination is evaluated through its stable
// order-limit form, so the removable singularities at 2 nu integer are fine;
// est_error carries any cancellation loss actually incurred.
inline ClosedFormResult qgauss_firstorder_G(ComplexPoint p, const QIndex& qprime,
                                            double alpha,
                                            std::optional<double> beta = std::nullopt) {
    if (!(alpha > 0.0))
        throw std::domain_error("qgauss_firstorder_G: requires alpha > 0");
    const double bval = beta.value_or(1.0);
    ClosedFormResult r;
    r.formula_id = beta.has_value() ? FormulaId::qgauss_firstorder_Gbeta
                                    : FormulaId::qgauss_firstorder_G;
    if (qprime.value() < 1.3 || qprime.value() > 1.9 || p.imag() != 0.0 ||
        !(p.real() > 0.0)) {
        r.supported = false;
        return r;
    }
    const double d = qprime.deficit();
    const double kappa = std::sqrt(d * alpha);
    const double z = p.real() / kappa;
    if (!(z <= 60.0)) {
        r.supported = false;
        return r;
    }
    const double nu = 0.5 - bval / d;
    if (std::abs(nu) > 50.0) {
        r.supported = false;
        return r;
    }
    try {
        auto sk = specfun::scaled_struve_k(nu, z);
        const double C = c_q(alpha, qprime);
        double pref = std::pow(C, bval) / kappa * 0.5 * specfun::sqrt_pi *
                      std::pow(2.0 / z, nu);
        r.value = pref * sk.value;
        r.est_error = std::abs(pref) * sk.est_error + std::abs(r.value) * 1e-14;
    } catch (const AccuracyError&) {
        r.supported = false;
    }
    return r;
}

}  // namespace qlaplace
