#pragma once

// q-deformed elementary functions and the integral-transform kernel. These
// are the numerical vocabulary of the whole library: the deformed
// exponential e_q(u) = [1 + (1-q)u]^{1/(1-q)}, its inverse, the transform
// kernel and the q-Gaussian density.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "qlaplace/errors.hpp"
#include "qlaplace/specfun.hpp"

namespace qlaplace {

using complex = std::complex<double>;

// The transform variable p (and the inverse-temperature variable in the
// partition-function role).
using ComplexPoint = std::complex<double>;

// Entropic index constrained to 1 <= q < 2. The value 1 is the distinguished
// classical-limit marker: deformed powers branch to plain exp/log there
// instead of taking a numerical limit.
class QIndex {
  public:
    explicit QIndex(double q) : q_(q) {
        if (!(q >= 1.0) || !(q < 2.0))
            throw std::domain_error("QIndex: q must lie in [1, 2), got " +
                                    std::to_string(q));
    }
    static QIndex classical() { return QIndex(1.0); }
    static bool admissible(double q) { return q >= 1.0 && q < 2.0; }

    double value() const { return q_; }
    bool is_classical() const { return q_ == 1.0; }
    double deficit() const { return q_ - 1.0; }  // q - 1

  private:
    double q_;
};

namespace detail {

// log(1 + z) without cancellation for small |z|; valid for 1 + z != 0.
inline complex log1p_c(complex z) {
    double a = z.real(), b = z.imag();
    double m = 2.0 * a + a * a + b * b;  // |1+z|^2 - 1
    if (m <= -1.0) {
        if (a == -1.0 && b == 0.0)
            throw std::domain_error("log1p_c: argument -1");
        return std::log(complex(1.0) + z);
    }
    return complex(0.5 * std::log1p(m), std::atan2(b, 1.0 + a));
}

// exp(z) - 1 without cancellation for small |z|.
inline complex expm1_c(complex z) {
    if (std::abs(z) > 0.25) return std::exp(z) - 1.0;
    complex sum = z, term = z;
    for (int k = 2; k < 24; ++k) {
        term *= z / static_cast<double>(k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace detail

// Deformed exponential e_q(u) = [1 + (1-q)u]^{1/(1-q)} under the principal
// branch; exp(u) at q = 1. Throws at the pole 1 + (1-q)u = 0.
inline complex q_exp(complex u, const QIndex& q) {
    if (q.is_classical()) return std::exp(u);
    const double one_m_q = 1.0 - q.value();
    complex w = one_m_q * u;
    if (w == complex(-1.0, 0.0))
        throw std::domain_error("q_exp: pole, 1 + (1-q)u = 0");
    return std::exp(detail::log1p_c(w) / one_m_q);
}

// Functional inverse of q_exp: q_log(v) = (v^{1-q} - 1)/(1-q); log(v) at
// q = 1. Requires v != 0.
inline complex q_log(complex v, const QIndex& q) {
    if (v == complex(0.0, 0.0)) throw std::domain_error("q_log: argument 0");
    if (q.is_classical()) return std::log(v);
    const double one_m_q = 1.0 - q.value();
    return detail::expm1_c(one_m_q * std::log(v)) / one_m_q;
}

// Transform kernel {1 - (1-q) p x f(x)^{q-1}}^{1/(1-q)}, equal to
// q_exp(-p x f(x)^{q-1}, q). At q = 1 this is exp(-p x). The f(x) = 0 case
// is the continuity value 1 (the integrand f * kernel vanishes there anyway).
inline complex kernel(double x, ComplexPoint p, const QIndex& q, double fx) {
    if (!(fx >= 0.0)) throw std::domain_error("kernel: requires f(x) >= 0");
    if (q.is_classical()) return std::exp(-p * x);
    if (fx == 0.0 || x == 0.0) return complex(1.0, 0.0);
    const double w = std::pow(fx, q.deficit());
    const complex base_shift = (q.value() - 1.0) * p * x * w;  // base = 1 + this
    complex base = 1.0 + base_shift;
    if (base.imag() == 0.0 && base.real() <= 0.0)
        throw std::domain_error("kernel: base on the branch cut");
    return q_exp(-p * x * w, q);
}

// q-Gaussian parameters: width alpha, its own index q', and the
// normalization constant making the density integrate to 1 over the line.
struct QGaussianParams {
    double alpha;
    QIndex qprime;
    double c_q;
};

// Normalization constant of the q-Gaussian:
//   sqrt((q'-1) alpha) / B(1/2, 1/(q'-1) - 1/2)   for q' > 1,
//   sqrt(alpha / pi)                              at q' = 1.
inline double c_q(double alpha, const QIndex& qprime) {
    if (!(alpha > 0.0)) throw std::domain_error("c_q: requires alpha > 0");
    if (qprime.is_classical()) return std::sqrt(alpha / specfun::pi);
    const double s = 1.0 / qprime.deficit();
    if (!(s - 0.5 > 0.0))
        throw std::domain_error("c_q: Beta argument 1/(q'-1) - 1/2 <= 0");
    double b = specfun::beta_fn(0.5, s - 0.5).value.real();
    return std::sqrt(qprime.deficit() * alpha) / b;
}

inline QGaussianParams make_q_gaussian(double alpha, const QIndex& qprime) {
    return QGaussianParams{alpha, qprime, c_q(alpha, qprime)};
}

// q-Gaussian density C_{q'} [1 + (q'-1) alpha x^2]^{1/(1-q')}; the classical
// Gaussian sqrt(alpha/pi) exp(-alpha x^2) at q' = 1.
inline double q_gaussian(double x, const QGaussianParams& params) {
    if (params.qprime.is_classical())
        return params.c_q * std::exp(-params.alpha * x * x);
    const double d = params.qprime.deficit();
    return params.c_q * std::pow(1.0 + d * params.alpha * x * x, -1.0 / d);
}

}  // namespace qlaplace
