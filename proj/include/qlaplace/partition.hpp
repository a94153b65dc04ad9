#pragma once

// The q-partition function: the unilateral q-Laplace transform of a density
// of states f(u), with the transform variable playing the role of inverse
// temperature.

#include <stdexcept>

#include "qlaplace/transform.hpp"

namespace qlaplace {

// Density of states: nonnegative on [0, inf), zero for u < 0. Restricted to
// the catalog kinds that make sense as spectra. q_dependent marks densities
// whose shape follows the ambient index (the q-exponential density).
struct DensityOfStates {
    FunctionSpec spec;
    bool q_dependent;

    static DensityOfStates make(FunctionSpec f) {
        switch (f.kind()) {
            case FunctionKind::constant:
            case FunctionKind::heaviside_step:
            case FunctionKind::q_exp_density:
            case FunctionKind::tabulated:
                break;
            default:
                throw std::domain_error(
                    "DensityOfStates: kind not admissible as a density of states");
        }
        if (f.kind() == FunctionKind::heaviside_step && f.reflected())
            throw std::domain_error("DensityOfStates: density must vanish for u < 0");
        if (f.kind() == FunctionKind::tabulated && f.support_lo() < 0.0)
            throw std::domain_error("DensityOfStates: density must vanish for u < 0");
        bool qdep = f.kind() == FunctionKind::q_exp_density;
        return DensityOfStates{std::move(f), qdep};
    }
};

// Z(B, q) = [window] H[Re B] int_0^inf f(u) {1-(1-q) B u f(u)^{q-1}}^{1/(1-q)} du.
// The constant density reproduces the step transform 1/((2-q) B).
inline TransformValue q_partition(const DensityOfStates& dos, ComplexPoint B,
                                  const QIndex& q, const QuadratureConfig& cfg = {}) {
    return q_laplace_unilateral(dos.spec, B, q, cfg);
}

// Z_PR(B, q): the singular-transform version with the q-dependent density
// f_q inside the kernel. For the q-exponential density the integrand reduces
// elementarily to [1 + (q-1)(alpha + B) u]^{1/(1-q)}, so the value is
// 1/((2-q)(B + alpha)); the quadrature engine is the authority for this
// fixture (note the (2-q) factor, which a naive 1/(B + alpha) guess omits).
inline TransformValue q_partition_pr(const DensityOfStates& dos, ComplexPoint B,
                                     const QIndex& q, const QuadratureConfig& cfg = {}) {
    if (!dos.q_dependent)
        throw std::domain_error("q_partition_pr: density is not q-dependent");
    return q_laplace_unilateral(dos.spec, B, q, cfg);
}

}  // namespace qlaplace
