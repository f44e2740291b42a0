#pragma once

#include <functional>

#include "ramf/complexval.hpp"
#include "ramf/precision.hpp"

namespace ramf {

struct QuadratureResult {
    Complex value;
    Real error_bound;
    long evaluations = 0;
};

// Integrates f over [t_lo, t_hi] with an adaptive Gauss-Legendre scheme whose
// panel error estimate compares each panel against its two halves. t_hi may be
// +infinity, in which case the integral is truncated at max(t_lo + 4, ctx.y_cutoff)
// and the tail is bounded from the integrand's sampled exponential decay rate
// (integrands without eventual exponential decay are rejected).
//
// abs_tol defaults to ctx.quad_tol; failure to meet it raises numeric_failure
// carrying the bound that was achieved.
QuadratureResult integrate_vertical_line(const std::function<Complex(const Real&)>& f,
                                         const Real& t_lo, const Real& t_hi,
                                         const PrecisionContext& ctx,
                                         const Real* abs_tol = nullptr);

} // namespace ramf
