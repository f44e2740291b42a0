#pragma once

#include "ramf/complexval.hpp"
#include "ramf/precision.hpp"

namespace ramf {

// Complete Gamma function for complex z (Spouge's approximation plus reflection).
// Throws pole_error at nonpositive integers.
Complex gamma(const Complex& z, long prec);

// Upper incomplete Gamma(r, z) = int_z^inf e^-t t^(r-1) dt, analytically continued
// in both variables on the principal branch: Arg z in (-pi, pi], with the negative
// real axis taking Arg = +pi. z must be nonzero; r is unrestricted, nonpositive
// integers included (downward recurrence from Gamma(0, z)).
//
// Route selection: continued fraction for Re z >= 0 with |z| > max(1, |r|),
// otherwise the defining power series with cancellation guard bits scaled to |z|.
Complex upper_incomplete_gamma(const Complex& r, const Complex& z, const PrecisionContext& ctx);

} // namespace ramf
