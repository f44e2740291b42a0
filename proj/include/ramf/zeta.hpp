#pragma once

#include "ramf/complexval.hpp"
#include "ramf/precision.hpp"

namespace ramf {

// zeta(n) for integer n >= 2.
Real riemann_zeta_int(long n, const PrecisionContext& ctx);

// zeta(s) for complex s (Euler-Maclaurin for Re s >= 1/2, functional equation
// below). Throws pole_error at/near s = 1.
Complex riemann_zeta(const Complex& s, long prec);

} // namespace ramf
