#include "ramf/zeta.hpp"

#include <cmath>

#include "ramf/arith.hpp"
#include "ramf/gamma.hpp"

namespace ramf {

Real riemann_zeta_int(long n, const PrecisionContext& ctx) {
    if (n < 2) throw domain_error("riemann_zeta_int: argument must be >= 2");
    return Real::zeta_ui(static_cast<unsigned long>(n), ctx.precision_bits);
}

namespace {

Complex complex_sin(const Complex& z) {
    long p = z.prec();
    Real s(p), c(p);
    mpfr_sin_cos(s.raw(), c.raw(), z.re.raw(), MPFR_RNDN);
    return {s * cosh(z.im), c * sinh(z.im)};
}

// Euler-Maclaurin, reliable for Re s >= 1/2:
//   zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
//           + sum_{k>=1} B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
Complex zeta_em(const Complex& s, long wp) {
    double ims = std::fabs(s.im.to_double());
    long n0 = std::max<long>(24, static_cast<long>(0.28 * wp + 0.65 * ims) + 4);
    Real stop = Real::pow2(-wp - 8, 64);
    for (int attempt = 0; attempt < 4; ++attempt, n0 *= 2) {
        Complex acc(1L, wp);
        for (long n = 2; n < n0; ++n) acc += exp(-(s * log(Complex(Real(n, wp)))));
        Real logN = log(Real(n0, wp));
        Complex Nms = exp(-(s * Complex(logN)));  // N^-s
        acc += Nms * Real(n0, wp) / (s - Complex(1L, wp));
        acc += Complex(mul_2si(Nms.re, -1), mul_2si(Nms.im, -1));
        // correction terms T_k = B_2k/(2k)! (s)_{2k-1} N^(-s-2k+1)
        Complex term = Nms / Real(n0, wp);
        Complex rising = s;
        Real n2 = Real(n0, wp) * Real(n0, wp);
        Real prev_mag = Real::pow2(wp, 64);
        bool done = false;
        Complex corr(wp);
        for (long k = 1; k <= 4 * wp; ++k) {
            if (k > 1) {
                rising = rising * (s + Complex(2 * k - 3, wp)) * (s + Complex(2 * k - 2, wp));
                term = term / n2;
            }
            Complex t = Complex(Real(bernoulli(2 * k), wp) / Real(factorial(2 * k), wp)) * rising * term;
            corr += t;
            Real mag = abs(t);
            if (mag < stop * (abs(acc + corr) + 1)) {
                done = true;
                break;
            }
            if (mag > prev_mag) break;  // divergence onset: restart with larger N
            prev_mag = mag;
        }
        if (done) return acc + corr;
    }
    throw numeric_failure("riemann_zeta: Euler-Maclaurin did not converge", 0.0);
}

} // namespace

Complex riemann_zeta(const Complex& s, long prec) {
    long wp = prec + 48;
    if (!s.is_finite()) throw domain_error("riemann_zeta: non-finite argument");
    if (abs(s - Complex(1L, wp)) < Real::pow2(-prec / 2, 64))
        throw pole_error("riemann_zeta: pole at s = 1");
    if (s.is_exact_integer() && s.re.sign() > 0 && cmp_si(s.re, 2) >= 0 &&
        cmp_si(s.re, 1000000) < 0)
        return Complex(Real::zeta_ui(static_cast<unsigned long>(s.re.to_long()), prec));

    Complex ss = {round_to(s.re, wp), round_to(s.im, wp)};
    if (cmp_si(mul_2si(ss.re, 1), 1) >= 0)  // Re s >= 1/2
        return round_to(zeta_em(ss, wp), prec);

    // zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    Complex one(1L, wp);
    Real pi = Real::pi(wp);
    Complex pref = exp(ss * Complex(Real::log2_const(wp)) + (ss - one) * Complex(log(pi)));
    Complex sine = complex_sin(ss * Complex(mul_2si(pi, -1)));
    Complex g = gamma(one - ss, wp);
    return round_to(pref * sine * g * zeta_em(one - ss, wp), prec);
}

} // namespace ramf
