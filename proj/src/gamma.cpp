#include "ramf/gamma.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "ramf/arith.hpp"

namespace ramf {

namespace {

struct SpougeTable {
    long a = 0;
    std::vector<Real> c;  // c[0] = sqrt(2 pi), c[k] for k = 1 .. a-1
};

// Spouge coefficients sized for relative error below 2^-(wp+8); cached per
// precision bucket.
const SpougeTable& spouge_table(long wp) {
    static std::map<long, SpougeTable> cache;
    static std::mutex mu;
    long bucket = ((wp + 63) / 64) * 64;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(bucket);
    if (it != cache.end()) return it->second;

    long cp = bucket + 32;
    SpougeTable t;
    t.a = static_cast<long>(std::ceil((bucket + 16) / std::log2(2.0 * M_PI))) + 3;
    t.c.reserve(t.a);
    Real two_pi = mul_2si(Real::pi(cp), 1);
    t.c.push_back(sqrt(two_pi));
    Real sign(1L, cp);
    for (long k = 1; k < t.a; ++k) {
        // c_k = (-1)^(k-1) (a-k)^(k-1/2) e^(a-k) / (k-1)!
        Real ak(t.a - k, cp);
        Real e = exp((Real(2 * k - 1, cp) / 2) * log(ak) + ak);
        t.c.push_back(sign * e / Real(factorial(k - 1), cp));
        sign = -sign;
    }
    return cache.emplace(bucket, std::move(t)).first->second;
}

// Spouge core, valid for Re z >= 1/2.
Complex gamma_right(const Complex& z, long wp) {
    const SpougeTable& t = spouge_table(wp);
    Complex zm1 = z - Complex(1L, wp);
    Complex acc(t.c[0]);
    for (long k = 1; k < t.a; ++k) acc += Complex(t.c[k]) / (zm1 + Complex(k, wp));
    Complex base = zm1 + Complex(t.a, wp);
    Complex half(Real(1L, wp) / 2, Real(0L, wp));
    return exp((zm1 + half) * log(base) - base) * acc;
}

Complex complex_sin(const Complex& z) {
    long p = z.prec();
    Real s(p), c(p);
    mpfr_sin_cos(s.raw(), c.raw(), z.re.raw(), MPFR_RNDN);
    return {s * cosh(z.im), c * sinh(z.im)};
}

} // namespace

Complex gamma(const Complex& z, long prec) {
    long wp = prec + 64;
    if (!z.is_finite()) throw domain_error("gamma: non-finite argument");
    if (z.is_exact_integer()) {
        if (z.re.sign() <= 0) throw pole_error("gamma: pole at nonpositive integer");
        if (cmp_si(z.re, 40000) < 0)
            return Complex(Real(factorial(z.re.to_long() - 1), prec));
    }
    Complex zz = {round_to(z.re, wp), round_to(z.im, wp)};
    if (cmp_si(mul_2si(zz.re, 1), 1) >= 0)  // Re z >= 1/2
        return round_to(gamma_right(zz, wp), prec);
    // reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
    Real pi = Real::pi(wp);
    Complex s = complex_sin(Complex(pi) * zz);
    if (s.is_zero()) throw pole_error("gamma: pole at nonpositive integer");
    Complex g = gamma_right(Complex(1L, wp) - zz, wp);
    return round_to(Complex(pi) / (s * g), prec);
}

namespace {

// Gamma(0, z) = -euler_gamma - Log z - sum_{k>=1} (-z)^k / (k k!)
Complex gamma0_seed(const Complex& z, long wp) {
    Complex acc(wp);
    Complex p(1L, wp);
    Complex mz = -z;
    double az = abs(z).to_double();
    long cap = static_cast<long>(40.0 * az) + 8 * wp + 400;
    Real stop = Real::pow2(-wp - 8, 64);
    for (long k = 1; k <= cap; ++k) {
        p = p * mz / Real(k, wp);
        acc += p / Real(k, wp);
        if (k > az + 2 && abs(p) < stop * (abs(acc) + 1)) {
            return -Real::euler_gamma(wp) - log(z) - acc;
        }
    }
    throw numeric_failure("upper_incomplete_gamma: Gamma(0, z) series did not converge", -wp);
}

// Downward recurrence Gamma(r-1, z) = (Gamma(r, z) - z^(r-1) e^-z) / (r-1),
// from Gamma(0, z) to Gamma(n, z) with n <= 0.
Complex gamma_upper_nonpositive_int(long n, const Complex& z, long wp) {
    Complex g = gamma0_seed(z, wp);
    Complex emz = exp(-z);
    Complex zp = Complex(1L, wp) / z;  // z^(m-1) at m = 0
    for (long m = 0; m > n; --m) {
        g = (g - zp * emz) / Real(m - 1, wp);
        zp = zp / z;
    }
    return g;
}

// Gamma(n, z) = (n-1)! e^-z sum_{k=0}^{n-1} z^k / k! for n >= 1.
Complex gamma_upper_positive_int(long n, const Complex& z, long wp) {
    Complex term(1L, wp);
    Complex acc(1L, wp);
    for (long k = 1; k < n; ++k) {
        term = term * z / Real(k, wp);
        acc += term;
    }
    return Real(factorial(n - 1), wp) * exp(-z) * acc;
}

// Gamma(r) - z^r sum_{k>=0} (-z)^k / (k! (r+k)); requires r not a nonpositive integer.
Complex gamma_upper_series(const Complex& r, const Complex& z, long wp) {
    Complex acc = Complex(1L, wp) / r;
    Complex p(1L, wp);
    Complex mz = -z;
    double az = abs(z).to_double();
    long cap = static_cast<long>(40.0 * az) + 8 * wp + 400;
    Real stop = Real::pow2(-wp - 8, 64);
    for (long k = 1; k <= cap; ++k) {
        p = p * mz / Real(k, wp);
        acc += p / (r + Complex(k, wp));
        if (k > az + 2 && abs(p) < stop * (abs(acc) + 1)) {
            return gamma(r, wp) - pow(z, r) * acc;
        }
    }
    throw numeric_failure("upper_incomplete_gamma: power series did not converge", -wp);
}

// Legendre continued fraction via modified Lentz; valid for Re z >= 0, best when
// |z| exceeds |r|. ok=false signals slow convergence (caller falls back).
Complex gamma_upper_cf(const Complex& r, const Complex& z, long wp, bool& ok) {
    Complex tiny(Real::pow2(-2 * wp, wp));
    Real stop = Real::pow2(-wp - 6, 64);
    Complex one(1L, wp);
    Complex b = z + one - r;
    if (b.is_zero()) b = tiny;
    Complex d = one / b;
    Complex h = d;
    Complex c(Real::pow2(2 * wp, wp));
    ok = false;
    for (long j = 1; j <= 200000; ++j) {
        Complex aj = Real(-j, wp) * (Complex(j, wp) - r);
        b += Complex(2L, wp);
        d = b + aj * d;
        if (d.is_zero()) d = tiny;
        d = one / d;
        c = b + aj / c;
        if (c.is_zero()) c = tiny;
        Complex delta = c * d;
        h = h * delta;
        if (abs(delta - one) < stop) {
            ok = true;
            break;
        }
    }
    if (!ok) return Complex(wp);
    return exp(-z) * pow(z, r) * h;
}

} // namespace

Complex upper_incomplete_gamma(const Complex& r, const Complex& z, const PrecisionContext& ctx) {
    if (z.is_zero())
        throw domain_error("upper_incomplete_gamma: z must be nonzero");
    if (!z.is_finite() || !r.is_finite())
        throw domain_error("upper_incomplete_gamma: non-finite argument");

    const long out = ctx.working_bits();
    const long base = ctx.working_bits();
    const double az = abs(z).to_double();
    const double ar = abs(r).to_double();
    if (az > 60000.0)
        throw numeric_failure("upper_incomplete_gamma: |z| too large for guarded evaluation", 0.0);

    const bool int_r = r.is_exact_integer() && cmp_si(abs(r.re), 100000) < 0;
    const bool cf_region = z.re.sign() >= 0 && az > std::max(1.0, ar);

    if (cf_region) {
        long wp = base + 32;
        Complex zz = {round_to(z.re, wp), round_to(z.im, wp)};
        Complex rr = {round_to(r.re, wp), round_to(r.im, wp)};
        bool ok = false;
        Complex g = gamma_upper_cf(rr, zz, wp, ok);
        if (ok) return round_to(g, out);
        // fall through to guarded series
    }

    long guard = static_cast<long>(3.0 * az) + 64;
    if (int_r) {
        long n = r.re.to_long();
        long wp = base + guard + 2 * std::labs(n);
        Complex zz = {round_to(z.re, wp), round_to(z.im, wp)};
        Complex g = n >= 1 ? gamma_upper_positive_int(n, zz, wp)
                           : gamma_upper_nonpositive_int(n, zz, wp);
        return round_to(g, out);
    }
    long wp = base + guard;
    Complex zz = {round_to(z.re, wp), round_to(z.im, wp)};
    Complex rr = {round_to(r.re, wp), round_to(r.im, wp)};
    return round_to(gamma_upper_series(rr, zz, wp), out);
}

} // namespace ramf
