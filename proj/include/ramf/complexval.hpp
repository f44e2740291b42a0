#pragma once

#include "ramf/real.hpp"

namespace ramf {

// Complex value over Real. Log/pow/sqrt use the principal branch with
// Arg in (-pi, pi]; points on the negative real axis take Arg = +pi.
struct Complex {
    Real re;
    Real im;

    Complex() = default;
    explicit Complex(long prec) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long r, long prec) : re(r, prec), im(prec) {}
    Complex(const Real& r) : re(r), im(r.prec()) {}

    long prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_finite() const { return !re.is_inf() && !re.is_nan() && !im.is_inf() && !im.is_nan(); }
    // true when the value is exactly a real integer
    bool is_exact_integer() const { return im.is_zero() && re.is_integer(); }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
    friend Complex operator*(const Real& b, const Complex& a) { return a * b; }
    friend Complex operator*(const Complex& a, long b) { return {a.re * b, a.im * b}; }
    friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        if (d.is_zero()) throw domain_error("Complex: division by zero");
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Complex& operator+=(const Complex& b) {
        re += b.re;
        im += b.im;
        return *this;
    }
    Complex& operator-=(const Complex& b) {
        re -= b.re;
        im -= b.im;
        return *this;
    }
    friend bool operator==(const Complex& a, const Complex& b) {
        return a.re == b.re && a.im == b.im;
    }

    friend Complex conj(const Complex& a) { return {a.re, -a.im}; }
    friend Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
    friend Real abs(const Complex& a) {
        Real r(a.prec());
        mpfr_hypot(r.raw(), a.re.raw(), a.im.raw(), MPFR_RNDN);
        return r;
    }
    // Principal argument in (-pi, pi]; a signed zero imaginary part is treated as +0,
    // so the negative real axis lands on +pi.
    friend Real arg(const Complex& a) {
        if (a.is_zero()) throw domain_error("Complex: arg(0) undefined");
        if (a.im.is_zero()) {
            if (a.re.sign() > 0) return Real(0L, a.prec());
            return Real::pi(a.prec());
        }
        return atan2(a.im, a.re);
    }

    friend Complex exp(const Complex& a) {
        Real e = exp(a.re);
        long p = a.prec();
        Real s(p), c(p);
        mpfr_sin_cos(s.raw(), c.raw(), a.im.raw(), MPFR_RNDN);
        return {e * c, e * s};
    }
    friend Complex log(const Complex& a) {
        if (a.is_zero()) throw domain_error("Complex: log(0) undefined");
        Real half(a.prec());
        mpfr_log(half.raw(), norm(a).raw(), MPFR_RNDN);
        return {mul_2si(half, -1), arg(a)};
    }
    friend Complex sqrt(const Complex& a) {
        if (a.is_zero()) return Complex(a.prec());
        return exp(mul_half(log(a)));
    }

    // magnitude probe: floor(log2 |a|) within 1
    long exponent() const {
        long er = re.exponent(), ei = im.exponent();
        return er > ei ? er : ei;
    }

private:
    static Complex mul_half(const Complex& a) { return {mul_2si(a.re, -1), mul_2si(a.im, -1)}; }
};

// Principal-branch power base^e = exp(e log base).
inline Complex pow(const Complex& base, const Complex& e) {
    if (base.is_zero()) {
        if (e.is_zero()) throw domain_error("Complex: 0^0 undefined");
        if (e.im.is_zero() && e.re.sign() > 0) return Complex(base.prec());
        throw domain_error("Complex: 0 raised to a non-positive or complex power");
    }
    return exp(e * log(base));
}

// Integer power by repeated squaring (no branch cut involved).
inline Complex pow_si(const Complex& base, long e) {
    long p = base.prec();
    if (e == 0) return Complex(1L, p);
    if (base.is_zero()) {
        if (e > 0) return Complex(p);
        throw domain_error("Complex: zero base with negative integer power");
    }
    Complex acc(1L, p);
    Complex b = base;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1UL : static_cast<unsigned long>(e);
    while (n != 0) {
        if (n & 1UL) acc = acc * b;
        b = b * b;
        n >>= 1;
    }
    if (e < 0) return Complex(1L, p) / acc;
    return acc;
}

// i^e for integer e (exact quarter turns).
inline Complex i_pow(long e, long prec) {
    long m = ((e % 4) + 4) % 4;
    Complex r(prec);
    switch (m) {
        case 0: r.re = Real(1L, prec); break;
        case 1: r.im = Real(1L, prec); break;
        case 2: r.re = Real(-1L, prec); break;
        default: r.im = Real(-1L, prec); break;
    }
    return r;
}

inline Complex round_to(const Complex& a, long prec) {
    return {round_to(a.re, prec), round_to(a.im, prec)};
}

} // namespace ramf
