#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>

#include "ramf/errors.hpp"

namespace ramf {

// Arbitrary-precision real number. Thin RAII value wrapper over mpfr_t; every
// operation rounds to nearest at the precision of the widest operand.
class Real {
public:
    Real() : Real(64L) {}
    explicit Real(long prec) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_zero(v_, 1);
    }
    Real(long x, long prec) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Real(double x, long prec) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    Real(const mpz_class& x, long prec) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
    }
    Real(const mpq_class& x, long prec) {
        mpfr_init2(v_, check_prec(prec));
        mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
    }
    // Parses a decimal string ("-1.25", "3.5e-10").
    Real(const std::string& s, long prec);

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    long prec() const { return mpfr_get_prec(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    mpz_class to_mpz() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }

    // floor(log2 |x|) + 1 for nonzero finite x; magnitude probe for bounds.
    long exponent() const { return is_zero() ? Real::kZeroExp : mpfr_get_exp(v_); }
    static constexpr long kZeroExp = -(1L << 40);

    // Decimal string with round-trip fidelity at this precision (io helpers in real.cpp).
    std::string to_decimal() const;
    std::string to_decimal(size_t digits) const;

    static Real pos_infinity(long prec) {
        Real r(prec);
        mpfr_set_inf(r.v_, 1);
        return r;
    }
    static Real pi(long prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static Real euler_gamma(long prec) {
        Real r(prec);
        mpfr_const_euler(r.v_, MPFR_RNDN);
        return r;
    }
    static Real log2_const(long prec) {
        Real r(prec);
        mpfr_const_log2(r.v_, MPFR_RNDN);
        return r;
    }
    // 2^e exactly
    static Real pow2(long e, long prec) {
        Real r(1L, prec);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }
    static Real zeta_ui(unsigned long n, long prec) {
        Real r(prec);
        mpfr_zeta_ui(r.v_, n, MPFR_RNDN);
        return r;
    }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(widest(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(widest(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(widest(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(widest(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator+(const Real& a, long b) {
        Real r(a.prec());
        mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, long b) {
        Real r(a.prec());
        mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, long b) {
        Real r(a.prec());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, long b) {
        Real r(a.prec());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& b) {
        bump(b.prec());
        mpfr_add(v_, v_, b.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& b) {
        bump(b.prec());
        mpfr_sub(v_, v_, b.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(const Real& b) {
        bump(b.prec());
        mpfr_mul(v_, v_, b.v_, MPFR_RNDN);
        return *this;
    }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend int cmp_si(const Real& a, long b) { return mpfr_cmp_si(a.v_, b); }

private:
    static long check_prec(long prec) {
        if (prec < 2 || prec > (1L << 24))
            throw domain_error("Real: precision out of range: " + std::to_string(prec));
        return prec;
    }
    static long widest(const Real& a, const Real& b) {
        return a.prec() > b.prec() ? a.prec() : b.prec();
    }
    void bump(long p) {
        if (p > prec()) mpfr_prec_round(v_, p, MPFR_RNDN);
    }

    mpfr_t v_;
};

#define RAMF_REAL_UN_FN(name, mpfr_name)              \
    inline Real name(const Real& a) {                 \
        Real r(a.prec());                             \
        mpfr_name(r.raw(), a.raw(), MPFR_RNDN);       \
        return r;                                     \
    }
RAMF_REAL_UN_FN(abs, mpfr_abs)
RAMF_REAL_UN_FN(exp, mpfr_exp)
RAMF_REAL_UN_FN(log, mpfr_log)
RAMF_REAL_UN_FN(sqrt, mpfr_sqrt)
RAMF_REAL_UN_FN(sin, mpfr_sin)
RAMF_REAL_UN_FN(cos, mpfr_cos)
RAMF_REAL_UN_FN(sinh, mpfr_sinh)
RAMF_REAL_UN_FN(cosh, mpfr_cosh)
#undef RAMF_REAL_UN_FN

inline Real floor(const Real& a) {
    Real r(a.prec());
    mpfr_floor(r.raw(), a.raw());
    return r;
}
inline Real round_nearest(const Real& a) {
    Real r(a.prec());
    mpfr_round(r.raw(), a.raw());
    return r;
}

inline Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real pow(const Real& base, const Real& e) {
    Real r(std::max(base.prec(), e.prec()));
    mpfr_pow(r.raw(), base.raw(), e.raw(), MPFR_RNDN);
    return r;
}
inline Real pow_si(const Real& base, long e) {
    Real r(base.prec());
    mpfr_pow_si(r.raw(), base.raw(), e, MPFR_RNDN);
    return r;
}
inline Real mul_2si(const Real& a, long e) {
    Real r(a.prec());
    mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}
// Round a copy to the given precision.
inline Real round_to(const Real& a, long prec) {
    Real r(prec);
    mpfr_set(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

} // namespace ramf
