#include "ramf/lfunctions.hpp"

#include <algorithm>
#include <cmath>

#include "ramf/errors.hpp"
#include "ramf/gamma.hpp"
#include "ramf/quadrature.hpp"
#include "ramf/zeta.hpp"

namespace ramf {

namespace {

void add_row(std::map<std::pair<long, long>, Complex>& rows, long j, long mu, const Complex& c) {
    auto [it, fresh] = rows.emplace(std::make_pair(j, mu), c);
    if (!fresh) it->second += c;
}

void add_const_row(std::map<long, Complex>& rows, long j, const Complex& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = rows.emplace(j, c);
    if (!fresh) it->second += c;
}

} // namespace

LSeriesData LSeriesData::from_eigen(const EigenExpansion& f, const PrecisionContext& ctx) {
    LSeriesData d;
    d.w = f.weights();
    for (const auto& [key, c] : f.hol()) add_row(d.rows, key.first, key.second, c);
    for (const auto& [key, c] : f.antihol()) add_row(d.rows, key.first, key.second, c);
    add_const_row(d.const_rows, f.k0(), f.const_a());
    add_const_row(d.const_rows, 1 - d.w.r - d.w.s - f.k0(), f.const_b());
    const long k0 = f.k0(), rs = d.w.r + d.w.s;
    for (long p : {-k0, -k0 + 1, k0 + rs - 1, k0 + rs})
        d.poles.emplace_back(Real(p, ctx.precision_bits), Real(ctx.precision_bits));
    return d;
}

LSeriesData LSeriesData::from_bigraded(const BigradedExpansion& f, const PrecisionContext& ctx) {
    LSeriesData d;
    d.w = f.weights();
    for (const auto& [key, c] : f.terms()) {
        long mu = key.m + key.n;
        if (mu == 0)
            add_const_row(d.const_rows, key.j, c);
        else
            add_row(d.rows, key.j, mu, c);
    }
    const long rs = d.w.r + d.w.s;
    for (const auto& [j, c] : d.const_rows) {
        (void)c;
        d.poles.emplace_back(Real(-j, ctx.precision_bits), Real(ctx.precision_bits));
        d.poles.emplace_back(Real(rs + j, ctx.precision_bits), Real(ctx.precision_bits));
    }
    return d;
}

LSeriesData LSeriesData::from_weakly_holomorphic(const QExpansion& f, const PrecisionContext& ctx) {
    const long wp = ctx.working_bits();
    LSeriesData d;
    d.w = Weights{f.weight(), 0};
    for (const auto& [m, c] : f.coeffs()) {
        if (m == 0) continue;
        add_row(d.rows, 0, m, Complex(Real(c, wp), Real(wp)));
    }
    mpq_class b = f.valid_to() >= 0 ? f.coefficient(0) : mpq_class(0);
    if (b != 0) {
        add_const_row(d.const_rows, 0, Complex(Real(b, wp), Real(wp)));
        d.poles.emplace_back(Real(0L, ctx.precision_bits), Real(ctx.precision_bits));
        d.poles.emplace_back(Real(f.weight(), ctx.precision_bits), Real(ctx.precision_bits));
    }
    return d;
}

LValue l_star(const LSeriesData& data, const Complex& w, const PrecisionContext& ctx) {
    for (const auto& p : data.poles) {
        if (abs(w - p) < ctx.series_tol * 10L) {
            // Residue structure: P(w) contributes -a_j at w = -j and
            // i^(r-s) a_j at w = r+s+j for each constant row a_j y^j.
            std::string what = "l_star evaluated too close to the admissible pole w = " +
                               p.re.to_decimal(8);
            const long rs = data.w.r + data.w.s;
            for (const auto& [j, a] : data.const_rows) {
                if (abs(p - Complex(Real(-j, 64), Real(64))) < Real::pow2(-16, 64))
                    what += "; residue -a_j with a_j = " + a.re.to_decimal(8);
                if (abs(p - Complex(Real(rs + j, 64), Real(64))) < Real::pow2(-16, 64))
                    what += "; residue i^(r-s) a_j with a_j = " + a.re.to_decimal(8);
            }
            throw pole_error(what);
        }
    }

    // Guard bits for the exponentially large incomplete-gamma values attached to
    // negative-frequency rows (size ~ e^|2 pi mu|).
    long mu_neg = 0, mu_max = 0;
    for (const auto& [key, c] : data.rows) {
        (void)c;
        mu_neg = std::min(mu_neg, key.second);
        mu_max = std::max(mu_max, std::labs(key.second));
    }
    const long guard = static_cast<long>(std::ceil(-mu_neg * 2 * 3.1416 * 1.4427)) + 64;
    const long wp = ctx.working_bits() + guard;
    const PrecisionContext work_ctx(wp, ctx.q_truncation);

    const Real two_pi = mul_2si(Real::pi(wp), 1);
    const long rs = data.w.r + data.w.s;
    const Complex phase = i_pow(data.w.r - data.w.s, wp);
    const Complex ww = round_to(w, wp);

    Complex acc(wp);
    Real max_term(64);
    Real t_last(64);  // largest |term| among rows at the outermost frequency
    long n_terms = 0;
    for (const auto& [key, c] : data.rows) {
        const auto [j, mu] = key;
        const Complex z(two_pi * mu, Real(wp));
        const Complex arg1 = ww + Complex(Real(j, wp), Real(wp));
        const Complex arg2 = Complex(Real(rs + j, wp), Real(wp)) - ww;
        Complex term = c * (upper_incomplete_gamma(arg1, z, work_ctx) / pow(z, arg1));
        term += phase * c * (upper_incomplete_gamma(arg2, z, work_ctx) / pow(z, arg2));
        acc += term;
        n_terms += 2;
        Real sz = round_to(abs(term), 64);
        if (sz > max_term) max_term = sz;
        if (std::labs(mu) == mu_max && sz > t_last) t_last = sz;
    }

    for (const auto& [j, a] : data.const_rows) {
        const Complex den1 = ww - Complex(Real(rs + j, wp), Real(wp));
        const Complex den2 = ww + Complex(Real(j, wp), Real(wp));
        Complex term = a * (phase / den1) - a / den2;
        acc += term;
        n_terms += 2;
        Real sz = round_to(abs(term), 64);
        if (sz > max_term) max_term = sz;
    }

    // Tail: remaining frequencies |mu| > mu_max decay by ~ exp(-2 pi) per step,
    // slowed by polynomial coefficient growth of degree ~ r + s + 12.
    Real tail(64);
    if (mu_max > 0 && !t_last.is_zero()) {
        const double g = static_cast<double>(rs) + 12.0;
        const double rho = std::exp(-2.0 * 3.141592653589793 + g / static_cast<double>(mu_max));
        if (rho >= 0.5) throw truncation_error("l_star: too few frequencies for a tail bound");
        tail = t_last * Real(rho / (1.0 - rho), 64);
    }
    const Real rounding = max_term * Real(static_cast<double>(n_terms + 4), 64) *
                          Real::pow2(-(wp - 8), 64);

    LValue out;
    out.w = round_to(w, ctx.precision_bits);
    out.value = round_to(acc, ctx.precision_bits);
    out.error_bound = round_to(tail + rounding + abs(out.value - round_to(acc, wp)), 64);
    return out;
}

LValue l_star(const EigenExpansion& f, const Complex& w, const PrecisionContext& ctx) {
    return l_star(LSeriesData::from_eigen(f, ctx), w, ctx);
}

LValue l_star(const BigradedExpansion& f, const Complex& w, const PrecisionContext& ctx) {
    return l_star(LSeriesData::from_bigraded(f, ctx), w, ctx);
}

LValue l_star_weakly(const QExpansion& f, const Complex& w, const PrecisionContext& ctx) {
    return l_star(LSeriesData::from_weakly_holomorphic(f, ctx), w, ctx);
}

Complex constant_term_poles(long k0, long r, long s, const Complex& a, const Complex& b,
                            const Complex& w) {
    const long wp = std::max({w.prec(), a.prec(), b.prec(), 64L});
    const Complex phase = i_pow(r - s, wp);
    const Complex ww = round_to(w, wp);
    Complex acc(wp);

    struct Term {
        const Complex& coeff;
        bool phased;
        int sign;
        long shift;  // denominator w + shift
        const char* name;
    };
    const Term terms[] = {
        {a, true, +1, -k0 - r - s, "i^(r-s) a/(w-k0-r-s)"},
        {b, true, +1, k0 - 1, "i^(r-s) b/(w+k0-1)"},
        {a, false, -1, k0, "a/(w+k0)"},
        {b, false, -1, -k0 - r - s + 1, "b/(w-k0-r-s+1)"},
    };
    for (const Term& t : terms) {
        if (t.coeff.is_zero()) continue;
        const Complex den = ww + Complex(Real(t.shift, wp), Real(wp));
        if (den.is_zero())
            throw pole_error(std::string("constant_term_poles: term ") + t.name +
                             " diverges at this w");
        Complex val = round_to(t.coeff, wp) / den;
        if (t.phased) val = phase * val;
        if (t.sign < 0)
            acc -= val;
        else
            acc += val;
    }
    return acc;
}

LValue l_star_eisenstein_closed(long r, long s, const Complex& w, const PrecisionContext& ctx) {
    if (r < 1 || s < 1 || (r - s) % 2 != 0)
        throw domain_error("l_star_eisenstein_closed: invalid weights");
    const long wp = ctx.working_bits() + 32;
    const long rs = r + s, h2 = rs / 2;
    const Complex ww = round_to(w, wp);
    const Real two_pi = mul_2si(Real::pi(wp), 1);

    // Pole proximity: zeta(w+1) at w = 0, zeta(w-r-s) at w = r+s+1, and
    // Gamma(j+w) at nonpositive integers for every j with a surviving alpha.
    const Real tol = ctx.series_tol * 10L;
    auto near_int = [&](long p) { return abs(w - Complex(Real(p, wp), Real(wp))) < tol; };
    if (near_int(0)) throw pole_error("l_star_eisenstein_closed: zeta(w+1) pole at w = 0");
    if (near_int(rs + 1))
        throw pole_error("l_star_eisenstein_closed: zeta(w-r-s) pole at w = r+s+1");

    Complex bracket(wp);
    for (int side = 0; side < 2; ++side) {
        const int sign = side == 0 ? 1 : -1;
        const long j_hi = side == 0 ? -s : -r;
        for (long j = -rs; j <= j_hi; ++j) {
            mpq_class alpha = alpha_pm(r, s, -j - h2, sign);
            if (alpha == 0) continue;
            if (abs(w.im) < tol && w.re < Real(1 - j, wp)) {
                Real frac = w.re - floor(w.re);
                if (frac < tol || Real(1L, 64) - frac < tol)
                    throw pole_error("l_star_eisenstein_closed: Gamma(j+w) pole");
            }
            Complex g = gamma(ww + Complex(Real(j, wp), Real(wp)), wp);
            bracket += g * Complex(mul_2si(Real(alpha, wp), j), Real(wp));
        }
    }

    const PrecisionContext work_ctx(wp, ctx.q_truncation);
    const Complex z1 = riemann_zeta(ww + Complex(Real(1L, wp), Real(wp)), wp);
    const Complex z2 = riemann_zeta(ww - Complex(Real(rs, wp), Real(wp)), wp);
    // (2 pi)^(r+s-w) = exp((r+s-w) log(2 pi))
    const Complex tp = exp((Complex(Real(rs, wp), Real(wp)) - ww) * Complex(log(two_pi), Real(wp)));
    const Real front =
        Real::pi(wp) / (Real(factorial(std::max(r, s)), wp) * riemann_zeta_int(rs + 2, work_ctx));
    const Complex val = z1 * z2 * tp * bracket * front;

    LValue out;
    out.w = round_to(w, ctx.precision_bits);
    out.value = round_to(val, ctx.precision_bits);
    out.error_bound = round_to((abs(val) + Real::pow2(-wp, wp)) * Real::pow2(-(wp - 48), wp) +
                                   abs(out.value - val),
                               64);
    return out;
}

Real functional_equation_residual(const LSeriesData& data, const Complex& w,
                                  const PrecisionContext& ctx) {
    const long wp = ctx.working_bits();
    const Complex phase = i_pow(data.w.r - data.w.s, wp);
    const Complex refl = Complex(Real(data.w.r + data.w.s, wp), Real(wp)) - round_to(w, wp);
    LValue lhs = l_star(data, w, ctx);
    LValue rhs = l_star(data, refl, ctx);
    return abs(lhs.value - phase * rhs.value);
}

Real functional_equation_residual(const EigenExpansion& f, const Complex& w,
                                  const PrecisionContext& ctx) {
    return functional_equation_residual(LSeriesData::from_eigen(f, ctx), w, ctx);
}

Real functional_equation_residual(const QExpansion& f, const Complex& w,
                                  const PrecisionContext& ctx) {
    return functional_equation_residual(LSeriesData::from_weakly_holomorphic(f, ctx), w, ctx);
}

LValue l_star_quadrature_oracle(const QExpansion& f, const Complex& w,
                                const PrecisionContext& ctx) {
    if (f.is_zero()) throw domain_error("quadrature oracle: zero expansion");
    if (f.min_exponent() < 1)
        throw domain_error("quadrature oracle: requires a holomorphic cusp expansion");
    const long k = f.weight();
    const long wp = ctx.working_bits();
    const Complex ww = round_to(w, wp);
    const Complex phase = i_pow(k, wp);
    const Complex k_minus_w = Complex(Real(k, wp), Real(wp)) - ww;

    std::vector<std::pair<long, Real>> coeffs;
    Real max_coeff(64);
    for (const auto& [m, c] : f.coeffs()) {
        coeffs.emplace_back(m, Real(c, wp));
        Real a = round_to(abs(Real(c, wp)), 64);
        if (a > max_coeff) max_coeff = a;
    }

    const Real two_pi = mul_2si(Real::pi(wp), 1);
    auto integrand = [&](const Real& t) {
        Real x = exp(-(two_pi * t));
        Complex val(wp);
        long last = 0;
        Real xp(Real(1L, wp));
        for (const auto& [m, a] : coeffs) {
            for (long i = last; i < m; ++i) xp *= x;
            last = m;
            val.re += a * xp;
        }
        Complex lt(log(t), Real(wp));
        return val * (exp((ww - Complex(Real(1L, wp), Real(wp))) * lt) +
                      phase * exp((k_minus_w - Complex(Real(1L, wp), Real(wp))) * lt));
    };

    QuadratureResult q =
        integrate_vertical_line(integrand, Real(1L, wp), Real::pos_infinity(wp), ctx);

    // Coefficients beyond valid_to: polynomial growth dominated by e^(-2 pi m).
    Real trunc_tail = max_coeff * exp(Real(-3.14159 * static_cast<double>(f.valid_to() + 1), 64));

    LValue out;
    out.w = round_to(w, ctx.precision_bits);
    out.value = round_to(q.value, ctx.precision_bits);
    out.error_bound = round_to(q.error_bound + trunc_tail, 64);
    return out;
}

} // namespace ramf
