#include "ramf/expansions.hpp"

#include "ramf/errors.hpp"
#include "ramf/zeta.hpp"
#include "ramf/gamma.hpp"

namespace ramf {

void BigradedExpansion::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
}

Real BigradedExpansion::max_abs_coefficient(long prec) const {
    Real best(prec);
    for (const auto& [k, c] : terms_) {
        Real a = abs(round_to(c, prec));
        if (a > best) best = a;
    }
    return best;
}

namespace {

void accumulate(std::map<TermKey, Complex>& terms, const TermKey& k, const Complex& c) {
    auto [it, fresh] = terms.emplace(k, c);
    if (!fresh) it->second += c;
}

} // namespace

BigradedExpansion operator+(const BigradedExpansion& a, const BigradedExpansion& b) {
    if (!(a.w_ == b.w_)) throw domain_error("weight mismatch in expansion sum");
    auto terms = a.terms_;
    for (const auto& [k, c] : b.terms_) accumulate(terms, k, c);
    return BigradedExpansion(a.w_, std::move(terms));
}

BigradedExpansion operator-(const BigradedExpansion& a, const BigradedExpansion& b) {
    if (!(a.w_ == b.w_)) throw domain_error("weight mismatch in expansion difference");
    auto terms = a.terms_;
    for (const auto& [k, c] : b.terms_) accumulate(terms, k, -c);
    return BigradedExpansion(a.w_, std::move(terms));
}

BigradedExpansion BigradedExpansion::scaled(const Complex& c) const {
    std::map<TermKey, Complex> terms;
    for (const auto& [k, v] : terms_) terms.emplace(k, v * c);
    return BigradedExpansion(w_, std::move(terms));
}

SplitParts split_parts(const BigradedExpansion& f) {
    std::map<TermKey, Complex> tp, tz, tn;
    for (const auto& [k, c] : f.terms()) {
        long mu = k.m + k.n;
        (mu > 0 ? tp : mu == 0 ? tz : tn).emplace(k, c);
    }
    return SplitParts{BigradedExpansion(f.weights(), std::move(tp)),
                      BigradedExpansion(f.weights(), std::move(tz)),
                      BigradedExpansion(f.weights(), std::move(tn))};
}

namespace {

long op_prec(const BigradedExpansion& f, const PrecisionContext& ctx) {
    long p = ctx.precision_bits;
    for (const auto& [k, c] : f.terms()) p = std::max(p, c.prec());
    return p + 32;
}

} // namespace

BigradedExpansion maass_raise(const BigradedExpansion& f, const PrecisionContext& ctx) {
    const long wp = op_prec(f, ctx);
    const Real four_pi = mul_2si(Real::pi(wp), 2);
    const long r = f.weights().r;
    std::map<TermKey, Complex> terms;
    for (const auto& [k, c] : f.terms()) {
        accumulate(terms, k, c * (k.j + r));
        if (k.m != 0) accumulate(terms, {k.j + 1, k.m, k.n}, c * -(four_pi * k.m));
    }
    return BigradedExpansion({f.weights().r + 1, f.weights().s - 1}, std::move(terms));
}

BigradedExpansion maass_lower(const BigradedExpansion& f, const PrecisionContext& ctx) {
    const long wp = op_prec(f, ctx);
    const Real four_pi = mul_2si(Real::pi(wp), 2);
    const long s = f.weights().s;
    std::map<TermKey, Complex> terms;
    for (const auto& [k, c] : f.terms()) {
        accumulate(terms, k, c * (k.j + s));
        if (k.n != 0) accumulate(terms, {k.j + 1, k.m, k.n}, c * -(four_pi * k.n));
    }
    return BigradedExpansion({f.weights().r - 1, f.weights().s + 1}, std::move(terms));
}

BigradedExpansion laplacian(const BigradedExpansion& f, const PrecisionContext& ctx) {
    const long wp = op_prec(f, ctx);
    const Real pi = Real::pi(wp);
    const Real four_pi = mul_2si(pi, 2);
    const Real sixteen_pi2 = mul_2si(pi * pi, 4);
    const long r = f.weights().r, s = f.weights().s;
    std::map<TermKey, Complex> terms;
    for (const auto& [k, c] : f.terms()) {
        long c0 = r * (s - 1) - (k.j + r) * (k.j + s - 1);
        if (c0 != 0) accumulate(terms, k, c * c0);
        long lin = (k.j + r) * k.n + (k.j + s) * k.m;
        if (lin != 0) accumulate(terms, {k.j + 1, k.m, k.n}, c * (four_pi * lin));
        if (k.m != 0 && k.n != 0)
            accumulate(terms, {k.j + 2, k.m, k.n}, c * -(sixteen_pi2 * (k.m * k.n)));
    }
    return BigradedExpansion(f.weights(), std::move(terms));
}

BigradedExpansion omega(const BigradedExpansion& f, const PrecisionContext& ctx) {
    const long wp = op_prec(f, ctx);
    const Real two_pi = mul_2si(Real::pi(wp), 1);
    const long rs = f.weights().r + f.weights().s;
    BigradedExpansion lap = laplacian(f, ctx);
    std::map<TermKey, Complex> terms = lap.terms();
    for (const auto& [k, c] : f.terms()) {
        if (k.j != 0) accumulate(terms, k, c * (rs * k.j));
        if (k.m + k.n != 0)
            accumulate(terms, {k.j + 1, k.m, k.n}, c * -(two_pi * (rs * (k.m + k.n))));
    }
    return BigradedExpansion(f.weights(), std::move(terms));
}

mpq_class alpha_pm(long r, long s, long j, int sign) {
    if (sign != 1 && sign != -1) throw domain_error("alpha_pm: sign must be +1 or -1");
    if ((r - s) % 2 != 0) throw domain_error("alpha_pm: weights must have equal parity");
    const long d = (r - s) / 2;
    const long ad = d < 0 ? -d : d;
    const long fact_arg = j + ad;
    if (fact_arg < 0) return mpq_class(0);
    const long low2 = j + sign * d;
    mpz_class top2(sign == 1 ? -1 - s : -r - 1);
    mpz_class result = factorial(fact_arg);
    result *= generalized_binomial(mpz_class(s + d + ad), fact_arg);
    result *= generalized_binomial(top2, low2);
    if (j & 1L) result = -result;
    return mpq_class(result);
}

EigenExpansion::EigenExpansion(Weights w, long k0, Complex const_a, Complex const_b, Row hol,
                               Row antihol)
    : w_(w), k0_(k0), a_(std::move(const_a)), b_(std::move(const_b)), hol_(std::move(hol)),
      antihol_(std::move(antihol)) {
    if (2 * k0_ >= 1 - w_.r - w_.s)
        throw domain_error("eigen expansion: k0 must be the smaller exponent, 2 k0 < 1 - r - s");
    for (const auto& [key, c] : hol_) {
        (void)c;
        if (key.first < k0_ || key.first > -w_.s)
            throw domain_error("eigen expansion: holomorphic row outside [k0, -s]");
        if (key.second == 0) throw domain_error("eigen expansion: m = 0 belongs to the constant term");
    }
    for (const auto& [key, c] : antihol_) {
        (void)c;
        if (key.first < k0_ || key.first > -w_.r)
            throw domain_error("eigen expansion: antiholomorphic row outside [k0, -r]");
        if (key.second == 0) throw domain_error("eigen expansion: m = 0 belongs to the constant term");
    }
}

BigradedExpansion EigenExpansion::to_bigraded() const {
    std::map<TermKey, Complex> terms;
    if (!a_.is_zero()) accumulate(terms, {k0_, 0, 0}, a_);
    if (!b_.is_zero()) accumulate(terms, {1 - w_.r - w_.s - k0_, 0, 0}, b_);
    for (const auto& [key, c] : hol_) accumulate(terms, {key.first, key.second, 0}, c);
    for (const auto& [key, c] : antihol_) accumulate(terms, {key.first, 0, key.second}, c);
    return BigradedExpansion(w_, std::move(terms));
}

EigenExpansion eisenstein_expansion(long r, long s, long m_max, const PrecisionContext& ctx,
                                    std::optional<Complex> override_a,
                                    std::optional<Complex> override_b) {
    if (r < 1 || s < 1) throw domain_error("eisenstein_expansion: weights must be >= 1");
    if ((r - s) % 2 != 0) throw domain_error("eisenstein_expansion: weights must have equal parity");
    if (m_max < 0) throw domain_error("eisenstein_expansion: m_max must be >= 0");

    const long wp = ctx.working_bits();
    const long w = r + s;          // even
    const long h2 = w / 2;         // (r+s)/2
    const Real pi = Real::pi(wp);
    const Real two_pi = mul_2si(pi, 1);
    const Real zeta_w1 = riemann_zeta_int(w + 1, PrecisionContext(wp, ctx.q_truncation));
    const Real zeta_w2 = riemann_zeta_int(w + 2, PrecisionContext(wp, ctx.q_truncation));
    const Real top_fact = Real(factorial(std::max(r, s)), wp);
    // pi / (max(r,s)! zeta(r+s+2)), shared by every coefficient
    const Real base = pi / (top_fact * zeta_w2);

    // sigma_{r+s+1}(m) for m = 1..m_max
    std::vector<mpz_class> sig(static_cast<size_t>(m_max) + 1);
    for (long m = 1; m <= m_max; ++m) sig[static_cast<size_t>(m)] = divisor_sigma(w + 1, m);

    EigenExpansion::Row hol, antihol;
    for (int side = 0; side < 2; ++side) {
        const int sign = side == 0 ? 1 : -1;
        const long j_hi = side == 0 ? -s : -r;
        for (long j = -w; j <= j_hi; ++j) {
            mpq_class alpha = alpha_pm(r, s, -j - h2, sign);
            if (alpha == 0) continue;
            // (2 pi)^(r+s+j) 2^j alpha pi / (max(r,s)! zeta(r+s+2))
            Real pref = base * pow_si(two_pi, w + j);
            pref = mul_2si(pref, j);
            pref *= Real(alpha, wp);
            for (long m = 1; m <= m_max; ++m) {
                // m^(j-1), exact rational
                mpq_class mpow(sig[static_cast<size_t>(m)]);
                if (j - 1 >= 0) {
                    mpz_class p;
                    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(m),
                                  static_cast<unsigned long>(j - 1));
                    mpow *= p;
                } else {
                    mpz_class p;
                    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(m),
                                  static_cast<unsigned long>(1 - j));
                    mpow /= p;
                }
                Complex coeff(pref * Real(mpow, wp), Real(wp));
                auto& row = side == 0 ? hol : antihol;
                row.emplace(std::make_pair(j, m), coeff);
            }
        }
    }

    Complex ca(wp);
    if (override_a) {
        ca = *override_a;
    } else {
        Real a = pi * Real(binomial(w, s), wp) * zeta_w1 / zeta_w2;
        a = mul_2si(a, -w);
        if ((s + h2) & 1L) a = -a;
        ca = Complex(a, Real(wp));
    }
    Complex cb = override_b ? *override_b : Complex(Real(1L, wp), Real(wp));

    return EigenExpansion({r, s}, -w, std::move(ca), std::move(cb), std::move(hol),
                          std::move(antihol));
}

} // namespace ramf
