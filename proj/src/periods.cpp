#include "ramf/periods.hpp"

#include <algorithm>
#include <utility>

#include "ramf/errors.hpp"
#include "ramf/lfunctions.hpp"
#include "ramf/quadrature.hpp"

namespace ramf {

GroupElement::GroupElement(mpz_class a_, mpz_class b_, mpz_class c_, mpz_class d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (a * d - b * c != 1) throw domain_error("group element must have determinant 1");
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

GroupElement GroupElement::inverse() const { return {d, -b, -c, a}; }

Complex GroupElement::moebius(const Complex& z) const {
    const long p = z.prec();
    Complex num = z * Real(a, p) + Complex(Real(b, p), Real(p));
    Complex den = z * Real(c, p) + Complex(Real(d, p), Real(p));
    if (den.is_zero()) throw domain_error("moebius image of a pole");
    return num / den;
}

Complex PeriodPolynomial::eval(const Complex& zeta) const {
    const long p = std::max(prec(), zeta.prec());
    Complex acc(p);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * zeta + *it;
    return acc;
}

long PeriodPolynomial::prec() const {
    long p = 2;
    for (const auto& c : coeffs) p = std::max(p, c.prec());
    return p;
}

Real PeriodPolynomial::max_abs_coefficient(long p) const {
    Real best(p);
    for (const auto& c : coeffs) {
        Real a = abs(round_to(c, p));
        if (a > best) best = a;
    }
    return best;
}

PeriodPolynomial pp_zero(long degree_bound, long prec) {
    if (degree_bound < 0) throw domain_error("period polynomial degree bound must be >= 0");
    PeriodPolynomial p;
    p.degree_bound = degree_bound;
    p.coeffs.assign(static_cast<size_t>(degree_bound) + 1, Complex(prec));
    return p;
}

namespace {

void check_compatible(const PeriodPolynomial& p, const PeriodPolynomial& q) {
    if (p.degree_bound != q.degree_bound)
        throw domain_error("period polynomial degree bounds differ");
}

} // namespace

PeriodPolynomial pp_add(const PeriodPolynomial& p, const PeriodPolynomial& q) {
    check_compatible(p, q);
    PeriodPolynomial out = p;
    for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += q.coeffs[i];
    return out;
}

PeriodPolynomial pp_sub(const PeriodPolynomial& p, const PeriodPolynomial& q) {
    check_compatible(p, q);
    PeriodPolynomial out = p;
    for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= q.coeffs[i];
    return out;
}

PeriodPolynomial pp_scale(const PeriodPolynomial& p, const Complex& c) {
    PeriodPolynomial out = p;
    for (auto& x : out.coeffs) x = x * c;
    return out;
}

PeriodPolynomial slash_action(const PeriodPolynomial& p, const GroupElement& g) {
    const long D = p.degree_bound;
    // (a zeta + b)^l coefficients, then (c zeta + d)^(D-l), convolved exactly.
    std::vector<std::vector<mpz_class>> up(static_cast<size_t>(D) + 1),
        low(static_cast<size_t>(D) + 1);
    up[0] = {mpz_class(1)};
    low[0] = {mpz_class(1)};
    for (long l = 1; l <= D; ++l) {
        const auto& u = up[static_cast<size_t>(l - 1)];
        std::vector<mpz_class> nu(static_cast<size_t>(l) + 1);
        for (size_t i = 0; i < u.size(); ++i) {
            nu[i] += u[i] * g.b;
            nu[i + 1] += u[i] * g.a;
        }
        up[static_cast<size_t>(l)] = std::move(nu);
        const auto& v = low[static_cast<size_t>(l - 1)];
        std::vector<mpz_class> nv(static_cast<size_t>(l) + 1);
        for (size_t i = 0; i < v.size(); ++i) {
            nv[i] += v[i] * g.d;
            nv[i + 1] += v[i] * g.c;
        }
        low[static_cast<size_t>(l)] = std::move(nv);
    }

    size_t max_bits = 1;
    std::vector<std::vector<mpz_class>> rows(static_cast<size_t>(D) + 1);
    for (long l = 0; l <= D; ++l) {
        std::vector<mpz_class> conv(static_cast<size_t>(D) + 1);
        const auto& u = up[static_cast<size_t>(l)];
        const auto& v = low[static_cast<size_t>(D - l)];
        for (size_t i = 0; i < u.size(); ++i)
            for (size_t j = 0; j < v.size(); ++j) conv[i + j] += u[i] * v[j];
        for (const auto& e : conv) max_bits = std::max(max_bits, mpz_sizeinbase(e.get_mpz_t(), 2));
        rows[static_cast<size_t>(l)] = std::move(conv);
    }

    const long wp = p.prec() + static_cast<long>(max_bits) + 16;
    PeriodPolynomial out = pp_zero(D, wp);
    out.source_weights = p.source_weights;
    out.component_k = p.component_k;
    for (long l = 0; l <= D; ++l) {
        const Complex& c = p.coeffs[static_cast<size_t>(l)];
        if (c.is_zero()) continue;
        for (long e = 0; e <= D; ++e) {
            const mpz_class& m = rows[static_cast<size_t>(l)][static_cast<size_t>(e)];
            if (m != 0) out.coeffs[static_cast<size_t>(e)] += c * Real(m, wp);
        }
    }
    return out;
}

PeriodPolynomial slash_action(const PeriodPolynomial& p, const GroupElement& g,
                              long weight_exponent) {
    if (weight_exponent != -p.degree_bound)
        throw domain_error("slash_action: weight exponent must be -degree_bound");
    return slash_action(p, g);
}

PeriodPolynomial psi0_at_S(long degree_bound, long prec) {
    PeriodPolynomial p = pp_zero(degree_bound, prec);
    p.coeffs.front() = Complex(Real(-1L, prec), Real(prec));
    p.coeffs.back() = Complex(Real(1L, prec), Real(prec));
    if (degree_bound == 0) p.coeffs.front() = Complex(prec);  // zeta^0 - 1 = 0
    return p;
}

namespace {

// Integer factor of alpha_n: the i-power prefix reduces to i^(-l) (-1)^n.
mpz_class alpha_term_integer(long r, long s, long k, long l, long n) {
    return mpz_class(r - k) * generalized_binomial(mpz_class(s - k + 1), l - n) *
               generalized_binomial(mpz_class(r - k - 1), n) -
           mpz_class(s - k) * generalized_binomial(mpz_class(s - k - 1), l - n) *
               generalized_binomial(mpz_class(r - k + 1), n);
}

} // namespace

GaussianRational alpha_n_coeff(long r, long s, long k, long l, long n) {
    if (k < 0 || k > std::min(r, s))
        throw domain_error("alpha_n_coeff: requires 0 <= k <= min(r, s)");
    if ((r - s) % 4 != 0) throw domain_error("alpha_n_coeff: requires r = s (mod 4)");
    if (l < 1 || l > r + s - 2 * k - 1)
        throw domain_error("alpha_n_coeff: requires 1 <= l <= r+s-2k-1");
    if (n < 0 || n > l) throw domain_error("alpha_n_coeff: requires 0 <= n <= l");

    mpz_class t = alpha_term_integer(r, s, k, l, n);
    if (n & 1L) t = -t;
    GaussianRational out;
    switch (((-l) % 4 + 4) % 4) {  // i^(-l-2n) = (-1)^n i^(-l)
        case 0: out.re = t; break;
        case 1: out.im = t; break;
        case 2: out.re = -t; break;
        default: out.im = -t; break;
    }
    return out;
}

mpz_class alpha_sum_integer(long r, long s, long k, long l) {
    if (l < 0) throw domain_error("alpha_sum_integer: l must be >= 0");
    mpz_class acc = 0;
    for (long n = 0; n <= l; ++n) {
        mpz_class term = alpha_term_integer(r, s, k, l, n);
        if (n & 1L)
            acc -= term;
        else
            acc += term;
    }
    return acc;
}

namespace {

void require_parity(const Weights& w, bool allow_experimental) {
    if ((w.r - w.s) % 2 != 0) throw domain_error("cocycle requires weights of equal parity");
    if ((w.r - w.s) % 4 != 0 && !allow_experimental)
        throw domain_error("weights r = s mod 4 required (pass the experimental-parity option "
                           "to evaluate anyway)");
}

long component_index(const EigenExpansion& f) { return f.k0() + f.weights().r + f.weights().s; }

} // namespace

PeriodPolynomial truncated_period_polynomial(
    const std::map<std::pair<long, long>, LValue>& lvalues, long r, long s,
    bool allow_experimental_parity) {
    require_parity(Weights{r, s}, allow_experimental_parity);

    std::vector<long> ks;
    for (const auto& [key, v] : lvalues) {
        (void)v;
        if (key.first < 0 || key.first > std::min(r, s))
            throw domain_error("truncated_period_polynomial: component index outside 0..min(r,s)");
        if (key.second < 1 || key.second > r + s - 2 * key.first - 1)
            throw domain_error("truncated_period_polynomial: slot index outside 1..r+s-2k-1");
        if (std::find(ks.begin(), ks.end(), key.first) == ks.end()) ks.push_back(key.first);
    }
    std::string missing;
    for (long k : ks)
        for (long l = 1; l <= r + s - 2 * k - 1; ++l)
            if (!lvalues.count({k, l}))
                missing += " (" + std::to_string(k) + "," + std::to_string(l) + ")";
    if (!missing.empty())
        throw domain_error("truncated_period_polynomial: missing L-values:" + missing);

    long wp = 64;
    for (const auto& [key, v] : lvalues) {
        (void)key;
        wp = std::max(wp, v.value.prec());
    }

    long D = 0;
    long min_k = 0;
    if (!ks.empty()) {
        min_k = *std::min_element(ks.begin(), ks.end());
        D = r + s - 2 * min_k;
    }
    PeriodPolynomial out = pp_zero(D, wp);
    out.source_weights = Weights{r, s};
    out.component_k = min_k;
    out.truncated_slots = {0};
    for (long k : ks) {
        const long lead = r + s - 2 * k;
        if (std::find(out.truncated_slots.begin(), out.truncated_slots.end(), lead) ==
            out.truncated_slots.end())
            out.truncated_slots.push_back(lead);
    }
    std::sort(out.truncated_slots.begin(), out.truncated_slots.end());

    for (long k : ks) {
        for (long l = 1; l <= r + s - 2 * k - 1; ++l) {
            mpz_class A = alpha_sum_integer(r, s, k, l);
            if (A == 0) continue;
            const LValue& L = lvalues.at({k, l});
            out.coeffs[static_cast<size_t>(l)] +=
                i_pow(1 - l, wp) * Real(A, wp) * round_to(L.value, wp);
        }
    }
    return out;
}

PeriodPolynomial truncated_period_polynomial(const EigenExpansion& f, const PrecisionContext& ctx,
                                             bool allow_experimental_parity) {
    require_parity(f.weights(), allow_experimental_parity);
    const long r = f.weights().r, s = f.weights().s;
    const long k = component_index(f);
    if (k < 0 || k > std::min(r, s))
        throw domain_error("truncated_period_polynomial: spectral index outside 0..min(r,s)");
    const long wp = ctx.working_bits();

    LSeriesData data = LSeriesData::from_eigen(f, ctx);
    std::map<std::pair<long, long>, LValue> lv;
    for (long l = 1; l <= r + s - 2 * k - 1; ++l)
        lv.emplace(std::make_pair(k, l), l_star(data, Complex(Real(k + l, wp), Real(wp)), ctx));

    PeriodPolynomial out = truncated_period_polynomial(lv, r, s, allow_experimental_parity);
    if (lv.empty()) {
        // Degenerate l-range: resize the zero polynomial to this component's
        // own degree bound so the metadata still describes f.
        const long D = r + s - 2 * k;
        out = pp_zero(D, ctx.precision_bits);
        out.truncated_slots = D == 0 ? std::vector<long>{0} : std::vector<long>{0, D};
    }
    out.source_weights = f.weights();
    out.component_k = k;
    for (auto& c : out.coeffs) c = round_to(c, ctx.precision_bits);
    return out;
}

namespace {

// R(t, zeta) of the cocycle integrand with the constant and leading zeta-slots
// removed; A = r - k, B = s - k.
struct TruncatedKernel {
    long rk, sk, A, B, D;

    Complex full(const Real& t, const Complex& zeta, long wp) const {
        const Complex one(Real(1L, wp), Real(wp));
        const Complex tz = zeta * t;
        const Complex itz(-tz.im, tz.re);                       // i t zeta
        const Complex m = one - itz;
        const Complex p = one + itz;
        const Complex zp(zeta.re, zeta.im + t);                 // zeta + i t
        const Complex zm(zeta.re, zeta.im - t);                 // zeta - i t
        Complex val = (pow_si(m, B + 1) * pow_si(p, A - 1) - pow_si(zp, B + 1) * pow_si(zm, A - 1)) *
                      Real(rk, wp);
        val -= (pow_si(m, B - 1) * pow_si(p, A + 1) - pow_si(zp, B - 1) * pow_si(zm, A + 1)) *
               Real(sk, wp);
        return val;
    }

    Complex leading(const Real& t, long wp) const {
        const Complex one(Real(1L, wp), Real(wp));
        const Complex mit(Real(wp), -t);
        const Complex pit(Real(wp), t);
        Complex val = (pow_si(mit, B + 1) * pow_si(pit, A - 1) - one) * Real(rk, wp);
        val -= (pow_si(mit, B - 1) * pow_si(pit, A + 1) - one) * Real(sk, wp);
        return val;
    }

    Complex constant(const Real& t, long wp) const {
        const Complex one(Real(1L, wp), Real(wp));
        const Complex mit(Real(wp), -t);
        const Complex pit(Real(wp), t);
        Complex val = (one - pow_si(pit, B + 1) * pow_si(mit, A - 1)) * Real(rk, wp);
        val -= (one - pow_si(pit, B - 1) * pow_si(mit, A + 1)) * Real(sk, wp);
        return val;
    }

    Complex truncated(const Real& t, const Complex& zeta, long wp) const {
        Complex val = full(t, zeta, wp) - constant(t, wp);
        if (D >= 1) val -= leading(t, wp) * pow_si(zeta, D);
        return val;
    }
};

// Decaying part of the expansion along the imaginary axis:
// sum of coeff * t^j * exp(-2 pi m t) over all rows.
struct TildeEvaluator {
    std::vector<std::tuple<long, long, Complex>> rows;  // (m, j, coeff), m ascending

    explicit TildeEvaluator(const EigenExpansion& f) {
        for (const auto& [key, c] : f.hol()) {
            if (key.second < 0)
                throw domain_error("quadrature cocycle route requires decaying rows only");
            rows.emplace_back(key.second, key.first, c);
        }
        for (const auto& [key, c] : f.antihol()) {
            if (key.second < 0)
                throw domain_error("quadrature cocycle route requires decaying rows only");
            rows.emplace_back(key.second, key.first, c);
        }
        std::sort(rows.begin(), rows.end(),
                  [](const auto& x, const auto& y) { return std::get<0>(x) < std::get<0>(y); });
    }

    Complex at_it(const Real& t, long wp) const {
        const Real x = exp(-mul_2si(Real::pi(wp), 1) * t);
        Complex acc(wp);
        Real xp(1L, wp);
        long last = 0;
        for (const auto& [m, j, c] : rows) {
            for (long i = last; i < m; ++i) xp *= x;
            last = m;
            acc += c * (xp * pow_si(t, j));
        }
        return acc;
    }
};

std::vector<Complex> solve_dense(std::vector<std::vector<Complex>> m, std::vector<Complex> rhs) {
    const size_t n = m.size();
    for (size_t col = 0; col < n; ++col) {
        size_t best = col;
        Real best_abs = abs(m[col][col]);
        for (size_t row = col + 1; row < n; ++row) {
            Real a = abs(m[row][col]);
            if (a > best_abs) {
                best_abs = a;
                best = row;
            }
        }
        if (best_abs.is_zero()) throw numeric_failure("singular linear system", 0.0);
        std::swap(m[col], m[best]);
        std::swap(rhs[col], rhs[best]);
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col].is_zero()) continue;
            Complex f = m[row][col] / m[col][col];
            for (size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
            rhs[row] -= f * rhs[col];
        }
    }
    std::vector<Complex> x(n, Complex(rhs.empty() ? 64 : rhs[0].prec()));
    for (size_t row = n; row-- > 0;) {
        Complex acc = rhs[row];
        for (size_t j = row + 1; j < n; ++j) acc -= m[row][j] * x[j];
        x[row] = acc / m[row][row];
    }
    return x;
}

} // namespace

SigmaSQuadrature sigma_S_quadrature(const std::vector<EigenExpansion>& components,
                                    const std::vector<Complex>& zeta_grid,
                                    const PrecisionContext& ctx, bool allow_experimental_parity) {
    if (components.empty())
        throw domain_error("sigma_S_quadrature: at least one component required");
    const Weights w = components.front().weights();
    for (const auto& f : components) {
        if (f.weights().r != w.r || f.weights().s != w.s)
            throw domain_error("sigma_S_quadrature: components must share one weight pair");
    }
    require_parity(w, allow_experimental_parity);
    const long r = w.r, s = w.s;

    long D = 0;
    long min_k = components.front().k0() + r + s;
    for (const auto& f : components) {
        const long k = component_index(f);
        min_k = std::min(min_k, k);
        D = std::max(D, r + s - 2 * k);
    }
    if (D > 62) throw domain_error("degree bound too large for the quadrature route");
    if (D < 0) throw domain_error("sigma_S_quadrature: negative degree bound");

    if (zeta_grid.size() < static_cast<size_t>(D + 3))
        throw domain_error("sigma_S_quadrature: grid needs at least degree_bound + 3 points");
    for (size_t i = 0; i < zeta_grid.size(); ++i)
        for (size_t j = i + 1; j < zeta_grid.size(); ++j)
            if ((zeta_grid[i] - zeta_grid[j]).is_zero())
                throw domain_error("sigma_S_quadrature: grid points must be distinct");

    SigmaSQuadrature out{pp_zero(D, ctx.precision_bits), Real(64), Real(64)};
    out.poly.source_weights = w;
    out.poly.component_k = min_k;
    out.poly.truncated_slots = {0};
    for (const auto& f : components) {
        const long lead = r + s - 2 * component_index(f);
        if (std::find(out.poly.truncated_slots.begin(), out.poly.truncated_slots.end(), lead) ==
            out.poly.truncated_slots.end())
            out.poly.truncated_slots.push_back(lead);
    }
    std::sort(out.poly.truncated_slots.begin(), out.poly.truncated_slots.end());
    if (D < 2) return out;

    const PrecisionContext qctx(ctx.precision_bits + 96, ctx.q_truncation);
    const long wp = qctx.working_bits();

    struct Piece {
        long k, D;
        TruncatedKernel kernel;
        TildeEvaluator tilde;
        Complex a, b;
    };
    std::vector<Piece> pieces;
    for (const auto& f : components) {
        const long k = component_index(f);
        const long dk = r + s - 2 * k;
        if (dk < 2) continue;  // every slot truncated; contributes nothing
        pieces.push_back(Piece{k, dk, TruncatedKernel{r - k, s - k, r - k, s - k, dk},
                               TildeEvaluator(f), round_to(f.const_a(), wp),
                               round_to(f.const_b(), wp)});
    }

    const Complex iu(Real(wp), Real(1L, wp));
    std::vector<Complex> values;
    Real max_err(64);
    for (const Complex& zeta_in : zeta_grid) {
        const Complex zeta = round_to(zeta_in, wp);
        Complex v(wp);
        Real err(64);
        for (const Piece& pc : pieces) {
            QuadratureResult q1 = integrate_vertical_line(
                [&](const Real& t) {
                    return pc.tilde.at_it(t, wp) * pc.kernel.truncated(t, zeta, wp) *
                           pow_si(t, pc.k - 1);
                },
                Real(1L, wp), Real::pos_infinity(wp), qctx);
            v += q1.value;
            err += q1.error_bound;

            if (!pc.a.is_zero()) {
                QuadratureResult q2 = integrate_vertical_line(
                    [&](const Real& u) {
                        return pc.kernel.truncated(Real(1L, wp) / u, zeta, wp) *
                               pow_si(u, pc.D - 1);
                    },
                    Real(wp), Real(1L, wp), qctx);
                v += pc.a * q2.value;
                err += abs(pc.a) * q2.error_bound;
            }

            if (!pc.b.is_zero()) {
                QuadratureResult q3 = integrate_vertical_line(
                    [&](const Real& t) { return pc.kernel.truncated(t, zeta, wp); }, Real(wp),
                    Real(1L, wp), qctx);
                v -= pc.b * q3.value;
                err += abs(pc.b) * q3.error_bound;
            }
        }
        values.push_back(iu * v);
        if (err > max_err) max_err = err;
    }
    out.quadrature_error = max_err;

    // Least-squares fit of the interior monomials zeta^1 .. zeta^(D-1) on all
    // but the last two grid points (those stay as a held-out polynomiality
    // check feeding the residual).
    const size_t n_fit = values.size() - 2;
    const size_t n_unk = static_cast<size_t>(D - 1);
    std::vector<std::vector<Complex>> vand(values.size(), std::vector<Complex>(n_unk, Complex(wp)));
    for (size_t i = 0; i < values.size(); ++i) {
        const Complex zeta = round_to(zeta_grid[i], wp);
        Complex p = zeta;
        for (size_t l = 0; l < n_unk; ++l) {
            vand[i][l] = p;
            p = p * zeta;
        }
    }
    std::vector<std::vector<Complex>> normal(n_unk, std::vector<Complex>(n_unk, Complex(wp)));
    std::vector<Complex> rhs(n_unk, Complex(wp));
    for (size_t l = 0; l < n_unk; ++l) {
        for (size_t j = 0; j < n_unk; ++j) {
            Complex acc(wp);
            for (size_t i = 0; i < n_fit; ++i) acc += conj(vand[i][l]) * vand[i][j];
            normal[l][j] = acc;
        }
        Complex acc(wp);
        for (size_t i = 0; i < n_fit; ++i) acc += conj(vand[i][l]) * values[i];
        rhs[l] = acc;
    }
    std::vector<Complex> sol = solve_dense(std::move(normal), std::move(rhs));

    Real resid(64);
    for (size_t i = 0; i < values.size(); ++i) {
        Complex fitv(wp);
        for (size_t l = 0; l < n_unk; ++l) fitv += sol[l] * vand[i][l];
        Real d = round_to(abs(fitv - values[i]), 64);
        if (d > resid) resid = d;
    }
    out.fit_residual = resid;

    for (size_t l = 0; l < n_unk; ++l)
        out.poly.coeffs[l + 1] = round_to(sol[l], ctx.precision_bits);
    return out;
}

SigmaSQuadrature sigma_S_quadrature(const EigenExpansion& f, const PrecisionContext& ctx,
                                    bool allow_experimental_parity) {
    require_parity(f.weights(), allow_experimental_parity);
    const long D = std::max(f.weights().r + f.weights().s - 2 * component_index(f), 0L);
    const long gp = ctx.precision_bits + 128;

    long n_pts = D + 5;
    if (n_pts % 2 != 0) ++n_pts;
    std::vector<Complex> grid;
    const Real pi = Real::pi(gp);
    for (long g = 0; g < n_pts; ++g) {
        // Chebyshev nodes scaled to |zeta| <= 5/4; cos of angles strictly
        // inside (0, pi), so the nodes are distinct and never 0.
        Real angle = pi * Real(2 * g + 1, gp) / Real(2 * n_pts, gp);
        grid.emplace_back(cos(angle) * Real(5L, gp) / Real(4L, gp), Real(gp));
    }
    return sigma_S_quadrature(std::vector<EigenExpansion>{f}, grid, ctx,
                              allow_experimental_parity);
}

PeriodPolynomial eichler_period_polynomial(const QExpansion& f, const PrecisionContext& ctx) {
    const long k = f.weight();
    if (k < 4 || k % 2 != 0) throw domain_error("Eichler cocycle requires even weight >= 4");
    const long D = k - 2;
    const long wp = ctx.working_bits();

    PeriodPolynomial out = pp_zero(D, ctx.precision_bits);
    out.source_weights = {k, 0};
    out.component_k = 1;
    if (f.is_zero()) return out;
    if (f.coefficient(0) != 0)
        throw domain_error("Eichler cocycle requires a cusp expansion (zero constant term)");
    LSeriesData data = LSeriesData::from_weakly_holomorphic(f, ctx);
    for (long l = 0; l <= D; ++l) {
        LValue L = l_star(data, Complex(Real(l + 1, wp), Real(wp)), ctx);
        Complex c = i_pow(l + 1, wp) * Real(binomial(D, l), wp) * L.value;
        out.coeffs[static_cast<size_t>(l)] = round_to(-c, ctx.precision_bits);
    }
    return out;
}

Complex v_prime_quadrature(const QExpansion& f, const Complex& z, const PrecisionContext& ctx) {
    const long k = f.weight();
    if (k < 4 || k % 2 != 0) throw domain_error("Eichler integral requires even weight >= 4");
    if (f.is_zero() || (f.valid_to() >= 0 && f.coefficient(0) != 0))
        throw domain_error("Eichler integral requires a nonzero cusp expansion");
    const long wp = ctx.working_bits();
    const Real two_pi = mul_2si(Real::pi(wp), 1);
    const Complex zz = round_to(z, wp);
    if (zz.im.sign() <= 0) throw domain_error("Eichler integral requires Im z > 0");

    std::vector<std::pair<long, Real>> tilde, ring;
    for (const auto& [m, c] : f.coeffs())
        (m > 0 ? tilde : ring).emplace_back(m, Real(c, wp));
    // ring powers run over |m|, so most negative last
    std::reverse(ring.begin(), ring.end());

    Complex total(wp);
    if (!tilde.empty()) {
        // base e^{2 pi i w}, w = z + iu
        QuadratureResult q = integrate_vertical_line(
            [&](const Real& u) {
                Complex w(zz.re, zz.im + u);
                Complex base = exp(Complex(-(two_pi * w.im), two_pi * w.re));
                Complex acc(wp);
                Complex bp(Real(1L, wp), Real(wp));
                long last = 0;
                for (const auto& [m, c] : tilde) {
                    for (long i = last; i < m; ++i) bp = bp * base;
                    last = m;
                    acc += bp * c;
                }
                return acc * pow_si(u, k - 2);
            },
            Real(wp), Real::pos_infinity(wp), ctx);
        total -= q.value;
    }
    if (!ring.empty()) {
        // base e^{-2 pi i w}, w = z - iu, powers by |m|
        QuadratureResult q = integrate_vertical_line(
            [&](const Real& u) {
                Complex w(zz.re, zz.im - u);
                Complex base = exp(Complex(two_pi * w.im, -(two_pi * w.re)));
                Complex acc(wp);
                Complex bp(Real(1L, wp), Real(wp));
                long last = 0;
                for (const auto& [m, c] : ring) {
                    for (long i = last; i < -m; ++i) bp = bp * base;
                    last = -m;
                    acc += bp * c;
                }
                return acc * pow_si(u, k - 2);
            },
            Real(wp), Real::pos_infinity(wp), ctx);
        total += q.value;
    }
    return round_to(i_pow(k - 1, wp) * total, ctx.precision_bits);
}

MaassSelbergIntegrand maass_selberg_integrand(std::function<Complex(const Complex&)> f,
                                              std::function<Complex(const Complex&)> df_dz, long k,
                                              const Weights& weights, const Complex& zeta,
                                              const PrecisionContext& ctx) {
    if (!f || !df_dz) throw domain_error("maass_selberg_integrand: evaluators required");
    const long r = weights.r, s = weights.s;
    const long wp = ctx.working_bits();
    const Complex zt = round_to(zeta, wp);

    auto y_power = [wp, k](const Complex& z) {
        if (z.im.is_zero())
            throw domain_error("maass_selberg_integrand: not defined on the real line");
        return pow_si(Complex(z.im, Real(wp)), k - 1);
    };

    MaassSelbergIntegrand out;
    out.k = k;
    out.weights = weights;
    out.zeta = zt;
    out.A = [f, df_dz, y_power, zt, r, s, k, wp](const Complex& z_in) {
        const Complex z = round_to(z_in, wp);
        const Complex yp = y_power(z);
        // d_r f = 2iy f' + r f
        const Complex two_i_y(Real(wp), mul_2si(z.im, 1));
        const Complex drf = two_i_y * df_dz(z) + f(z) * Real(r, wp);
        return yp * drf * pow_si(zt - conj(z), s - k) * pow_si(zt - z, r - k);
    };
    if (s == k) {
        out.B = [wp](const Complex&) { return Complex(wp); };
    } else {
        out.B = [f, y_power, zt, r, s, k, wp](const Complex& z_in) {
            const Complex z = round_to(z_in, wp);
            const Complex yp = y_power(z);
            return yp * f(z) * Real(s - k, wp) * pow_si(zt - conj(z), s - k - 1) *
                   pow_si(zt - z, r - k + 1);
        };
    }
    return out;
}

CocycleResiduals cocycle_relation_residuals(const PeriodPolynomial& sigma_s,
                                            long weight_exponent) {
    if (weight_exponent != -sigma_s.degree_bound)
        throw domain_error("cocycle_relation_residuals: weight exponent must be -degree_bound");
    const long prec = std::max(sigma_s.prec(), 64L);
    const GroupElement S = GroupElement::S();
    const GroupElement U = GroupElement::U();
    PeriodPolynomial rel_s = pp_add(sigma_s, slash_action(sigma_s, S));
    PeriodPolynomial rel_u =
        pp_add(pp_add(sigma_s, slash_action(sigma_s, U)), slash_action(sigma_s, U * U));
    return {rel_s.max_abs_coefficient(prec), rel_u.max_abs_coefficient(prec)};
}

FrobeniusSplit frobenius_split(const PeriodPolynomial& p) {
    FrobeniusSplit out{p, p};
    for (size_t i = 0; i < p.coeffs.size(); ++i) {
        const long prec = p.coeffs[i].prec();
        if (i % 2 == 0)
            out.minus.coeffs[i] = Complex(prec);
        else
            out.plus.coeffs[i] = Complex(prec);
    }
    return out;
}

} // namespace ramf
