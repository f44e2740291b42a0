#include "ramf/rationality.hpp"

#include <algorithm>
#include <utility>

#include "ramf/errors.hpp"

namespace ramf {

std::optional<RationalCertificate> rationality_certificate(const Complex& x, long height_bound,
                                                           const Real& tol,
                                                           const PrecisionContext& ctx) {
    if (height_bound < 1) throw domain_error("rationality certificate: height bound must be >= 1");
    if (tol.sign() <= 0) throw domain_error("rationality certificate: tolerance must be positive");
    if (abs(x.im) > tol)
        throw domain_error("rationality certificate: imaginary part exceeds tolerance");

    const long wp = std::max(x.prec(), ctx.working_bits());
    const Real r = round_to(x.re, wp);

    mpz_class h2 = 0, h1 = 1;  // numerator tail h_{-2}, h_{-1}
    mpz_class k2 = 1, k1 = 0;  // denominator tail
    Real t = r;
    const Real stop = Real::pow2(-(wp - 8), wp);
    for (int iter = 0; iter < 400; ++iter) {
        Real fl = floor(t);
        mpz_class a = fl.to_mpz();
        mpz_class h = a * h1 + h2;
        mpz_class k = a * k1 + k2;
        if (k > height_bound) break;
        mpq_class cand(h, k);
        cand.canonicalize();
        Real err = abs(r - Real(cand, wp));
        if (err <= tol) {
            return RationalCertificate{cand.get_num(), cand.get_den(), round_to(err, 64),
                                       height_bound};
        }
        Real frac = t - fl;
        if (frac < stop) break;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        t = Real(1L, wp) / frac;
    }
    return std::nullopt;
}

EigenclassResult hecke_eigenclass_check(const QExpansion& f, long p, const PrecisionContext& ctx) {
    if (f.is_zero()) throw domain_error("eigenclass check of the zero expansion");
    const long k = f.weight();
    if (k % 2 != 0 || k < 4) throw domain_error("eigenclass check requires even weight >= 4");

    const QExpansion tpf = hecke_tp(f, p);
    const long pole_budget = p * f.pole_order();
    const WeaklyHoloBasis basis = weakly_holo_basis(2 - k, pole_budget, ctx);

    std::vector<const QExpansion*> span;
    std::vector<QExpansion> derived;
    for (const auto& [n, g] : basis.by_pole) {
        if (n > pole_budget) continue;
        span.push_back(&g);
        derived.push_back(d_power(g, k - 1));
    }

    long lo = std::min(f.min_exponent(), tpf.min_exponent());
    long hi = std::min(f.valid_to(), tpf.valid_to());
    for (const auto& d : derived) {
        lo = std::min(lo, d.min_exponent());
        hi = std::min(hi, d.valid_to());
    }
    const size_t unknowns = 1 + derived.size();
    if (hi < lo || static_cast<size_t>(hi - lo + 1) < unknowns)
        throw truncation_error("eigenclass system has fewer coefficients than unknowns; "
                               "increase q_truncation");

    std::vector<std::vector<mpq_class>> rows;
    for (long m = lo; m <= hi; ++m) {
        std::vector<mpq_class> row(unknowns + 1);
        row[0] = f.coefficient(m);
        for (size_t i = 0; i < derived.size(); ++i) row[1 + i] = derived[i].coefficient(m);
        row[unknowns] = tpf.coefficient(m);
        rows.push_back(std::move(row));
    }

    size_t pivot_row = 0;
    std::vector<size_t> pivot_of_col(unknowns, SIZE_MAX);
    for (size_t col = 0; col < unknowns && pivot_row < rows.size(); ++col) {
        size_t sel = SIZE_MAX;
        for (size_t rr = pivot_row; rr < rows.size(); ++rr)
            if (rows[rr][col] != 0) {
                sel = rr;
                break;
            }
        if (sel == SIZE_MAX) continue;
        std::swap(rows[pivot_row], rows[sel]);
        const mpq_class inv = 1 / rows[pivot_row][col];
        for (auto& e : rows[pivot_row]) e *= inv;
        for (size_t rr = 0; rr < rows.size(); ++rr) {
            if (rr == pivot_row || rows[rr][col] == 0) continue;
            const mpq_class fac = rows[rr][col];
            for (size_t cc = col; cc <= unknowns; ++cc) rows[rr][cc] -= fac * rows[pivot_row][cc];
        }
        pivot_of_col[col] = pivot_row;
        ++pivot_row;
    }
    for (size_t rr = pivot_row; rr < rows.size(); ++rr)
        if (rows[rr][unknowns] != 0)
            throw certification_error("not an eigenclass within the pole-bounded basis");
    for (size_t col = 0; col < unknowns; ++col)
        if (pivot_of_col[col] == SIZE_MAX)
            throw truncation_error("eigenclass system is underdetermined; increase q_truncation");

    EigenclassResult out{rows[pivot_of_col[0]][unknowns], QExpansion(2 - k, hi, {})};
    for (size_t i = 0; i < derived.size(); ++i) {
        const mpq_class& c = rows[pivot_of_col[1 + i]][unknowns];
        if (c != 0) out.witness = q_add(out.witness, q_scale(*span[i], c));
    }
    return out;
}

std::map<long, LValue> critical_lvalues(const QExpansion& f, const PrecisionContext& ctx) {
    const long k = f.weight();
    if (k < 4 || k % 2 != 0) throw domain_error("critical L-values require even weight >= 4");
    const long wp = ctx.working_bits();
    std::map<long, LValue> out;
    if (f.is_zero()) {
        for (long j = 1; j <= k - 1; ++j)
            out.emplace(j, LValue{Complex(Real(j, wp), Real(wp)), Complex(wp), Real(wp)});
        return out;
    }
    const LSeriesData data = LSeriesData::from_weakly_holomorphic(f, ctx);
    for (long j = 1; j <= k - 1; ++j)
        out.emplace(j, l_star(data, Complex(Real(j, wp), Real(wp)), ctx));
    return out;
}

ManinReport manin_check(const QExpansion& f, const PrecisionContext& ctx, long height_bound) {
    if (f.is_zero())
        throw domain_error("degenerate normalization: the zero expansion has no usable "
                           "critical values");
    const long k = f.weight();
    ManinReport rep;
    rep.k = k;

    const bool one_dimensional =
        k == 12 || k == 16 || k == 18 || k == 20 || k == 22 || k == 26;
    if (!one_dimensional || f.pole_order() > 0)
        rep.hecke_eigenvalue = hecke_eigenclass_check(f, 2, ctx).eigenvalue;

    rep.critical_values = critical_lvalues(f, ctx);
    const long wp = ctx.working_bits();
    const Real tol = Real::pow2(-(ctx.precision_bits / 2), wp);

    Real scale(wp);
    for (const auto& [j, lv] : rep.critical_values) scale = std::max(scale, abs(lv.value));
    if (scale < Real(1L, wp)) scale = Real(1L, wp);
    const Real negligible = scale * tol;

    for (long j = 3; j <= k - 2; j += 2)
        if (abs(rep.critical_values.at(j).value) > negligible) {
            rep.j_plus = j;
            break;
        }
    for (long j = 2; j <= k - 2; j += 2)
        if (abs(rep.critical_values.at(j).value) > negligible) {
            rep.j_minus = j;
            break;
        }
    if (rep.j_plus == 0 || rep.j_minus == 0)
        throw domain_error("degenerate normalization: an entire parity class of critical "
                           "values is negligible");
    rep.omega_plus = rep.critical_values.at(rep.j_plus).value;
    rep.omega_minus = rep.critical_values.at(rep.j_minus).value;

    rep.all_certified = true;
    for (long j = 2; j <= k - 2; ++j) {
        const Complex& base = (j % 2 != 0) ? rep.omega_plus : rep.omega_minus;
        Complex ratio = round_to(rep.critical_values.at(j).value, wp) / round_to(base, wp);
        ManinRatioEntry entry{round_to(ratio, ctx.precision_bits), std::nullopt};
        try {
            entry.certificate = rationality_certificate(ratio, height_bound, tol, ctx);
        } catch (const domain_error&) {
            entry.certificate = std::nullopt;
        }
        if (!entry.certificate.has_value()) rep.all_certified = false;
        rep.ratios.emplace(j, std::move(entry));
    }
    rep.excluded = {1, k - 1};
    return rep;
}

} // namespace ramf
