#include "ramf/qexpansion.hpp"

#include <algorithm>

#include "ramf/arith.hpp"
#include "ramf/errors.hpp"

namespace ramf {

namespace {

constexpr long kMaxValid = 1L << 40;

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

mpq_class rational_power(long base, long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? mpq_class(p) : mpq_class(1) / mpq_class(p);
}

} // namespace

QExpansion::QExpansion(long weight, long valid_to, std::map<long, mpq_class> coeffs)
    : weight_(weight), valid_to_(std::min(valid_to, kMaxValid)), coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        it->second.canonicalize();
        if (it->first > valid_to_ || it->second == 0)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

mpq_class QExpansion::coefficient(long m) const {
    if (m > valid_to_)
        throw truncation_error("q-expansion coefficient beyond validity bound");
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? mpq_class(0) : it->second;
}

long QExpansion::min_exponent() const {
    if (coeffs_.empty()) throw domain_error("min_exponent of the zero series");
    return coeffs_.begin()->first;
}

long QExpansion::pole_order() const {
    if (coeffs_.empty()) return 0;
    long m = min_exponent();
    return m < 0 ? -m : 0;
}

QExpansion QExpansion::truncated(long new_valid_to) const {
    if (new_valid_to > valid_to_)
        throw domain_error("cannot extend a q-expansion by truncation");
    return QExpansion(weight_, new_valid_to, coeffs_);
}

QExpansion q_add(const QExpansion& a, const QExpansion& b) {
    if (a.weight() != b.weight()) throw domain_error("weight mismatch in q-expansion sum");
    auto coeffs = a.coeffs();
    for (const auto& [m, c] : b.coeffs()) coeffs[m] += c;
    return QExpansion(a.weight(), std::min(a.valid_to(), b.valid_to()), std::move(coeffs));
}

QExpansion q_sub(const QExpansion& a, const QExpansion& b) {
    if (a.weight() != b.weight()) throw domain_error("weight mismatch in q-expansion difference");
    auto coeffs = a.coeffs();
    for (const auto& [m, c] : b.coeffs()) coeffs[m] -= c;
    return QExpansion(a.weight(), std::min(a.valid_to(), b.valid_to()), std::move(coeffs));
}

QExpansion q_scale(const QExpansion& a, const mpq_class& c) {
    std::map<long, mpq_class> coeffs;
    if (c != 0)
        for (const auto& [m, v] : a.coeffs()) coeffs.emplace(m, v * c);
    return QExpansion(a.weight(), a.valid_to(), std::move(coeffs));
}

QExpansion q_mul(const QExpansion& a, const QExpansion& b) {
    const long mea = a.is_zero() ? 0 : a.min_exponent();
    const long meb = b.is_zero() ? 0 : b.min_exponent();
    const long valid = std::min(a.valid_to() + meb, b.valid_to() + mea);
    std::map<long, mpq_class> coeffs;
    for (const auto& [i, ci] : a.coeffs()) {
        for (const auto& [j, cj] : b.coeffs()) {
            if (i + j > valid) break;  // j ascending
            coeffs[i + j] += ci * cj;
        }
    }
    return QExpansion(a.weight() + b.weight(), valid, std::move(coeffs));
}

QExpansion q_inv(const QExpansion& a) {
    if (a.is_zero()) throw domain_error("inverse of the zero q-expansion");
    const long m0 = a.min_exponent();
    const long order = a.valid_to() - m0;  // h known through q^order
    if (order < 0) throw truncation_error("q-expansion too short to invert");
    const mpq_class lead = a.coeffs().begin()->second;
    // a = lead q^m0 (1 + h); invert 1 + h by the convolution recurrence.
    std::vector<mpq_class> h(static_cast<size_t>(order) + 1), u(static_cast<size_t>(order) + 1);
    for (const auto& [m, c] : a.coeffs())
        if (m > m0) h[static_cast<size_t>(m - m0)] = c / lead;
    u[0] = 1;
    for (long i = 1; i <= order; ++i) {
        mpq_class acc = 0;
        for (long t = 1; t <= i; ++t)
            if (h[static_cast<size_t>(t)] != 0)
                acc += h[static_cast<size_t>(t)] * u[static_cast<size_t>(i - t)];
        u[static_cast<size_t>(i)] = -acc;
    }
    std::map<long, mpq_class> coeffs;
    const mpq_class inv_lead = mpq_class(1) / lead;
    for (long i = 0; i <= order; ++i)
        if (u[static_cast<size_t>(i)] != 0) coeffs.emplace(-m0 + i, u[static_cast<size_t>(i)] * inv_lead);
    return QExpansion(-a.weight(), a.valid_to() - 2 * m0, std::move(coeffs));
}

QExpansion q_pow(const QExpansion& a, long e) {
    if (e < 0) return q_pow(q_inv(a), -e);
    QExpansion result(0, kMaxValid, {{0, mpq_class(1)}});
    QExpansion base = a;
    while (e > 0) {
        if (e & 1L) result = q_mul(result, base);
        e >>= 1;
        if (e > 0) base = q_mul(base, base);
    }
    return result;
}

QExpansion q_generator(Generator g, long truncation) {
    if (truncation < 1) throw domain_error("q_generator: truncation must be >= 1");
    auto eisenstein = [](long k, long scale, long T) {
        std::map<long, mpq_class> c;
        c[0] = 1;
        for (long n = 1; n <= T; ++n) c[n] = mpq_class(scale) * mpq_class(divisor_sigma(k - 1, n));
        return QExpansion(k, T, std::move(c));
    };
    switch (g) {
        case Generator::E4:
            return eisenstein(4, 240, truncation);
        case Generator::E6:
            return eisenstein(6, -504, truncation);
        case Generator::Delta: {
            QExpansion e4 = eisenstein(4, 240, truncation);
            QExpansion e6 = eisenstein(6, -504, truncation);
            QExpansion num = q_sub(q_pow(e4, 3), q_mul(e6, e6));
            return q_scale(num, mpq_class(1, 1728));
        }
        case Generator::Jinv: {
            const long T = truncation + 2;
            QExpansion e4 = eisenstein(4, 240, T);
            QExpansion delta = q_generator(Generator::Delta, T);
            return q_mul(q_pow(e4, 3), q_inv(delta)).truncated(truncation);
        }
    }
    throw domain_error("q_generator: unknown generator");
}

QExpansion d_power(const QExpansion& f, long e) {
    if (e < 0) throw domain_error("d_power: exponent must be nonnegative");
    std::map<long, mpq_class> coeffs;
    for (const auto& [m, c] : f.coeffs()) {
        if (m == 0 && e > 0) continue;
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), mpz_class(m).get_mpz_t(), static_cast<unsigned long>(e));
        coeffs.emplace(m, c * p);
    }
    return QExpansion(f.weight() + 2 * e, f.valid_to(), std::move(coeffs));
}

QExpansion hecke_tp(const QExpansion& f, long p) {
    if (!is_prime(p)) throw domain_error("hecke_tp: p must be prime");
    const long v_out = f.valid_to() / p;
    if (v_out < 1) throw truncation_error("hecke_tp: expansion too short for T_p");
    const mpq_class pk = rational_power(p, f.weight() - 1);
    std::map<long, mpq_class> coeffs;
    for (const auto& [m, c] : f.coeffs()) {
        if (m % p == 0) coeffs[m / p] += c;
        if (m * p <= v_out) coeffs[m * p] += pk * c;
    }
    return QExpansion(f.weight(), v_out, std::move(coeffs));
}

long dim_modular_forms(long k) {
    if (k < 0 || k % 2 != 0) return 0;
    if (k % 12 == 2) return k / 12;
    return k / 12 + 1;
}

WeaklyHoloBasis weakly_holo_basis(long k, long max_pole, const PrecisionContext& ctx) {
    if (k % 2 != 0) throw domain_error("weakly_holo_basis: weight must be even");
    if (max_pole < 0) throw domain_error("weakly_holo_basis: max_pole must be >= 0");

    WeaklyHoloBasis out;
    out.weight = k;
    out.ell = dim_modular_forms(k) - 1;

    long t = k < 0 ? (-k + 10 + 11) / 12 : 0;
    if (k + 12 * t == 2) ++t;
    const long k1 = k + 12 * t;

    const long ell_pos = std::max(out.ell, 0L);
    const long c_max = max_pole + ell_pos + 4;
    const long v_target = std::max(ctx.q_truncation, out.ell + max_pole + 8);
    const long t0 = v_target + t + c_max + 16;

    const QExpansion e4 = q_generator(Generator::E4, t0);
    const QExpansion e6 = q_generator(Generator::E6, t0);
    const QExpansion jinv = q_generator(Generator::Jinv, t0);
    const QExpansion delta_pow = q_pow(q_generator(Generator::Delta, t0), -t);

    std::vector<QExpansion> monomials;  // weight k1 holomorphic monomials
    for (long a = 0; 4 * a <= k1; ++a) {
        if ((k1 - 4 * a) % 6 != 0) continue;
        monomials.push_back(q_mul(q_pow(e4, a), q_pow(e6, (k1 - 4 * a) / 6)));
    }
    if (monomials.empty()) throw domain_error("weakly_holo_basis: no monomials at lifted weight");

    // Echelonize candidates delta^-t e4^a e6^b jinv^c by lowest exponent.
    std::map<long, QExpansion> pivots;  // lead exponent -> monic reduced row
    QExpansion jpow(0, kMaxValid, {{0, mpq_class(1)}});
    for (long c = 0; c <= c_max; ++c) {
        for (const auto& mono : monomials) {
            QExpansion cand = q_mul(q_mul(delta_pow, jpow), mono);
            while (!cand.is_zero()) {
                const long lead = cand.min_exponent();
                auto it = pivots.find(lead);
                if (it == pivots.end()) break;
                cand = q_sub(cand, q_scale(it->second, cand.coeffs().begin()->second));
            }
            if (cand.is_zero()) continue;
            const long lead = cand.min_exponent();
            if (lead > out.ell) continue;
            pivots.emplace(lead, q_scale(cand, mpq_class(1) / cand.coeffs().begin()->second));
        }
        if (c < c_max) jpow = q_mul(jpow, jinv);
    }

    // Back-substitute so every row vanishes at the other pivot exponents.
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        for (auto jt = pivots.begin(); jt->first < it->first; ++jt) {
            if (jt->second.valid_to() < it->first) continue;
            mpq_class c = jt->second.coefficient(it->first);
            if (c != 0) jt->second = q_sub(jt->second, q_scale(it->second, c));
        }
    }

    for (long n = 0; n <= max_pole; ++n) {
        auto it = pivots.find(-n);
        if (it == pivots.end())
            out.gaps.push_back(n);
        else
            out.by_pole.emplace(n, it->second);
    }
    return out;
}

} // namespace ramf
