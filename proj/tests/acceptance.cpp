// Acceptance gate: ten end-to-end criteria, one PASS/FAIL line each.
// Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ramf/arith.hpp"
#include "ramf/errors.hpp"
#include "ramf/expansions.hpp"
#include "ramf/gamma.hpp"
#include "ramf/lfunctions.hpp"
#include "ramf/periods.hpp"
#include "ramf/precision.hpp"
#include "ramf/qexpansion.hpp"
#include "ramf/rationality.hpp"

using namespace ramf;

namespace {

struct CriterionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void ensure(bool ok, const std::string& what) {
    if (!ok) throw CriterionFailure(what);
}

std::string brief(const Real& x) { return x.to_decimal(12); }

// A1: incomplete-gamma recurrence Gamma(r+1,z) = r Gamma(r,z) + z^r e^(-z),
// 200 random points, relative residual below 2^-224 at 256 bits.
void a1_gamma_recurrence() {
    const long p = 256;
    PrecisionContext ctx(p);
    const Real tol = Real::pow2(-224, p);
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    for (int trial = 0; trial < 200; ++trial) {
        Complex r{Real(unif(rng) * 28.0 - 14.0, p), Real(unif(rng) * 28.0 - 14.0, p)};
        double modulus = 0.1 * std::exp(unif(rng) * std::log(500.0));
        double angle = unif(rng) * 5.2 - 2.6;
        Complex z{Real(modulus * std::cos(angle), p), Real(modulus * std::sin(angle), p)};

        Complex g1 = upper_incomplete_gamma(r + Complex(1, p), z, ctx);
        Complex g0 = upper_incomplete_gamma(r, z, ctx);
        Complex direct = pow(z, r) * exp(Complex(p) - z);
        Real resid = abs(g1 - r * g0 - direct);
        Real scale = abs(g1);
        if (abs(direct) > scale) scale = abs(direct);
        ensure(resid < tol * scale + Real::pow2(-2000, p),
               "recurrence residual " + brief(resid) + " at trial " + std::to_string(trial));
    }
}

// A2: truncated Eisenstein expansions are Laplacian eigenfunctions with
// eigenvalue -(r+s), coefficientwise to 2^-200 relative to the largest
// coefficient.
void a2_laplacian_eigen() {
    const long p = 256;
    PrecisionContext ctx(p, 64);
    for (auto [r, s] : std::vector<std::pair<long, long>>{{1, 1}, {2, 2}, {1, 3}, {3, 3}}) {
        auto e = eisenstein_expansion(r, s, 30, ctx);
        auto big = e.to_bigraded();
        auto resid = laplacian(big, ctx) + big.scaled(Complex(r + s, p));
        Real bound = Real::pow2(-200, p) * big.max_abs_coefficient(p);
        Real got = resid.max_abs_coefficient(p);
        ensure(got < bound, "eigen residual " + brief(got) + " for weights (" +
                                std::to_string(r) + "," + std::to_string(s) + ")");
    }
}

// A3: completed L-functions satisfy L*(w) = i^(r-s) L*(r+s-w) at 30 random
// points per object, residual below 2^-208 (series tails at truncation 64
// are far smaller).
void a3_functional_equation() {
    const long p = 256;
    PrecisionContext ctx(p, 64);
    const Real bound = Real::pow2(-208, p);
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    auto delta = q_generator(Generator::Delta, 64);
    auto jnorm = q_sub(q_generator(Generator::Jinv, 64),
                       QExpansion(0, 64, {{0, mpq_class(744)}}));
    auto data = LSeriesData::from_eigen(eisenstein_expansion(2, 2, 40, ctx), ctx);

    for (int trial = 0; trial < 30; ++trial) {
        Complex w{Real(unif(rng) * 24.0 - 12.0, p), Real(0.5 + unif(rng) * 7.5, p)};
        Real r1 = functional_equation_residual(delta, w, ctx);
        Real r2 = functional_equation_residual(jnorm, w, ctx);
        Real r3 = functional_equation_residual(data, w, ctx);
        ensure(r1 < bound, "discriminant residual " + brief(r1));
        ensure(r2 < bound, "j-invariant residual " + brief(r2));
        ensure(r3 < bound, "eisenstein residual " + brief(r3));
    }
}

// A4: the incomplete-gamma series for L*_Delta matches the Mellin quadrature
// oracle within the combined reported error bounds and to 40 decimal digits.
void a4_series_vs_quadrature() {
    const long p = 256;
    PrecisionContext ctx(p, 64);
    auto delta = q_generator(Generator::Delta, 64);
    std::mt19937_64 rng(104);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<Complex> points;
    for (long j = 1; j <= 11; ++j) points.emplace_back(j, p);
    for (int trial = 0; trial < 10; ++trial)
        points.push_back(Complex{Real(1.0 + unif(rng) * 10.0, p),
                                 Real(unif(rng) * 6.0 - 3.0, p)});

    const Real digits40("1e-40", p);
    for (const auto& w : points) {
        LValue series = l_star_weakly(delta, w, ctx);
        LValue quad = l_star_quadrature_oracle(delta, w, ctx);
        Real diff = abs(series.value - quad.value);
        Real scale(1L, p);
        if (abs(series.value) > scale) scale = abs(series.value);
        ensure(diff <= series.error_bound + quad.error_bound,
               "difference " + brief(diff) + " above combined bounds " +
                   brief(series.error_bound + quad.error_bound));
        ensure(diff < digits40 * scale, "fewer than 40 digits of agreement: " + brief(diff));
    }
}

// A5: closed-form Eisenstein L-values match the series route within the
// reported truncation-tail bounds at m_max = 40.
void a5_closed_form() {
    const long p = 256;
    PrecisionContext ctx(p, 40);
    std::vector<Complex> ws{
        Complex{Real("1.3", p), Real(p)},          Complex{Real("0.4", p), Real(p)},
        Complex{Real("3.7", p), Real(p)},          Complex{Real("2.2", p), Real("1.1", p)},
        Complex{Real("4.8", p), Real("0.3", p)},   Complex{Real("-1.6", p), Real("0.7", p)}};

    for (auto [r, s] : std::vector<std::pair<long, long>>{{1, 1}, {2, 2}, {1, 3}}) {
        auto e = eisenstein_expansion(r, s, 40, ctx);
        for (const auto& w : ws) {
            LValue series = l_star(e, w, ctx);
            LValue closed = l_star_eisenstein_closed(r, s, w, ctx);
            Real diff = abs(series.value - closed.value);
            Real allowed = series.error_bound + closed.error_bound;
            ensure(diff <= allowed, "closed-vs-series gap " + brief(diff) + " over bound " +
                                        brief(allowed) + " for weights (" + std::to_string(r) +
                                        "," + std::to_string(s) + ")");
        }
    }
}

// A6: the quadrature cocycle at S reproduces the L-value period polynomial on
// the non-truncated slots to 25 digits, with held-out fit residual below
// 10 * quad_tol.
void a6_period_cross_validation() {
    const long p = 256;
    PrecisionContext ctx(p, 64);
    const Real digits25("1e-25", p);

    for (auto [r, s] : std::vector<std::pair<long, long>>{{1, 1}, {2, 2}}) {
        auto e = eisenstein_expansion(r, s, 25, ctx);
        auto pred = truncated_period_polynomial(e, ctx);
        auto quad = sigma_S_quadrature(e, ctx);
        ensure(quad.poly.degree_bound == pred.degree_bound, "degree mismatch");

        for (long l = 0; l <= pred.degree_bound; ++l) {
            bool truncated = false;
            for (long t : pred.truncated_slots) truncated = truncated || (t == l);
            if (truncated) continue;
            Real diff = abs(quad.poly.coeffs[l] - pred.coeffs[l]);
            Real scale(1L, p);
            if (abs(pred.coeffs[l]) > scale) scale = abs(pred.coeffs[l]);
            ensure(diff < digits25 * scale,
                   "slot " + std::to_string(l) + " differs by " + brief(diff) +
                       " for weights (" + std::to_string(r) + "," + std::to_string(s) + ")");
        }
        ensure(quad.fit_residual < ctx.quad_tol * 10,
               "fit residual " + brief(quad.fit_residual));
    }
}

// A7: critical ratios of the discriminant certify as the classical rationals
// with denominators at most 10^4.
void a7_manin_ratios() {
    PrecisionContext ctx(256, 64);
    auto report = manin_check(q_generator(Generator::Delta, 64), ctx, 10000);
    const std::map<long, mpq_class> expected{
        {4, {25, 48}}, {5, {9, 14}}, {6, {5, 12}}, {7, {9, 14}},
        {8, {25, 48}}, {9, {1, 1}},  {10, {1, 1}}};
    for (auto& [j, want] : expected) {
        auto it = report.ratios.find(j);
        ensure(it != report.ratios.end(), "ratio " + std::to_string(j) + " missing");
        ensure(it->second.certificate.has_value(),
               "ratio " + std::to_string(j) + " uncertified");
        ensure(it->second.certificate->value() == want,
               "ratio " + std::to_string(j) + " is " +
                   it->second.certificate->value().get_str() + " not " + want.get_str());
        ensure(it->second.certificate->denominator <= 10000, "denominator too large");
    }
}

// A8: the pole-order-1 weight-12 basis element is a Hecke eigenclass with
// exact eigenvalue -24; its odd critical ratios certify, and the edge slots
// 1 and k-1 are refused.
void a8_weakly_holomorphic_manin() {
    PrecisionContext ctx(256, 48);
    auto basis = weakly_holo_basis(12, 1, ctx);
    const auto& f = basis.by_pole.at(1);

    auto eig = hecke_eigenclass_check(f, 2, ctx);
    ensure(eig.eigenvalue == -24, "eigenvalue " + eig.eigenvalue.get_str());

    auto report = manin_check(f, ctx);
    ensure(report.hecke_eigenvalue.has_value() && *report.hecke_eigenvalue == -24,
           "report eigenvalue missing or wrong");
    for (long j : {3L, 5L, 7L, 9L}) {
        auto it = report.ratios.find(j);
        ensure(it != report.ratios.end() && it->second.certificate.has_value(),
               "odd ratio " + std::to_string(j) + " uncertified");
    }
    ensure(report.ratios.count(1) == 0 && report.ratios.count(11) == 0,
           "edge slots must not be certified");
    ensure(report.excluded == std::vector<long>{1, 11}, "excluded slots wrong");
}

// A9: the Eichler cocycle of the discriminant annihilates 1+S and 1+U+U^2 to
// 2^-200, stable under coboundary shifts.
void a9_cocycle_relations() {
    const long p = 256;
    PrecisionContext ctx(p, 40);
    const Real bound = Real::pow2(-200, p);
    auto sigma = eichler_period_polynomial(q_generator(Generator::Delta, 40), ctx);

    auto res = cocycle_relation_residuals(sigma, -10);
    ensure(res.s_relation < bound, "S relation " + brief(res.s_relation));
    ensure(res.u_relation < bound, "U relation " + brief(res.u_relation));

    std::mt19937_64 rng(109);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        Complex c{Real(unif(rng), p), Real(unif(rng), p)};
        auto shifted = pp_add(sigma, pp_scale(psi0_at_S(10, p), c));
        auto sres = cocycle_relation_residuals(shifted, -10);
        ensure(sres.s_relation < bound, "shifted S relation " + brief(sres.s_relation));
        ensure(sres.u_relation < bound, "shifted U relation " + brief(sres.u_relation));
    }
}

// A10: T_2 Delta = -24 Delta as exact rationals up to truncation 64, and
// T_2 T_3 = T_3 T_2 on random weakly holomorphic weight-12 inputs.
void a10_hecke_exactness() {
    auto delta = q_generator(Generator::Delta, 128);
    auto t2 = hecke_tp(delta, 2);
    ensure(t2.valid_to() >= 64, "truncation bookkeeping");
    for (long m = 1; m <= 64; ++m)
        ensure(t2.coefficient(m) == -24 * delta.coefficient(m),
               "T_2 Delta coefficient " + std::to_string(m));

    PrecisionContext ctx(128, 240);
    auto basis = weakly_holo_basis(12, 2, ctx);
    std::mt19937_64 rng(110);
    std::uniform_int_distribution<long> coeff(-9, 9);
    for (int trial = 0; trial < 2; ++trial) {
        long a = coeff(rng), b = coeff(rng);
        if (a == 0) a = 1;
        if (b == 0) b = -1;
        auto f = q_add(q_scale(basis.by_pole.at(1), mpq_class(a)),
                       q_scale(basis.by_pole.at(2), mpq_class(b)));
        auto t23 = hecke_tp(hecke_tp(f, 2), 3);
        auto t32 = hecke_tp(hecke_tp(f, 3), 2);
        for (long m = -6; m <= 40; ++m)
            ensure(t23.coefficient(m) == t32.coefficient(m),
                   "commutator coefficient " + std::to_string(m));
    }
}

} // namespace

int main() {
    std::vector<std::pair<std::string, std::function<void()>>> criteria{
        {"A1", a1_gamma_recurrence},       {"A2", a2_laplacian_eigen},
        {"A3", a3_functional_equation},    {"A4", a4_series_vs_quadrature},
        {"A5", a5_closed_form},            {"A6", a6_period_cross_validation},
        {"A7", a7_manin_ratios},           {"A8", a8_weakly_holomorphic_manin},
        {"A9", a9_cocycle_relations},      {"A10", a10_hecke_exactness}};

    int failures = 0;
    for (auto& [name, run] : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string detail;
        try {
            run();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %s (%.1fs)%s%s\n", name.c_str(), verdict.c_str(), seconds,
                    detail.empty() ? "" : ": ", detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
