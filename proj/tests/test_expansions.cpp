#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "ramf/errors.hpp"
#include "ramf/expansions.hpp"
#include "ramf/precision.hpp"
#include "ramf/zeta.hpp"

using namespace ramf;

namespace {

constexpr long kBits = 256;

BigradedExpansion random_expansion(Weights w, std::mt19937_64& rng, int terms) {
    std::uniform_real_distribution<double> unif(-4.0, 4.0);
    std::map<TermKey, Complex> t;
    for (int i = 0; i < terms; ++i) {
        TermKey key{static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 11) - 4,
                    static_cast<long>(rng() % 11) - 4};
        t[key] = Complex{Real(unif(rng), kBits), Real(unif(rng), kBits)};
    }
    return {w, std::move(t)};
}

Real coeff_distance(const BigradedExpansion& a, const BigradedExpansion& b, long prec) {
    return (a - b).max_abs_coefficient(prec);
}

} // namespace

TEST_CASE("alpha coefficients") {
    CHECK(alpha_pm(1, 1, 0, +1) == 1);
    CHECK(alpha_pm(1, 1, 1, +1) == 2);
    CHECK(alpha_pm(1, 1, 0, -1) == 1);
    CHECK(alpha_pm(1, 1, 1, -1) == 2);
    CHECK(alpha_pm(1, 1, -1, +1) == 0);
    CHECK(alpha_pm(1, 1, 3, +1) == 0);
    CHECK(alpha_pm(2, 2, 0, +1) == 1);
    CHECK_THROWS_AS(alpha_pm(2, 1, 0, +1), domain_error);
}

TEST_CASE("split by total frequency") {
    Weights w{1, 1};
    const long p = kBits;

    std::map<TermKey, Complex> one{{TermKey{0, 1, 0}, Complex(1, p)}};
    auto s1 = split_parts(BigradedExpansion(w, one));
    CHECK(!s1.tilde.empty());
    CHECK(s1.zero.empty());
    CHECK(s1.ring.empty());

    std::map<TermKey, Complex> bal{{TermKey{2, -1, 1}, Complex(3, p)}};
    auto s2 = split_parts(BigradedExpansion(w, bal));
    CHECK(s2.zero.terms().size() == 1);
    CHECK(s2.tilde.empty());
    CHECK(s2.ring.empty());

    std::map<TermKey, Complex> mix{{TermKey{0, -1, 0}, Complex(1, p)},
                                   {TermKey{0, 1, 0}, Complex(5, p)},
                                   {TermKey{1, -2, 1}, Complex(2, p)}};
    auto s3 = split_parts(BigradedExpansion(w, mix));
    CHECK(s3.ring.terms().size() == 2);
    CHECK(s3.tilde.terms().size() == 1);
    CHECK(s3.tilde.coefficient(TermKey{0, 1, 0}, p).re == Real(5L, p));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 8; ++trial) {
        auto f = random_expansion(w, rng, 30);
        auto parts = split_parts(f);
        BigradedExpansion back = parts.tilde + parts.zero + parts.ring;
        CHECK((back - f).empty());
    }
}

TEST_CASE("maass raise on powers of y") {
    const long p = kBits;
    PrecisionContext ctx(kBits);
    Weights w{3, 1};
    for (long j : {-2L, 0L, 5L}) {
        std::map<TermKey, Complex> t{{TermKey{j, 0, 0}, Complex(1, p)}};
        auto raised = maass_raise(BigradedExpansion(w, t), ctx);
        CHECK(raised.weights().r == 4);
        CHECK(raised.weights().s == 0);
        if (j + w.r == 0) {
            CHECK(raised.empty());
        } else {
            CHECK(raised.terms().size() == 1);
            CHECK(abs(raised.coefficient(TermKey{j, 0, 0}, p).re - Real(j + w.r, p)) <
                  Real::pow2(-(kBits - 8), p));
        }
    }
}

TEST_CASE("laplacian factors both ways") {
    PrecisionContext ctx(kBits);
    std::mt19937_64 rng(23);
    for (Weights w : {Weights{1, 1}, Weights{2, 2}, Weights{1, 3}, Weights{4, 2}}) {
        auto f = random_expansion(w, rng, 25);
        auto via_raise_first = laplacian(f, ctx);
        // The mirror factorization: -raise(lower f) + s(r-1) f.
        auto other = BigradedExpansion(w, {}) - maass_raise(maass_lower(f, ctx), ctx);
        other = other + f.scaled(Complex(w.s * (w.r - 1), kBits));
        Real scale = f.max_abs_coefficient(kBits);
        CHECK(coeff_distance(via_raise_first, other, kBits) <
              Real::pow2(-(kBits - 48), kBits) * (scale + Real(1L, kBits)));
    }
}

TEST_CASE("laplacian eigenfunctions y^k0") {
    PrecisionContext ctx(kBits);
    const long p = kBits;
    Weights w{2, 2};
    long k0 = -4;
    std::map<TermKey, Complex> t{{TermKey{k0, 0, 0}, Complex(1, p)}};
    auto lap = laplacian(BigradedExpansion(w, t), ctx);
    long lambda = k0 * (1 - w.r - w.s - k0);
    CHECK(lap.terms().size() == 1);
    CHECK(abs(lap.coefficient(TermKey{k0, 0, 0}, p).re - Real(lambda, p)) <
          Real::pow2(-(kBits - 16), p));
}

TEST_CASE("eisenstein expansions are laplacian eigenfunctions") {
    PrecisionContext ctx(kBits);
    for (auto [r, s] : {std::pair<long, long>{1, 1}, {2, 2}}) {
        auto e = eisenstein_expansion(r, s, 15, ctx).to_bigraded();
        auto resid = laplacian(e, ctx) + e.scaled(Complex(r + s, kBits));
        Real bound = Real::pow2(-200, kBits) * e.max_abs_coefficient(kBits);
        CHECK(resid.max_abs_coefficient(kBits) < bound);
    }
}

TEST_CASE("omega on the unitary-weight shift") {
    // With g = y^h f (h = (r+s)/2, same weights tag), an eigenfunction of the
    // weighted laplacian with eigenvalue lambda becomes an omega eigenfunction
    // with eigenvalue lambda + h(1-h).
    PrecisionContext ctx(kBits);
    for (auto [r, s] : {std::pair<long, long>{2, 2}, {1, 3}}) {
        long h = (r + s) / 2;
        auto e = eisenstein_expansion(r, s, 8, ctx).to_bigraded();
        std::map<TermKey, Complex> shifted;
        for (const auto& [key, c] : e.terms())
            shifted[TermKey{key.j + h, key.m, key.n}] = c;
        BigradedExpansion g(e.weights(), std::move(shifted));

        long target = -(r + s) + h * (1 - h);
        auto resid = omega(g, ctx) - g.scaled(Complex(target, kBits));
        Real bound = Real::pow2(-200, kBits) * g.max_abs_coefficient(kBits);
        CHECK(resid.max_abs_coefficient(kBits) < bound);
    }
}

TEST_CASE("spectral-parameter bookkeeping is an exact identity") {
    // 1/4 - mu_k^2 = lambda_k + h(1-h) with mu_k = -k + (r+s+1)/2,
    // lambda_k = (k-1)(r+s-k), h = (r+s)/2.
    for (long r = 1; r <= 12; ++r)
        for (long s = r % 2; s <= 12; s += 2) {
            if (s < 1) continue;
            for (long k = 0; k <= std::min(r, s); ++k) {
                mpq_class mu = mpq_class(-2 * k + r + s + 1, 2);
                mpq_class h = mpq_class(r + s, 2);
                mpq_class lhs = mpq_class(1, 4) - mu * mu;
                mpq_class rhs = mpq_class((k - 1) * (r + s - k)) + h * (1 - h);
                CHECK(lhs == rhs);
            }
        }
}

TEST_CASE("eisenstein expansion structure") {
    PrecisionContext ctx(kBits);
    const long p = kBits;
    auto e = eisenstein_expansion(1, 1, 10, ctx);
    CHECK(e.k0() == -2);
    CHECK(e.eigenvalue() == -2);
    CHECK(abs(e.const_b().re - Real(1L, p)) < Real::pow2(-(kBits - 16), p));
    CHECK(e.hol().size() == 20);      // j in {-2, -1}, m in 1..10
    CHECK(e.antihol().size() == 20);
    for (const auto& [jm, c] : e.hol()) {
        CHECK(jm.first >= -2);
        CHECK(jm.first <= -1);
        CHECK(jm.second >= 1);
    }

    auto tiny = eisenstein_expansion(2, 2, 0, ctx);
    CHECK(tiny.hol().empty());
    CHECK(tiny.antihol().empty());
    CHECK(!tiny.const_a().is_zero());

    CHECK_THROWS_AS(eisenstein_expansion(0, 2, 5, ctx), domain_error);
    CHECK_THROWS_AS(eisenstein_expansion(2, 1, 5, ctx), domain_error);
    CHECK_THROWS_AS(eisenstein_expansion(1, 1, -1, ctx), domain_error);
}

TEST_CASE("eigen container validates its shape") {
    const long p = kBits;
    Weights w{1, 1};
    CHECK_THROWS_AS(EigenExpansion(w, 0, Complex(p), Complex(p), {}, {}), domain_error);
    EigenExpansion::Row bad_j{{{0, 1}, Complex(1, p)}};  // j must be <= -s = -1
    CHECK_THROWS_AS(EigenExpansion(w, -2, Complex(p), Complex(p), bad_j, {}), domain_error);
    EigenExpansion::Row bad_m{{{-1, 0}, Complex(1, p)}};
    CHECK_THROWS_AS(EigenExpansion(w, -2, Complex(p), Complex(p), bad_m, {}), domain_error);
}

TEST_CASE("weight (1,1) matches the classical weight-zero series") {
    // y^-1 E(z, 2) has hol coefficients pi^2 sigma_3(m)/(m^2 zeta(4)) at j = -1
    // and pi sigma_3(m)/(2 m^3 zeta(4)) at j = -2; the y-part is
    // y + (pi zeta(3)/(2 zeta(4))) y^-2.
    const long p = 320;
    PrecisionContext ctx(p);
    auto e = eisenstein_expansion(1, 1, 5, ctx);

    Real pi = Real::pi(p);
    Real zeta4 = pow_si(pi, 4) / 90;
    Real tol = Real::pow2(-(p - 48), p);
    for (long m = 1; m <= 5; ++m) {
        Real sig = Real(divisor_sigma(3, m), p);
        Real c1 = pi * pi * sig / (Real(m, p) * m * zeta4);
        Real c2 = pi * sig / (Real(m, p) * m * m * zeta4 * 2);
        CHECK(abs(e.hol().at({-1, m}).re - c1) < tol * c1);
        CHECK(abs(e.hol().at({-2, m}).re - c2) < tol * c1);
        CHECK(abs(e.antihol().at({-1, m}).re - c1) < tol * c1);
        CHECK(abs(e.antihol().at({-2, m}).re - c2) < tol * c1);
    }

    Real a_closed = pi * riemann_zeta_int(3, ctx) / (zeta4 * 2);
    CHECK(abs(e.const_a().re - a_closed) < tol);
    CHECK(abs(e.const_a().re -
              Real("1.744568082131255952350395064342451741280555561779866065040704295569971165552908487233",
                   p)) < Real("1e-80", p));
}

TEST_CASE("coefficient formula evaluated along two paths") {
    PrecisionContext lo(kBits), hi(512);
    auto e = eisenstein_expansion(2, 2, 3, lo);

    // Independent evaluation of a_m^(j) at 512 bits straight from the displayed
    // product.
    const long p = 512;
    long r = 2, s = 2, j = -2, m = 1;
    Real two_pi = Real::pi(p) * 2;
    Real num = pow_si(two_pi, r + s + j) * mul_2si(Real(1L, p), j) * Real::pi(p) *
               Real(mpq_class(alpha_pm(r, s, -j - (r + s) / 2, +1)), p) *
               Real(divisor_sigma(r + s + 1, m), p) * pow_si(Real(m, p), j - 1);
    Real denom = Real(factorial(std::max(r, s)), p) * riemann_zeta_int(r + s + 2, hi);
    Real expect = num / denom;
    CHECK(abs(e.hol().at({j, m}).re - expect) < Real::pow2(-(kBits - 32), p) * expect);
}

TEST_CASE("conjugation swaps the weight pair") {
    PrecisionContext ctx(kBits);
    auto e13 = eisenstein_expansion(1, 3, 4, ctx);
    auto e31 = eisenstein_expansion(3, 1, 4, ctx);
    const long p = kBits;
    Real tol = Real::pow2(-(kBits - 32), p);

    REQUIRE(e13.hol().size() == e31.antihol().size());
    for (const auto& [jm, c] : e13.hol()) {
        Real other = e31.antihol().at(jm).re;
        CHECK(abs(c.re - other) < tol * (abs(other) + Real(1L, p)));
    }
    CHECK(abs(e13.const_a().re - e31.const_a().re) < tol);
}
