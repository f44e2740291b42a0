#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "ramf/errors.hpp"
#include "ramf/precision.hpp"
#include "ramf/qexpansion.hpp"
#include "ramf/rationality.hpp"

using namespace ramf;

namespace {

constexpr long kBits = 256;

const char* kLDelta2 =
    "0.003707710464948065294503213872950114362391823326823677758160596232040452";

mpq_class ratio_of(const ManinReport& report, long j) {
    auto it = report.ratios.find(j);
    REQUIRE(it != report.ratios.end());
    REQUIRE(it->second.certificate.has_value());
    return it->second.certificate->value();
}

} // namespace

TEST_CASE("rational identification") {
    PrecisionContext ctx(kBits);
    const long p = kBits;
    Real tol("1e-30", p);

    auto half = rationality_certificate(Complex(Real(mpq_class(1, 2), p)), 10, tol, ctx);
    REQUIRE(half.has_value());
    CHECK(half->value() == mpq_class(1, 2));
    CHECK(half->achieved_error.is_zero());

    auto seven = rationality_certificate(Complex(7, p), 10, tol, ctx);
    REQUIRE(seven.has_value());
    CHECK(seven->value() == 7);

    CHECK(!rationality_certificate(Complex(Real::pi(p)), 1000000, tol, ctx).has_value());

    Real x = Real(mpq_class(-691, 2730), p) + Real("1e-40", p);
    auto near = rationality_certificate(Complex(x), 10000, tol, ctx);
    REQUIRE(near.has_value());
    CHECK(near->value() == mpq_class(-691, 2730));
    CHECK(near->achieved_error < Real("1e-39", p));
    CHECK(!near->achieved_error.is_zero());

    // A nearby rational of large height must not be reached at small height bounds.
    Real off = Real(mpq_class(1, 3), p) + Real("0.01", p);
    CHECK(!rationality_certificate(Complex(off), 10, Real("1e-3", p), ctx).has_value());

    CHECK_THROWS_AS(
        rationality_certificate(Complex{Real(1L, p), Real(mpq_class(1, 2), p)}, 10, tol, ctx),
        domain_error);
}

TEST_CASE("hecke eigenclass of the discriminant") {
    PrecisionContext ctx(192, 48);
    auto delta = q_generator(Generator::Delta, 48);

    auto r2 = hecke_eigenclass_check(delta, 2, ctx);
    CHECK(r2.eigenvalue == -24);
    CHECK(r2.witness.is_zero());

    auto r3 = hecke_eigenclass_check(delta, 3, ctx);
    CHECK(r3.eigenvalue == 252);
    CHECK(r3.witness.is_zero());

    CHECK_THROWS_AS(hecke_eigenclass_check(QExpansion(12, 48, {}), 2, ctx), domain_error);
}

TEST_CASE("hecke eigenclass with a pole") {
    PrecisionContext ctx(192, 48);
    auto basis = weakly_holo_basis(12, 1, ctx);
    const auto& f = basis.by_pole.at(1);

    auto r = hecke_eigenclass_check(f, 2, ctx);
    CHECK(r.eigenvalue == -24);
    CHECK(!r.witness.is_zero());

    // Shifting by an 11-fold derivative moves nothing in the class.
    auto low = weakly_holo_basis(-10, 2, ctx);
    auto shifted = q_add(f, d_power(low.by_pole.at(2), 11));
    auto rs = hecke_eigenclass_check(shifted, 2, ctx);
    CHECK(rs.eigenvalue == -24);
}

TEST_CASE("a mixed class is rejected") {
    PrecisionContext ctx(192, 48);
    auto e4 = q_generator(Generator::E4, 48);
    CHECK_THROWS_AS(hecke_eigenclass_check(q_pow(e4, 4), 2, ctx), certification_error);
}

TEST_CASE("critical values of the discriminant") {
    PrecisionContext ctx(kBits, 64);
    const long p = kBits;
    auto delta = q_generator(Generator::Delta, 64);
    auto values = critical_lvalues(delta, ctx);

    CHECK(values.size() == 11);
    for (long j = 1; j <= 11; ++j) {
        REQUIRE(values.count(j) == 1);
        CHECK(values.at(j).value.is_finite());
        CHECK(abs(values.at(j).value.im) < Real("1e-50", p));
    }
    CHECK(abs(values.at(2).value.re - Real(std::string(kLDelta2), p)) < Real("1e-60", p));
    for (long j = 1; j <= 5; ++j)
        CHECK(abs(values.at(j).value - values.at(12 - j).value) < Real("1e-50", p));

    auto none = critical_lvalues(QExpansion(12, 64, {}), ctx);
    for (auto& [j, lv] : none) CHECK(lv.value.is_zero());
}

TEST_CASE("classical critical ratios") {
    PrecisionContext ctx(kBits, 64);
    auto delta = q_generator(Generator::Delta, 64);
    auto report = manin_check(delta, ctx);

    CHECK(report.k == 12);
    CHECK(report.j_minus == 2);
    CHECK(report.j_plus == 3);
    CHECK(report.all_certified);
    CHECK(!report.hecke_eigenvalue.has_value());
    CHECK(report.excluded == std::vector<long>{1, 11});
    CHECK(report.ratios.count(1) == 0);
    CHECK(report.ratios.count(11) == 0);
    CHECK(abs(report.omega_minus.re - Real(std::string(kLDelta2), kBits)) <
          Real("1e-60", kBits));

    const std::map<long, mpq_class> expected{
        {2, {1, 1}},   {3, {1, 1}},   {4, {25, 48}}, {5, {9, 14}}, {6, {5, 12}},
        {7, {9, 14}},  {8, {25, 48}}, {9, {1, 1}},   {10, {1, 1}}};
    for (auto& [j, want] : expected) CHECK(ratio_of(report, j) == want);

    CHECK_THROWS_AS(manin_check(QExpansion(12, 64, {}), ctx), domain_error);
}

TEST_CASE("ratios are class invariants") {
    PrecisionContext ctx(192, 48);
    auto basis = weakly_holo_basis(12, 1, ctx);
    const auto& f = basis.by_pole.at(1);
    auto low = weakly_holo_basis(-10, 2, ctx);
    auto shifted = q_add(f, d_power(low.by_pole.at(2), 11));

    auto a = manin_check(f, ctx);
    auto b = manin_check(shifted, ctx);

    REQUIRE(a.hecke_eigenvalue.has_value());
    REQUIRE(b.hecke_eigenvalue.has_value());
    CHECK(*a.hecke_eigenvalue == -24);
    CHECK(*b.hecke_eigenvalue == -24);

    for (long j : {5L, 7L, 9L}) {
        auto ra = a.ratios.find(j);
        auto rb = b.ratios.find(j);
        REQUIRE(ra != a.ratios.end());
        REQUIRE(rb != b.ratios.end());
        REQUIRE(ra->second.certificate.has_value());
        REQUIRE(rb->second.certificate.has_value());
        CHECK(ra->second.certificate->value() == rb->second.certificate->value());
    }
    CHECK(a.excluded == std::vector<long>{1, 11});
}
