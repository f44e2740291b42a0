#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "ramf/errors.hpp"
#include "ramf/expansions.hpp"
#include "ramf/io.hpp"
#include "ramf/lfunctions.hpp"
#include "ramf/periods.hpp"
#include "ramf/precision.hpp"
#include "ramf/qexpansion.hpp"
#include "ramf/rationality.hpp"

using namespace ramf;
using nlohmann::json;

TEST_CASE("q-expansion documents round trip bit-exactly") {
    std::map<long, mpq_class> coeffs{
        {-2, mpq_class("123456789012345678901234567890/7")},
        {0, mpq_class(-5)},
        {3, mpq_class(22, 7)},
    };
    QExpansion f(-10, 25, coeffs);
    std::string text = write_qexpansion(f);
    CHECK(peek_kind(text) == ExpansionKind::qexp);

    QExpansion back = read_qexpansion(text);
    CHECK(back.weight() == -10);
    CHECK(back.valid_to() == 25);
    CHECK(back.coeffs() == f.coeffs());
}

TEST_CASE("bigraded documents round trip") {
    const long p = 256;
    Weights w{2, 2};
    std::map<TermKey, Complex> terms;
    terms[TermKey{-1, 2, 1}] = Complex{Real::pi(p), Real("2.25", p)};
    terms[TermKey{0, 1, 0}] = Complex{Real(mpq_class(-7, 3), p), Real(p)};
    BigradedExpansion f(w, terms);

    std::string text = write_bigraded(f);
    CHECK(peek_kind(text) == ExpansionKind::bigraded);

    BigradedExpansion back = read_bigraded(text);
    CHECK(back.weights() == w);
    REQUIRE(back.terms().size() == f.terms().size());
    for (auto& [key, val] : f.terms()) {
        auto it = back.terms().find(key);
        REQUIRE(it != back.terms().end());
        CHECK(it->second == val);
    }
}

TEST_CASE("eigen documents round trip") {
    PrecisionContext ctx(192, 16);
    auto e = eisenstein_expansion(1, 1, 5, ctx);
    std::string text = write_eigen(e);
    CHECK(peek_kind(text) == ExpansionKind::eigen);

    auto back = read_eigen(text);
    CHECK(back.weights() == e.weights());
    CHECK(back.k0() == e.k0());
    CHECK(back.const_a() == e.const_a());
    CHECK(back.const_b() == e.const_b());
    REQUIRE(back.hol().size() == e.hol().size());
    REQUIRE(back.antihol().size() == e.antihol().size());
    for (auto& [key, val] : e.hol()) CHECK(back.hol().at(key) == val);
    for (auto& [key, val] : e.antihol()) CHECK(back.antihol().at(key) == val);
}

TEST_CASE("eigen term rows must carry exactly one frequency") {
    PrecisionContext ctx(192, 16);
    auto e = eisenstein_expansion(1, 1, 3, ctx);
    json doc = json::parse(write_eigen(e));

    json* terms = nullptr;
    for (auto& [key, value] : doc.items())
        if (value.is_array() && !value.empty() && value[0].is_array()) terms = &value;
    REQUIRE(terms != nullptr);

    json both_set = (*terms)[0];
    both_set[1] = 2;
    both_set[2] = 3;
    json mutated = doc;
    for (auto& [key, value] : mutated.items())
        if (value.is_array() && !value.empty() && value[0].is_array()) value.push_back(both_set);
    CHECK_THROWS_AS(read_eigen(mutated.dump()), domain_error);

    json both_zero = (*terms)[0];
    both_zero[1] = 0;
    both_zero[2] = 0;
    json mutated2 = doc;
    for (auto& [key, value] : mutated2.items())
        if (value.is_array() && !value.empty() && value[0].is_array()) value.push_back(both_zero);
    CHECK_THROWS_AS(read_eigen(mutated2.dump()), domain_error);
}

TEST_CASE("period polynomial documents round trip") {
    const long p = 256;
    std::map<std::pair<long, long>, LValue> lv;
    lv[{0, 1}] = LValue{Complex(1, p), Complex(Real(mpq_class(5, 2), p)), Real(p)};
    auto poly = truncated_period_polynomial(lv, 1, 1);

    std::string text = write_period_polynomial(poly);
    auto back = read_period_polynomial(text);
    CHECK(back.degree_bound == poly.degree_bound);
    CHECK(back.source_weights == poly.source_weights);
    CHECK(back.component_k == poly.component_k);
    CHECK(back.truncated_slots == poly.truncated_slots);
    REQUIRE(back.coeffs.size() == poly.coeffs.size());
    for (size_t i = 0; i < poly.coeffs.size(); ++i) CHECK(back.coeffs[i] == poly.coeffs[i]);

    PrecisionContext ctx(128, 20);
    auto sigma = eichler_period_polynomial(q_generator(Generator::Delta, 20), ctx);
    auto sback = read_period_polynomial(write_period_polynomial(sigma));
    CHECK(sback.degree_bound == 10);
    for (size_t i = 0; i < sigma.coeffs.size(); ++i) CHECK(sback.coeffs[i] == sigma.coeffs[i]);
}

TEST_CASE("period polynomial documents are validated") {
    const long p = 256;
    std::map<std::pair<long, long>, LValue> lv;
    lv[{0, 1}] = LValue{Complex(1, p), Complex(Real(mpq_class(5, 2), p)), Real(p)};
    auto poly = truncated_period_polynomial(lv, 1, 1);
    json doc = json::parse(write_period_polynomial(poly));

    json truncated = doc;
    bool dropped = false;
    for (auto& [key, value] : truncated.items())
        if (value.is_array() && value.size() == 3 && !dropped) {
            value.erase(value.size() - 1);
            dropped = true;
        }
    REQUIRE(dropped);
    CHECK_THROWS_AS(read_period_polynomial(truncated.dump()), domain_error);

    json bad_slot = doc;
    bool slotted = false;
    for (auto& [key, value] : bad_slot.items())
        if (value.is_array() && value == json::array({0, 2})) {
            value = json::array({0, 99});
            slotted = true;
        }
    REQUIRE(slotted);
    CHECK_THROWS_AS(read_period_polynomial(bad_slot.dump()), domain_error);
}

TEST_CASE("kind detection and mismatches") {
    PrecisionContext ctx(192, 16);
    QExpansion f(12, 10, {{1, mpq_class(1)}});
    auto e = eisenstein_expansion(1, 1, 3, ctx);
    std::string qtext = write_qexpansion(f);
    std::string etext = write_eigen(e);

    CHECK_THROWS_AS(read_qexpansion(etext), domain_error);
    CHECK_THROWS_AS(read_eigen(qtext), domain_error);
    CHECK_THROWS_AS(read_bigraded(qtext), domain_error);

    CHECK_THROWS_AS(peek_kind("this is not json"), domain_error);
    CHECK_THROWS_AS(peek_kind("{}"), domain_error);
    CHECK_THROWS_AS(read_qexpansion("{\"kind\": \"qexp\"}"), domain_error);
}

TEST_CASE("corrupt rational and precision fields are rejected") {
    QExpansion f(12, 10, {{1, mpq_class(3, 982451653)}});
    std::string text = write_qexpansion(f);
    auto pos = text.find("982451653");
    REQUIRE(pos != std::string::npos);
    std::string zero_den = text.substr(0, pos) + "0" + text.substr(pos + 9);
    CHECK_THROWS_AS(read_qexpansion(zero_den), domain_error);

    const long p = 256;
    BigradedExpansion g(Weights{1, 1}, {{TermKey{-1, 1, 0}, Complex(3, p)}});
    json doc = json::parse(write_bigraded(g));
    bool fixed = false;
    for (auto& [key, value] : doc.items())
        if (value.is_number_integer() && value.get<long>() == 256) {
            value = 0;
            fixed = true;
        }
    REQUIRE(fixed);
    CHECK_THROWS_AS(read_bigraded(doc.dump()), domain_error);
}

TEST_CASE("result reports serialize as json") {
    const long p = 128;
    std::vector<LValue> values{
        LValue{Complex(2, p), Complex{Real("0.125", p), Real(p)}, Real::pow2(-100, p)}};
    std::vector<Complex> rejected{Complex(3, p)};
    std::string text = write_lvalue_records(values, rejected);
    auto doc = json::parse(text);
    CHECK(!doc.empty());
    CHECK(text.find("pole") != std::string::npos);

    PrecisionContext ctx(128, 32);
    auto report = manin_check(q_generator(Generator::Delta, 32), ctx);
    std::string rtext = write_manin_report(report);
    auto rdoc = json::parse(rtext);
    CHECK(!rdoc.empty());
}
