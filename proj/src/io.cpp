#include "ramf/io.hpp"

#include <json.hpp>

#include "ramf/errors.hpp"

namespace ramf {

namespace {

using nlohmann::json;

json complex_out(const Complex& c) {
    return json::array({c.re.to_decimal(), c.im.to_decimal()});
}

Complex complex_in(const json& a, long prec) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_string())
        throw domain_error("expected a [re, im] decimal-string pair");
    return {Real(a[0].get<std::string>(), prec), Real(a[1].get<std::string>(), prec)};
}

mpz_class mpz_in(const std::string& s) {
    try {
        return mpz_class(s);
    } catch (const std::invalid_argument&) {
        throw domain_error("malformed integer literal '" + s + "'");
    }
}

json parse(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw domain_error("malformed JSON document");
    return doc;
}

std::string kind_of(const json& doc) {
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw domain_error("document has no kind field");
    return doc["kind"].get<std::string>();
}

void expect_kind(const json& doc, const char* want) {
    std::string got = kind_of(doc);
    if (got != want)
        throw domain_error("expected a '" + std::string(want) + "' document, found '" + got + "'");
}

long precision_of(const json& doc) {
    long p = doc.value("precision_bits", static_cast<long>(64));
    if (p < 2 || p > (1L << 22)) throw domain_error("precision_bits out of range");
    return p;
}

long complex_prec(const Complex& c) { return std::max(c.re.prec(), c.im.prec()); }

[[noreturn]] void rethrow_malformed(const json::exception& e) {
    throw domain_error(std::string("malformed document: ") + e.what());
}

} // namespace

ExpansionKind peek_kind(const std::string& text) {
    std::string k = kind_of(parse(text));
    if (k == "bigraded") return ExpansionKind::bigraded;
    if (k == "eigen") return ExpansionKind::eigen;
    if (k == "qexp") return ExpansionKind::qexp;
    throw domain_error("unknown expansion kind '" + k + "'");
}

std::string write_qexpansion(const QExpansion& f) {
    json terms = json::array();
    for (const auto& [m, c] : f.coeffs())
        terms.push_back({m, c.get_num().get_str(), c.get_den().get_str()});
    json doc{{"kind", "qexp"},
             {"weight", f.weight()},
             {"valid_to", f.valid_to()},
             {"terms", terms}};
    return doc.dump(1);
}

QExpansion read_qexpansion(const std::string& text) {
    try {
        json doc = parse(text);
        expect_kind(doc, "qexp");
        std::map<long, mpq_class> coeffs;
        for (const auto& t : doc.at("terms")) {
            if (!t.is_array() || t.size() != 3)
                throw domain_error("qexp term must be [m, numerator, denominator]");
            mpz_class den = mpz_in(t[2].get<std::string>());
            if (den == 0) throw domain_error("zero denominator in qexp term");
            mpq_class v(mpz_in(t[1].get<std::string>()), den);
            v.canonicalize();
            coeffs[t[0].get<long>()] = v;
        }
        return QExpansion(doc.at("weight").get<long>(), doc.at("valid_to").get<long>(),
                          std::move(coeffs));
    } catch (const json::exception& e) {
        rethrow_malformed(e);
    }
}

std::string write_bigraded(const BigradedExpansion& f) {
    long prec = 64;
    json terms = json::array();
    for (const auto& [key, c] : f.terms()) {
        prec = std::max(prec, complex_prec(c));
        terms.push_back({key.j, key.m, key.n, c.re.to_decimal(), c.im.to_decimal()});
    }
    json doc{{"kind", "bigraded"},
             {"r", f.weights().r},
             {"s", f.weights().s},
             {"precision_bits", prec},
             {"terms", terms}};
    return doc.dump(1);
}

BigradedExpansion read_bigraded(const std::string& text) {
    try {
        json doc = parse(text);
        expect_kind(doc, "bigraded");
        const long prec = precision_of(doc);
        std::map<TermKey, Complex> terms;
        for (const auto& t : doc.at("terms")) {
            if (!t.is_array() || t.size() != 5)
                throw domain_error("bigraded term must be [j, m, n, re, im]");
            TermKey key{t[0].get<long>(), t[1].get<long>(), t[2].get<long>()};
            terms.emplace(key, Complex(Real(t[3].get<std::string>(), prec),
                                       Real(t[4].get<std::string>(), prec)));
        }
        return BigradedExpansion(Weights{doc.at("r").get<long>(), doc.at("s").get<long>()},
                                 std::move(terms));
    } catch (const json::exception& e) {
        rethrow_malformed(e);
    }
}

std::string write_eigen(const EigenExpansion& f) {
    long prec = std::max({64L, complex_prec(f.const_a()), complex_prec(f.const_b())});
    json terms = json::array();
    for (const auto& [key, c] : f.hol()) {
        if (key.second == 0) throw domain_error("holomorphic eigen row with zero frequency");
        prec = std::max(prec, complex_prec(c));
        terms.push_back({key.first, key.second, 0L, c.re.to_decimal(), c.im.to_decimal()});
    }
    for (const auto& [key, c] : f.antihol()) {
        if (key.second == 0) throw domain_error("antiholomorphic eigen row with zero frequency");
        prec = std::max(prec, complex_prec(c));
        terms.push_back({key.first, 0L, key.second, c.re.to_decimal(), c.im.to_decimal()});
    }
    json doc{{"kind", "eigen"},
             {"r", f.weights().r},
             {"s", f.weights().s},
             {"k0", f.k0()},
             {"precision_bits", prec},
             {"const_a", complex_out(f.const_a())},
             {"const_b", complex_out(f.const_b())},
             {"terms", terms}};
    return doc.dump(1);
}

EigenExpansion read_eigen(const std::string& text) {
    try {
        json doc = parse(text);
        expect_kind(doc, "eigen");
        const long prec = precision_of(doc);
        EigenExpansion::Row hol, antihol;
        for (const auto& t : doc.at("terms")) {
            if (!t.is_array() || t.size() != 5)
                throw domain_error("eigen term must be [j, m, n, re, im]");
            const long j = t[0].get<long>(), m = t[1].get<long>(), n = t[2].get<long>();
            Complex c(Real(t[3].get<std::string>(), prec), Real(t[4].get<std::string>(), prec));
            if (m != 0 && n != 0)
                throw domain_error("eigen term has both frequencies set; rows are pure q or qbar");
            if (m == 0 && n == 0)
                throw domain_error("eigen term with zero frequency belongs in const_a/const_b");
            auto& row = n == 0 ? hol : antihol;
            row.emplace(std::make_pair(j, n == 0 ? m : n), std::move(c));
        }
        return EigenExpansion(Weights{doc.at("r").get<long>(), doc.at("s").get<long>()},
                              doc.at("k0").get<long>(), complex_in(doc.at("const_a"), prec),
                              complex_in(doc.at("const_b"), prec), std::move(hol),
                              std::move(antihol));
    } catch (const json::exception& e) {
        rethrow_malformed(e);
    }
}

std::string write_period_polynomial(const PeriodPolynomial& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs) coeffs.push_back(complex_out(c));
    json doc{{"kind", "period_polynomial"},
             {"degree_bound", p.degree_bound},
             {"weights_meta",
              {{"r", p.source_weights.r}, {"s", p.source_weights.s}, {"k", p.component_k}}},
             {"truncated_slots", p.truncated_slots},
             {"precision_bits", p.prec()},
             {"coefficients", coeffs}};
    return doc.dump(1);
}

PeriodPolynomial read_period_polynomial(const std::string& text) {
    try {
        json doc = parse(text);
        expect_kind(doc, "period_polynomial");
        const long prec = precision_of(doc);
        PeriodPolynomial p;
        p.degree_bound = doc.at("degree_bound").get<long>();
        if (p.degree_bound < 0) throw domain_error("negative degree bound");
        const auto& coeffs = doc.at("coefficients");
        if (coeffs.size() != static_cast<size_t>(p.degree_bound) + 1)
            throw domain_error("coefficient count does not match the degree bound");
        for (const auto& c : coeffs) p.coeffs.push_back(complex_in(c, prec));
        const auto& meta = doc.at("weights_meta");
        p.source_weights = Weights{meta.at("r").get<long>(), meta.at("s").get<long>()};
        p.component_k = meta.at("k").get<long>();
        for (const auto& t : doc.at("truncated_slots")) {
            long slot = t.get<long>();
            if (slot < 0 || slot > p.degree_bound)
                throw domain_error("truncated slot outside the coefficient range");
            p.truncated_slots.push_back(slot);
        }
        return p;
    } catch (const json::exception& e) {
        rethrow_malformed(e);
    }
}

std::string write_lvalue_records(const std::vector<LValue>& values,
                                 const std::vector<Complex>& rejected) {
    json records = json::array();
    for (const auto& v : values) {
        records.push_back({{"w", complex_out(v.w)},
                           {"re", v.value.re.to_decimal()},
                           {"im", v.value.im.to_decimal()},
                           {"error_bound", v.error_bound.to_decimal()},
                           {"pole_flag", false}});
    }
    for (const auto& w : rejected) records.push_back({{"w", complex_out(w)}, {"pole_flag", true}});
    json doc{{"kind", "lvalues"}, {"records", records}};
    return doc.dump(1);
}

std::string write_manin_report(const ManinReport& rep) {
    json values = json::array();
    for (const auto& [j, v] : rep.critical_values) {
        json row{{"j", j},
                 {"value", complex_out(v.value)},
                 {"error_bound", v.error_bound.to_decimal()},
                 {"parity", j % 2 != 0 ? "odd" : "even"}};
        auto rit = rep.ratios.find(j);
        if (rit != rep.ratios.end()) {
            row["ratio"] = complex_out(rit->second.ratio);
            if (rit->second.certificate) {
                const RationalCertificate& cert = *rit->second.certificate;
                row["certificate"] = {{"numerator", cert.numerator.get_str()},
                                      {"denominator", cert.denominator.get_str()},
                                      {"error", cert.achieved_error.to_decimal()},
                                      {"height_bound", cert.height_bound}};
                row["certified"] = true;
            } else {
                row["certified"] = false;
                row["refusal"] = "no convergent within the height bound";
            }
        } else {
            row["certified"] = false;
            row["refusal"] = "outside the certified critical range";
        }
        values.push_back(std::move(row));
    }
    json doc{{"kind", "manin_report"},
             {"weight", rep.k},
             {"j_plus", rep.j_plus},
             {"j_minus", rep.j_minus},
             {"omega_plus", complex_out(rep.omega_plus)},
             {"omega_minus", complex_out(rep.omega_minus)},
             {"excluded", rep.excluded},
             {"all_certified", rep.all_certified},
             {"values", values}};
    if (rep.hecke_eigenvalue)
        doc["hecke_eigenvalue"] = rep.hecke_eigenvalue->get_num().get_str() + "/" +
                                  rep.hecke_eigenvalue->get_den().get_str();
    else
        doc["hecke_eigenvalue"] = nullptr;
    return doc.dump(1);
}

} // namespace ramf
