#pragma once

#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "ramf/complexval.hpp"
#include "ramf/lfunctions.hpp"
#include "ramf/precision.hpp"
#include "ramf/qexpansion.hpp"

namespace ramf {

// Continued-fraction identification of a numerically real value as an exact
// rational of bounded height, re-verified by exact substitution.
struct RationalCertificate {
    mpz_class numerator;
    mpz_class denominator;  // > 0, coprime to numerator
    Real achieved_error;    // |Re x - numerator/denominator|, exact re-substitution
    long height_bound;

    mpq_class value() const { return {numerator, denominator}; }
};

// Best convergent of Re x with denominator <= height_bound and error <= tol,
// or nullopt when no convergent qualifies.  |Im x| > tol is a domain_error.
std::optional<RationalCertificate> rationality_certificate(const Complex& x, long height_bound,
                                                           const Real& tol,
                                                           const PrecisionContext& ctx);

// Exact-rational eigenvalue of the Hecke action on the class of f modulo
// derivatives: lambda and g with  T_p f - lambda f = D^(k-1) g,  g spanned by
// the pole-bounded weight 2-k basis.
struct EigenclassResult {
    mpq_class eigenvalue;
    QExpansion witness;
};
EigenclassResult hecke_eigenclass_check(const QExpansion& f, long p, const PrecisionContext& ctx);

// L*(j) for j = 1..k-1.
std::map<long, LValue> critical_lvalues(const QExpansion& f, const PrecisionContext& ctx);

struct ManinRatioEntry {
    Complex ratio;                                  // L*(j) / omega(parity of j)
    std::optional<RationalCertificate> certificate; // nullopt = uncertified
};

struct ManinReport {
    long k = 0;
    std::map<long, LValue> critical_values;  // j = 1..k-1
    Complex omega_plus{64};                  // L*(j_plus), smallest usable odd slot >= 3
    Complex omega_minus{64};                 // L*(j_minus), smallest usable even slot >= 2
    long j_plus = 0;
    long j_minus = 0;
    std::map<long, ManinRatioEntry> ratios;  // j in 2..k-2 only
    std::vector<long> excluded;              // {1, k-1}: reported above, never certified
    bool all_certified = false;              // every ratio in `ratios` carries a certificate

    std::optional<mpq_class> hecke_eigenvalue;  // present when the eigenclass check ran
};

// Critical-value rationality report: normalizes odd and even critical L-values
// by the first usable value of each parity and certifies the ratios.  Runs the
// Hecke eigenclass check first whenever f has a pole or a weight outside the
// one-dimensional range {12, 16, 18, 20, 22, 26}.
ManinReport manin_check(const QExpansion& f, const PrecisionContext& ctx,
                        long height_bound = 1000000);

} // namespace ramf
