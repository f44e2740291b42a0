#pragma once

#include <string>

#include "ramf/expansions.hpp"
#include "ramf/lfunctions.hpp"
#include "ramf/periods.hpp"
#include "ramf/qexpansion.hpp"
#include "ramf/rationality.hpp"

namespace ramf {

// JSON documents, self-describing via a "kind" field.  Rational data travels
// as decimal-integer strings (bit-exact round trip); floating-point data as
// full-precision decimal strings plus the precision in bits.

enum class ExpansionKind { bigraded, eigen, qexp };

// "kind" of a serialized expansion document.
ExpansionKind peek_kind(const std::string& text);

std::string write_qexpansion(const QExpansion& f);
QExpansion read_qexpansion(const std::string& text);

std::string write_bigraded(const BigradedExpansion& f);
BigradedExpansion read_bigraded(const std::string& text);

// Eigen rows share one term table: holomorphic rows are encoded [j, m, 0,
// re, im], antiholomorphic rows [j, 0, n, re, im]; a row with both
// frequencies nonzero (or both zero) is malformed.
std::string write_eigen(const EigenExpansion& f);
EigenExpansion read_eigen(const std::string& text);

std::string write_period_polynomial(const PeriodPolynomial& p);
PeriodPolynomial read_period_polynomial(const std::string& text);

// One CLI result row per evaluation point; pole_flag marks points rejected by
// pole proximity (value fields absent).
std::string write_lvalue_records(const std::vector<LValue>& values,
                                 const std::vector<Complex>& rejected);

std::string write_manin_report(const ManinReport& rep);

// Parse failures raise domain_error with the offending context.
} // namespace ramf
