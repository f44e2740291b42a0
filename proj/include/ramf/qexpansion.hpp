#pragma once

#include <map>
#include <vector>

#include <gmpxx.h>

#include "ramf/precision.hpp"

namespace ramf {

// Truncated Laurent series in q with exact rational coefficients and a weight tag.
// Coefficients are known (and queryable) exactly for every exponent <= valid_to();
// exponents above that bound are unknown, not zero.
class QExpansion {
public:
    QExpansion(long weight, long valid_to, std::map<long, mpq_class> coeffs);

    long weight() const { return weight_; }
    long valid_to() const { return valid_to_; }
    const std::map<long, mpq_class>& coeffs() const { return coeffs_; }

    // Exact coefficient of q^m; throws truncation_error beyond valid_to().
    mpq_class coefficient(long m) const;
    bool is_zero() const { return coeffs_.empty(); }
    // Lowest exponent with a nonzero coefficient; requires a nonzero series.
    long min_exponent() const;
    // max(0, -min_exponent()) for nonzero series, 0 for the zero series.
    long pole_order() const;

    QExpansion truncated(long new_valid_to) const;

private:
    long weight_;
    long valid_to_;
    std::map<long, mpq_class> coeffs_;
};

QExpansion q_add(const QExpansion& a, const QExpansion& b);
QExpansion q_sub(const QExpansion& a, const QExpansion& b);
QExpansion q_scale(const QExpansion& a, const mpq_class& c);
QExpansion q_mul(const QExpansion& a, const QExpansion& b);
// Multiplicative inverse of a nonzero series; valid to valid_to - 2 min_exponent.
QExpansion q_inv(const QExpansion& a);
QExpansion q_pow(const QExpansion& a, long e);  // e may be negative

enum class Generator { E4, E6, Delta, Jinv };

// E4, E6, the discriminant Delta = (E4^3 - E6^2)/1728, or the j-invariant
// J = E4^3/Delta, each exact through q^truncation.
QExpansion q_generator(Generator g, long truncation);

// (q d/dq)^e f: multiplies the coefficient of q^m by m^e and raises the weight
// tag by 2e.
QExpansion d_power(const QExpansion& f, long e);

// Hecke operator T_p on weight-k series of level one (p prime):
// a_out(m) = a(pm) + p^(k-1) a(m/p).  Output valid to floor(valid_to / p).
QExpansion hecke_tp(const QExpansion& f, long p);

// Row-reduced basis {f_{k,n}} of weakly holomorphic forms of even weight k with
// f_{k,n} = q^-n + O(q^(ell+1)), ell = dim M_k - 1, for every attainable pole
// order n <= max_pole.  Pole orders in [0, max_pole] with no such form are
// reported in gaps.
struct WeaklyHoloBasis {
    long weight = 0;
    long ell = -1;                       // dim M_k - 1
    std::map<long, QExpansion> by_pole;  // pole order n -> f_{k,n}
    std::vector<long> gaps;              // unattainable n in [0, max_pole]
};
WeaklyHoloBasis weakly_holo_basis(long k, long max_pole, const PrecisionContext& ctx);

// dim M_k for level one (0 for negative or odd k).
long dim_modular_forms(long k);

} // namespace ramf
