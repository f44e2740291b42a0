#pragma once

#include <map>
#include <vector>

#include "ramf/complexval.hpp"
#include "ramf/expansions.hpp"
#include "ramf/precision.hpp"
#include "ramf/qexpansion.hpp"

namespace ramf {

// Fourier input of the completed L-function: decaying rows indexed by
// (y-exponent j, total frequency mu != 0) plus polynomial-growth rows a_j y^j
// whose Mellin regularization produces the rational pole part.
struct LSeriesData {
    Weights w;
    std::map<std::pair<long, long>, Complex> rows;  // (j, mu) -> coefficient
    std::map<long, Complex> const_rows;             // j -> coefficient of y^j
    std::vector<Complex> poles;                     // admissible pole locations

    static LSeriesData from_eigen(const EigenExpansion& f, const PrecisionContext& ctx);
    static LSeriesData from_bigraded(const BigradedExpansion& f, const PrecisionContext& ctx);
    // Weakly holomorphic weight-k cusp expansion: weights (k, 0), rows (0, m),
    // constant row b = a(0) at j = 0; poles {0, k} when b != 0.
    static LSeriesData from_weakly_holomorphic(const QExpansion& f, const PrecisionContext& ctx);
};

// One evaluation of the completed L-function.
struct LValue {
    Complex w;
    Complex value;
    Real error_bound;  // bound on |computed - true| from series tail + rounding
};

// L*(w) by the incomplete-gamma series
//   sum_{j,mu} c Gamma(w+j, 2 pi mu)/(2 pi mu)^(w+j)
//   + i^(r-s) sum_{j,mu} c Gamma(r+s+j-w, 2 pi mu)/(2 pi mu)^(r+s+j-w)
//   + sum_j a_j [ i^(r-s)/(w - r - s - j) - 1/(w + j) ].
// Throws pole_error within 10 * series_tol of an admissible pole.
LValue l_star(const LSeriesData& data, const Complex& w, const PrecisionContext& ctx);

LValue l_star(const EigenExpansion& f, const Complex& w, const PrecisionContext& ctx);
LValue l_star(const BigradedExpansion& f, const Complex& w, const PrecisionContext& ctx);

// L*(w) of a weakly holomorphic weight-k expansion:
//   sum_{m >= m0, m != 0} a(m) Gamma(w, 2 pi m)/(2 pi m)^w
//   + i^k sum a(m) Gamma(k-w, 2 pi m)/(2 pi m)^(k-w) - b (1/w + i^k/(k-w)),
// b = a(0).  Poles {0, k} only when b != 0.
LValue l_star_weakly(const QExpansion& f, const Complex& w, const PrecisionContext& ctx);

// The rational pole part
//   i^(r-s) a/(w-k0-r-s) + i^(r-s) b/(w+k0-1) - a/(w+k0) - b/(w-k0-r-s+1),
// evaluated exactly (terms with zero coefficient are skipped).  A zero
// denominator on a surviving term raises pole_error naming the term.
Complex constant_term_poles(long k0, long r, long s, const Complex& a, const Complex& b,
                            const Complex& w);

// Closed form of the Eisenstein L-function,
//   zeta(w+1) zeta(w-r-s) (2 pi)^(r+s-w) pi / (max(r,s)! zeta(r+s+2))
//   * sum_j 2^j Gamma(j+w) [alpha^+ and alpha^- rows],
// valid away from the gamma and zeta poles of the individual factors
// (pole_error within 10 * series_tol of any of them).
LValue l_star_eisenstein_closed(long r, long s, const Complex& w, const PrecisionContext& ctx);

// |L*(w) - i^(r-s) L*(r+s-w)| for the given data.
Real functional_equation_residual(const LSeriesData& data, const Complex& w,
                                  const PrecisionContext& ctx);
Real functional_equation_residual(const EigenExpansion& f, const Complex& w,
                                  const PrecisionContext& ctx);
Real functional_equation_residual(const QExpansion& f, const Complex& w,
                                  const PrecisionContext& ctx);

// L*(w) of a weakly holomorphic cusp expansion (vanishing constant term) by
// direct numerical Mellin transform along the imaginary axis; slow independent
// cross-check of the series route.
LValue l_star_quadrature_oracle(const QExpansion& f, const Complex& w,
                                const PrecisionContext& ctx);

} // namespace ramf
