#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ramf/complexval.hpp"
#include "ramf/expansions.hpp"
#include "ramf/lfunctions.hpp"
#include "ramf/precision.hpp"
#include "ramf/qexpansion.hpp"

namespace ramf {

// Element of SL2(Z).
struct GroupElement {
    mpz_class a, b, c, d;

    GroupElement(mpz_class a_, mpz_class b_, mpz_class c_, mpz_class d_);
    static GroupElement identity() { return {1, 0, 0, 1}; }
    static GroupElement S() { return {0, -1, 1, 0}; }
    static GroupElement T() { return {1, 1, 0, 1}; }
    static GroupElement U() { return {1, -1, 1, 0}; }  // U = T S

    GroupElement operator*(const GroupElement& o) const;
    GroupElement inverse() const;
    Complex moebius(const Complex& z) const;
};

// Polynomial of degree <= degree_bound with complex coefficients, carrying the
// bookkeeping of the cocycle it came from.  truncated_slots lists coefficient
// indices that were deliberately zeroed (not computed) and must be excluded
// from comparisons.
struct PeriodPolynomial {
    long degree_bound = 0;
    std::vector<Complex> coeffs;  // size degree_bound + 1
    Weights source_weights;
    long component_k = 0;
    std::vector<long> truncated_slots;

    Complex eval(const Complex& zeta) const;
    long prec() const;
    Real max_abs_coefficient(long prec) const;
};

PeriodPolynomial pp_zero(long degree_bound, long prec);
PeriodPolynomial pp_add(const PeriodPolynomial& p, const PeriodPolynomial& q);
PeriodPolynomial pp_sub(const PeriodPolynomial& p, const PeriodPolynomial& q);
PeriodPolynomial pp_scale(const PeriodPolynomial& p, const Complex& c);

// Weight -degree_bound right action (P || g)(zeta) = P(g zeta) (c zeta + d)^degree_bound,
// computed by exact integer binomial convolution of the coefficients.  The
// three-argument form checks weight_exponent == -degree_bound and exists so a
// caller's weight bookkeeping is validated rather than assumed.
PeriodPolynomial slash_action(const PeriodPolynomial& p, const GroupElement& g);
PeriodPolynomial slash_action(const PeriodPolynomial& p, const GroupElement& g,
                              long weight_exponent);

// The coboundary generator evaluated at S: psi_0(S) = zeta^D - 1.
PeriodPolynomial psi0_at_S(long degree_bound, long prec);

// Exact element of Q(i).
struct GaussianRational {
    mpq_class re, im;
};

// alpha_n = i^(-l-2n) ((r-k) binom(s-k+1, l-n) binom(r-k-1, n)
//                      - (s-k) binom(s-k-1, l-n) binom(r-k+1, n)),
// the n-th contribution to the zeta^l slot of the expanded cocycle kernel.
// Requires 0 <= k <= min(r,s), r = s (mod 4), 1 <= l <= r+s-2k-1, 0 <= n <= l.
GaussianRational alpha_n_coeff(long r, long s, long k, long l, long n);

// Exact integer A(l) with sum_{n=0}^{l} alpha_n = i^(-l) A(l).
mpz_class alpha_sum_integer(long r, long s, long k, long l);

// Period polynomial packaged from critical L-values: coefficient of zeta^l is
// sum_k i^(1-l) A(l; r,s,k) L*_{F_k}(k+l), the sum running over the component
// indices k present in the map.  Every (k, l) with 1 <= l <= r+s-2k-1 must be
// supplied; slot 0 and each component's leading slot r+s-2k are truncated.
PeriodPolynomial truncated_period_polynomial(
    const std::map<std::pair<long, long>, LValue>& lvalues, long r, long s,
    bool allow_experimental_parity = false);

// Single-component convenience: computes the needed L-values of f itself,
// k = k0 + r + s.
PeriodPolynomial truncated_period_polynomial(const EigenExpansion& f, const PrecisionContext& ctx,
                                             bool allow_experimental_parity = false);

// The dz and dz-bar coefficient functions of the degree-(k) Maass-Selberg
// 1-form attached to f:
//   A(z) = y^(k-1) (d_r f)(z) (zeta - conj z)^(s-k) (zeta - z)^(r-k),
//   B(z) = (s-k) y^(k-1) f(z) (zeta - conj z)^(s-k-1) (zeta - z)^(r-k+1),
// with d_r f = 2iy f'(z) + r f(z).  Evaluable on both half-planes; the real
// line (y = 0) is rejected.
struct MaassSelbergIntegrand {
    long k = 0;
    Weights weights;
    Complex zeta;
    std::function<Complex(const Complex&)> A;
    std::function<Complex(const Complex&)> B;
};
MaassSelbergIntegrand maass_selberg_integrand(std::function<Complex(const Complex&)> f,
                                              std::function<Complex(const Complex&)> df_dz, long k,
                                              const Weights& weights, const Complex& zeta,
                                              const PrecisionContext& ctx);

// Cocycle value at S by quadrature: each component contributes its three
// defining integrals (decaying part along the imaginary axis plus the two
// regularized constant-term pieces), evaluated at every grid zeta and fitted
// to the interior monomials zeta^1 .. zeta^(D-1).  The fit uses all but the
// final two grid points; the residual is the maximum deviation over the full
// grid, so the held-out points police polynomiality.
struct SigmaSQuadrature {
    PeriodPolynomial poly;
    Real fit_residual;      // max grid deviation of the fitted polynomial
    Real quadrature_error;  // max accumulated quadrature error bound
};
SigmaSQuadrature sigma_S_quadrature(const std::vector<EigenExpansion>& components,
                                    const std::vector<Complex>& zeta_grid,
                                    const PrecisionContext& ctx,
                                    bool allow_experimental_parity = false);

// Single-component convenience with an internally chosen grid of D + 5
// Chebyshev points scaled to [-5/4, 5/4].
SigmaSQuadrature sigma_S_quadrature(const EigenExpansion& f, const PrecisionContext& ctx,
                                    bool allow_experimental_parity = false);

// Parabolic Eichler cocycle of a weakly holomorphic cusp expansion, evaluated
// at S: coefficient of zeta^l is -i^(l+1) binom(k-2, l) L*(l+1), l = 0..k-2.
PeriodPolynomial eichler_period_polynomial(const QExpansion& f, const PrecisionContext& ctx);

// v'(z) behind that cocycle, by direct quadrature of the two defining Eichler
// integrals; sigma'(S)(z) = z^(k-2) v'(-1/z) - v'(z) for cross-checks.
Complex v_prime_quadrature(const QExpansion& f, const Complex& z, const PrecisionContext& ctx);

// Residuals of the defining cocycle relations at S and U = TS, using
// sigma(U) = sigma(S) (valid when sigma(T) = 0):
//   sigma(S) || (1 + S) = 0,   sigma(U) || (1 + U + U^2) = 0.
// weight_exponent must equal -degree_bound (same consistency check as
// slash_action).
struct CocycleResiduals {
    Real s_relation;
    Real u_relation;
};
CocycleResiduals cocycle_relation_residuals(const PeriodPolynomial& sigma_s, long weight_exponent);

// Even / odd coefficient parts (eigenvectors of the real Frobenius).
struct FrobeniusSplit {
    PeriodPolynomial plus;   // even powers
    PeriodPolynomial minus;  // odd powers
};
FrobeniusSplit frobenius_split(const PeriodPolynomial& p);

} // namespace ramf
