#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <utility>

#include "ramf/arith.hpp"
#include "ramf/complexval.hpp"
#include "ramf/precision.hpp"

namespace ramf {

// Bigraded weight pair (r, s).
struct Weights {
    long r = 0;
    long s = 0;
    friend bool operator==(const Weights&, const Weights&) = default;
    bool same_parity() const { return ((r - s) % 2) == 0; }
};

// Index of a term y^j q^m qbar^n.
struct TermKey {
    long j = 0;
    long m = 0;
    long n = 0;
    friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

// Finite bigraded Fourier expansion  sum_j y^j sum_{m,n} a_{m,n}^{(j)} q^m qbar^n.
// Immutable after construction; operators return new expansions.
class BigradedExpansion {
public:
    BigradedExpansion(Weights w, std::map<TermKey, Complex> terms)
        : w_(w), terms_(std::move(terms)) {
        prune();
    }

    const Weights& weights() const { return w_; }
    const std::map<TermKey, Complex>& terms() const { return terms_; }

    Complex coefficient(const TermKey& k, long prec) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Complex(prec) : it->second;
    }
    bool empty() const { return terms_.empty(); }
    Real max_abs_coefficient(long prec) const;

    friend BigradedExpansion operator+(const BigradedExpansion& a, const BigradedExpansion& b);
    friend BigradedExpansion operator-(const BigradedExpansion& a, const BigradedExpansion& b);
    BigradedExpansion scaled(const Complex& c) const;

private:
    void prune();
    Weights w_;
    std::map<TermKey, Complex> terms_;
};

// Splitting of an expansion by the sign of the total frequency m + n.
struct SplitParts {
    BigradedExpansion tilde;  // m + n > 0
    BigradedExpansion zero;   // m + n = 0
    BigradedExpansion ring;   // m + n < 0
};
SplitParts split_parts(const BigradedExpansion& f);

// Maass raising operator  2iy d/dz + r : weights (r, s) -> (r+1, s-1).
BigradedExpansion maass_raise(const BigradedExpansion& f, const PrecisionContext& ctx);
// Maass lowering operator  -2iy d/dzbar + s : weights (r, s) -> (r-1, s+1).
BigradedExpansion maass_lower(const BigradedExpansion& f, const PrecisionContext& ctx);
// Laplacian  -maass_lower(s-1) maass_raise(r) + r(s-1), weights preserved.
BigradedExpansion laplacian(const BigradedExpansion& f, const PrecisionContext& ctx);
// Weight-k hyperbolic operator Omega_k = -y^2(dxx + dyy) + iky dx applied through
// the identity Omega_{r-s} = Delta_{r,s} + (r+s) y d/dy (the weights tag of f
// supplies (r, s)).
BigradedExpansion omega(const BigradedExpansion& f, const PrecisionContext& ctx);

// Exact coefficient alpha_j^{sign} entering the Eisenstein expansion:
//   (-1)^j (j + |r-s|/2)! binom(s + (r-s)/2 + |r-s|/2, j + |r-s|/2)
//         binom((sign-1)(r-s)/2 - 1 - s, j + sign (r-s)/2),
// zero whenever a factorial argument or a binomial lower index is negative.
mpq_class alpha_pm(long r, long s, long j, int sign);

// Fourier data of a Laplacian eigenform in the shape of the spectral lemma:
// rows y^j q^m (holomorphic side, j in [k0, -s]) and y^j qbar^m (antiholomorphic,
// j in [k0, -r]) for m >= -N, m != 0, plus constant term a y^k0 + b y^(1-r-s-k0).
class EigenExpansion {
public:
    using Row = std::map<std::pair<long, long>, Complex>;  // (j, m) -> coefficient

    EigenExpansion(Weights w, long k0, Complex const_a, Complex const_b, Row hol, Row antihol);

    const Weights& weights() const { return w_; }
    long k0() const { return k0_; }
    // eigenvalue k0 (1 - r - s - k0), exact
    long eigenvalue() const { return k0_ * (1 - w_.r - w_.s - k0_); }
    const Complex& const_a() const { return a_; }
    const Complex& const_b() const { return b_; }
    const Row& hol() const { return hol_; }
    const Row& antihol() const { return antihol_; }

    BigradedExpansion to_bigraded() const;

private:
    Weights w_;
    long k0_;
    Complex a_, b_;
    Row hol_, antihol_;
};

// Truncated expansion of the real-analytic Eisenstein series E_{r,s}
// (eigenvalue -(r+s), k0 = -r-s), coefficients
//   a_m^(j) = (2 pi)^(r+s+j) 2^j pi alpha^+_{-j-(r+s)/2} sigma_{r+s+1}(m) m^(j-1)
//             / (max(r,s)! zeta(r+s+2))
// on the holomorphic side and the alpha^- mirror on the antiholomorphic side.
// (The normalization is pinned by modularity of the assembled series and by the
// reduction E_{1,1}(z) = y^-1 E(z, 2) to the classical weight-0 series.)
// The constant term defaults to the unfolded closed form
//   b = 1,  a = (-1)^(s+(r+s)/2) pi 2^-(r+s) binom(r+s, s) zeta(r+s+1)/zeta(r+s+2)
// and can be overridden.
EigenExpansion eisenstein_expansion(long r, long s, long m_max, const PrecisionContext& ctx,
                                    std::optional<Complex> override_a = std::nullopt,
                                    std::optional<Complex> override_b = std::nullopt);

} // namespace ramf
