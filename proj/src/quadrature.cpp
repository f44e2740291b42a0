#include "ramf/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace ramf {

namespace {

constexpr long kNodes = 32;
constexpr int kMaxDepth = 48;

struct GLRule {
    std::vector<Real> x;  // nodes in (0, 1), positive half; symmetric rule
    std::vector<Real> w;
};

// Legendre P_n and P_n' at x via the three-term recurrence.
void legendre_eval(long n, const Real& x, Real& p, Real& dp) {
    long wp = x.prec();
    Real p0(1L, wp), p1 = x;
    for (long k = 2; k <= n; ++k) {
        Real pk = (x * p1 * (2 * k - 1) - p0 * (k - 1)) / k;
        p0 = p1;
        p1 = pk;
    }
    p = p1;
    // (1-x^2) P_n'(x) = n (P_{n-1}(x) - x P_n(x))
    dp = Real(n, wp) * (p0 - x * p1) / (Real(1L, wp) - x * x);
}

const GLRule& gauss_legendre_rule(long wp_req) {
    static std::map<long, GLRule> cache;
    static std::mutex mu;
    long bucket = ((wp_req + 63) / 64) * 64;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(bucket);
    if (it != cache.end()) return it->second;

    long wp = bucket + 32;
    GLRule rule;
    for (long i = 1; i <= kNodes / 2; ++i) {
        double seed = std::cos(M_PI * (i - 0.25) / (kNodes + 0.5));
        Real x(seed, wp);
        Real p(wp), dp(wp);
        for (int iter = 0; iter < 64; ++iter) {
            legendre_eval(kNodes, x, p, dp);
            Real step = p / dp;
            x -= step;
            if (abs(step) < Real::pow2(-wp + 8, 64)) break;
        }
        legendre_eval(kNodes, x, p, dp);
        rule.x.push_back(x);
        rule.w.push_back(Real(2L, wp) / ((Real(1L, wp) - x * x) * dp * dp));
    }
    return cache.emplace(bucket, std::move(rule)).first->second;
}

struct PanelIntegrator {
    const std::function<Complex(const Real&)>& f;
    const GLRule& rule;
    long wp;
    long evals = 0;

    Complex eval(const Real& a, const Real& b) {
        Real mid = mul_2si(a + b, -1);
        Real half = mul_2si(b - a, -1);
        Complex acc(wp);
        for (size_t i = 0; i < rule.x.size(); ++i) {
            Real d = half * rule.x[i];
            acc += (f(mid + d) + f(mid - d)) * rule.w[i];
            evals += 2;
        }
        return acc * half;
    }
};

} // namespace

QuadratureResult integrate_vertical_line(const std::function<Complex(const Real&)>& f,
                                         const Real& t_lo, const Real& t_hi,
                                         const PrecisionContext& ctx, const Real* abs_tol) {
    if (t_lo.is_nan() || t_hi.is_nan() || t_lo.is_inf())
        throw domain_error("integrate_vertical_line: bad interval");
    const long wp = ctx.working_bits();
    Real tol = abs_tol != nullptr ? *abs_tol : ctx.quad_tol;
    if (tol.sign() <= 0) throw domain_error("integrate_vertical_line: tolerance must be positive");

    Real lo = round_to(t_lo, wp);
    Real hi(wp);
    Real tail_bound(64);
    bool truncated = false;
    if (t_hi.is_inf()) {
        truncated = true;
        double cut = std::max(lo.to_double() + 4.0, ctx.y_cutoff);
        hi = Real(cut, wp);
    } else {
        hi = round_to(t_hi, wp);
    }
    if (!(lo < hi)) throw domain_error("integrate_vertical_line: need t_lo < t_hi");

    if (truncated) {
        // Exponential decay rate from two samples one unit apart; extend the cut
        // until the implied geometric tail is inside budget.
        for (int attempt = 0;; ++attempt) {
            Real f1 = abs(f(hi - Real(1L, wp)));
            Real f0 = abs(f(hi));
            if (f0.is_zero() && f1.is_zero()) {
                tail_bound = Real(0L, 64);
                break;
            }
            double lam = f0.is_zero() ? 1e9
                                      : (log(f1).to_double() - log(f0).to_double());
            if (lam < 0.05)
                throw numeric_failure(
                    "integrate_vertical_line: integrand shows no exponential decay at cutoff",
                    0.0);
            tail_bound = lam > 1e8 ? Real(0L, 64) : round_to(f0 / Real(lam, wp) * 2, 64);
            if (tail_bound < mul_2si(tol, -1)) break;
            if (attempt >= 24)
                throw numeric_failure("integrate_vertical_line: tail does not fit tolerance",
                                      tail_bound.is_zero() ? 0.0
                                                           : static_cast<double>(tail_bound.exponent()));
            // jump far enough that the measured decay rate closes the gap
            double deficit = (log(tail_bound) - log(mul_2si(tol, -2))).to_double();
            double step = deficit / lam + 2.0;
            if (step < 8.0) step = 8.0;
            if (step > 4096.0) step = 4096.0;
            hi += Real(step, wp);
        }
    }

    const GLRule& rule = gauss_legendre_rule(wp);
    PanelIntegrator integ{f, rule, wp, 0};

    struct Panel {
        Real a, b;
        Complex whole;
        int depth;
    };
    std::vector<Panel> stack;

    // geometric initial panels: unit-ish near lo, doubling outward
    {
        Real a = lo;
        Real width(1L, wp);
        while (a < hi) {
            Real b = a + width;
            if (!(b < hi)) b = hi;
            stack.push_back({a, b, Complex(wp), 0});
            a = b;
            width = mul_2si(width, 1);
        }
        for (auto& p : stack) p.whole = integ.eval(p.a, p.b);
    }

    Real total_width = hi - lo;
    Complex value(wp);
    Real err_acc(64);
    while (!stack.empty()) {
        Panel p = std::move(stack.back());
        stack.pop_back();
        Real mid = mul_2si(p.a + p.b, -1);
        Complex left = integ.eval(p.a, mid);
        Complex right = integ.eval(mid, p.b);
        Real est = abs(p.whole - left - right);
        Real budget = mul_2si(tol * ((p.b - p.a) / total_width), -1);
        if (est <= budget || p.depth >= kMaxDepth) {
            value += left + right;
            err_acc += round_to(est, 64);
        } else {
            stack.push_back({p.a, mid, std::move(left), p.depth + 1});
            stack.push_back({mid, p.b, std::move(right), p.depth + 1});
        }
    }

    Real bound = err_acc + tail_bound;
    if (!(bound <= tol))
        throw numeric_failure("integrate_vertical_line: tolerance not met",
                              static_cast<double>(bound.exponent()));
    return {round_to(value, ctx.precision_bits), bound, integ.evals};
}

} // namespace ramf
