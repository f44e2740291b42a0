#include "ramf/arith.hpp"

#include <mutex>
#include <vector>

#include "ramf/errors.hpp"

namespace ramf {

mpz_class divisor_sigma(long k, long m) {
    if (k < 0) throw domain_error("divisor_sigma: exponent must be nonnegative");
    if (m < 1) throw domain_error("divisor_sigma: argument must be positive");
    mpz_class total = 0;
    for (long d = 1; static_cast<unsigned long>(d) * d <= static_cast<unsigned long>(m); ++d) {
        if (m % d != 0) continue;
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), d, k);
        total += t;
        long e = m / d;
        if (e != d) {
            mpz_ui_pow_ui(t.get_mpz_t(), e, k);
            total += t;
        }
    }
    return total;
}

mpz_class factorial(long n) {
    if (n < 0) throw domain_error("factorial: negative argument");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class generalized_binomial(const mpz_class& a, long b) {
    if (b < 0) return 0;
    mpz_class num = 1;
    for (long i = 0; i < b; ++i) num *= a - i;
    mpz_class den = factorial(b);
    mpz_class q = num / den;  // always exact for integer a
    return q;
}

mpz_class binomial(long n, long k) {
    if (n < 0) throw domain_error("binomial: n must be nonnegative");
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

mpq_class bernoulli(unsigned long n) {
    static std::vector<mpq_class> cache = {mpq_class(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    // B_m = -1/(m+1) * sum_{j<m} binom(m+1, j) B_j
    while (cache.size() <= n) {
        unsigned long m = cache.size();
        mpq_class acc = 0;
        for (unsigned long j = 0; j < m; ++j) {
            mpz_class c;
            mpz_bin_uiui(c.get_mpz_t(), m + 1, j);
            acc += mpq_class(c) * cache[j];
        }
        mpq_class b = -acc / mpq_class(m + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[n];
}

} // namespace ramf
