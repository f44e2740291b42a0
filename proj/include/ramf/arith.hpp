#pragma once

#include <gmpxx.h>

namespace ramf {

// sigma_k(m) = sum of d^k over positive divisors d of m; exact.
mpz_class divisor_sigma(long k, long m);

mpz_class factorial(long n);

// Generalized binomial with integer upper argument a of any sign and b >= 0:
// binom(a, b) = a (a-1) ... (a-b+1) / b!.  Negative b yields 0 by convention.
mpz_class generalized_binomial(const mpz_class& a, long b);

// Ordinary binomial coefficient, n >= 0.
mpz_class binomial(long n, long k);

// Exact Bernoulli number B_n (B_1 = -1/2); cached, thread-safe.
mpq_class bernoulli(unsigned long n);

} // namespace ramf
