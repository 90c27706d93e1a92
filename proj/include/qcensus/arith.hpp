#pragma once

// Exact integer arithmetic: trial-division factorization against a fixed
// prime table, multiplicative functions, and the Dirichlet-series factor
//
//   D(n) = (1/n) * sum_{a|n} phi(n/a) * log(a),
//
// which also equals (1/n) * sum_{j=1..n} log gcd(n,j).

#include <cstdint>
#include <utility>
#include <vector>

namespace qcensus::arith {

using Int = std::int64_t;

struct Factorization {
    Int value = 1;
    // (prime, exponent), primes strictly increasing, exponents >= 1
    std::vector<std::pair<Int, int>> factors;
};

// Primes up to 1e5, built once on first use; read-only afterwards.
const std::vector<Int>& prime_table();

// Trial division with the shared prime table. Throws std::domain_error for
// n < 1; handles any n whose second-largest prime factor is < 1e5.
Factorization factorize(Int n);

// All divisors of n, increasing.
std::vector<Int> divisors(Int n);

Int euler_phi(Int n);

// 2-adic valuation.
int nu2(Int n);

// D(n) = (1/n) sum_{a|n} phi(n/a) log a
double dirichlet_D(Int n);

// sum_{j=1..n} log gcd(n,j); equals n*D(n) via the divisor-sum identity.
double gcd_log_sum(Int n);

// floor(sqrt(x)) for x >= 0, exact.
Int isqrt(Int x);

}  // namespace qcensus::arith
