#include "qcensus/arith.hpp"

#include <cmath>
#include <stdexcept>

namespace qcensus::arith {

namespace {

std::vector<Int> sieve_primes(Int limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<Int> primes;
    for (Int p = 2; p <= limit; ++p) {
        if (comp[p]) continue;
        primes.push_back(p);
        for (Int q = p * p; q <= limit; q += p) comp[q] = true;
    }
    return primes;
}

}  // namespace

const std::vector<Int>& prime_table() {
    static const std::vector<Int> table = sieve_primes(100000);
    return table;
}

Int isqrt(Int x) {
    if (x < 0) throw std::domain_error("isqrt: negative argument");
    Int r = static_cast<Int>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

Factorization factorize(Int n) {
    if (n < 1) throw std::domain_error("factorize: n must be >= 1");
    Factorization f;
    f.value = n;
    Int m = n;
    for (Int p : prime_table()) {
        if (p * p > m) break;
        if (m % p != 0) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    if (m > 1) {
        // remaining cofactor is prime (its least factor exceeds the table
        // range only if m >= 1e10, beyond any input this engine sees)
        f.factors.emplace_back(m, 1);
    }
    return f;
}

std::vector<Int> divisors(Int n) {
    Factorization f = factorize(n);
    std::vector<Int> divs{1};
    for (auto [p, e] : f.factors) {
        std::size_t base = divs.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

Int euler_phi(Int n) {
    Factorization f = factorize(n);
    Int r = n;
    for (auto [p, e] : f.factors) r -= r / p;
    return r;
}

int nu2(Int n) {
    if (n < 1) throw std::domain_error("nu2: n must be >= 1");
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    return v;
}

double dirichlet_D(Int n) {
    if (n < 1) throw std::domain_error("dirichlet_D: n must be >= 1");
    double s = 0.0;
    for (Int a : divisors(n)) {
        if (a == 1) continue;  // log 1 = 0
        s += static_cast<double>(euler_phi(n / a)) * std::log(static_cast<double>(a));
    }
    return s / static_cast<double>(n);
}

double gcd_log_sum(Int n) {
    // divisor-sum form; the j-loop form sum_{j<=n} log gcd(n,j) agrees exactly
    return static_cast<double>(n) * dirichlet_D(n);
}

}  // namespace qcensus::arith
