#include "qcensus/count.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qcensus/arith.hpp"

namespace qcensus::count {

namespace {

using arith::isqrt;

Int require_square(Int d, const char* who) {
    if (d < 1) throw std::domain_error(std::string(who) + ": square discriminant required");
    Int n = isqrt(d);
    if (n * n != d) throw std::domain_error(std::string(who) + ": square discriminant required");
    return n;
}

// largest integer <= T^2
Int norm_limit(double T) {
    if (!(T > 0.0)) throw std::domain_error("count: T must be > 0");
    long double t = static_cast<long double>(T) * static_cast<long double>(T);
    return static_cast<Int>(std::floor(t));
}

// deterministic block-parallel reduction over [lo, hi]
template <class Body>
Int parallel_blocks(Int lo, Int hi, int threads, Body&& body) {
    if (hi < lo) return 0;
    constexpr Int kBlock = 4096;
    Int nblocks = (hi - lo) / kBlock + 1;
    std::vector<Int> partial(static_cast<std::size_t>(nblocks), 0);
    if (threads <= 1) {
        for (Int b = 0; b < nblocks; ++b) {
            Int a = lo + b * kBlock;
            Int z = std::min(hi, a + kBlock - 1);
            partial[static_cast<std::size_t>(b)] = body(a, z);
        }
    } else {
        std::atomic<Int> next{0};
        auto worker = [&] {
            for (;;) {
                Int b = next.fetch_add(1);
                if (b >= nblocks) return;
                Int a = lo + b * kBlock;
                Int z = std::min(hi, a + kBlock - 1);
                partial[static_cast<std::size_t>(b)] = body(a, z);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    Int total = 0;
    for (Int b = 0; b < nblocks; ++b) total += partial[static_cast<std::size_t>(b)];
    return total;
}

}  // namespace

Int r2(Int m) {
    if (m < 1) throw std::domain_error("r2: m must be >= 1");
    Int result = 4;
    for (Int p : arith::prime_table()) {
        if (p * p > m) break;
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            if (p % 4 == 3) {
                if (e % 2 != 0) return 0;
            } else if (p % 4 == 1) {
                result *= (e + 1);
            }
            // p = 2 contributes nothing
        }
    }
    if (m > 1) {
        // prime cofactor
        if (m % 4 == 3) return 0;
        if (m % 4 == 1) result *= 2;
    }
    return result;
}

CountResult brute_count_w(Int d, double T) {
    require_square(d, "brute_count_w");
    const Int nl = norm_limit(T);
    // x^2+y^2+z^2 = 2(x^2+y^2) - d, z^2 = x^2+y^2-d
    Int total = 0;
    Int xymax = (nl + d) / 2;
    Int xb = isqrt(xymax);
    for (Int x = -xb; x <= xb; ++x) {
        for (Int y = -xb; y <= xb; ++y) {
            Int s = x * x + y * y;
            if (s > xymax) continue;
            Int zz = s - d;
            if (zz < 0) continue;
            if (2 * s - d > nl) continue;
            Int z = isqrt(zz);
            if (z * z != zz) continue;
            total += (z == 0) ? 1 : 2;
        }
    }
    return {d, T, total, {}};
}

CountResult fast_count_w(Int d, double T, int threads) {
    require_square(d, "fast_count_w");
    const Int nl = norm_limit(T);
    CountResult res{d, T, 0, {}};
    if (d > nl) return res;
    arith::prime_table();  // build before the pool starts
    Int zmax = isqrt((nl - d) / 2);
    Int total = r2(d);
    total += 2 * parallel_blocks(1, zmax, threads, [&](Int lo, Int hi) {
        Int acc = 0;
        for (Int z = lo; z <= hi; ++z) acc += r2(z * z + d);
        return acc;
    });
    res.total = total;
    return res;
}

CountResult brute_count_q(Int d, double T) {
    require_square(d, "brute_count_q");
    const Int nl = norm_limit(T);
    Int total = 0;
    Int ab = isqrt(nl / 2);
    for (Int a = -ab; a <= ab; ++a) {
        Int bbud = nl - 2 * a * a;
        if (bbud < 0) continue;
        Int bb = isqrt(bbud);
        for (Int b = -bb; b <= bb; ++b) {
            Int num = b * b - d;
            if (a == 0) {
                if (num != 0) continue;  // b = +-n, c free
                Int cbud = (nl - b * b) / 2;
                total += 2 * isqrt(cbud) + 1;
            } else {
                if (num % (4 * a) != 0) continue;
                Int c = num / (4 * a);
                if (2 * a * a + b * b + 2 * c * c <= nl) ++total;
            }
        }
    }
    return {d, T, total, {}};
}

namespace {

// points with b fixed, ac = m != 0: 2 * #{a > 0 divisor of |m| : 2(a^2+c^2) <= budget}
Int q_slice_nonzero(Int m, Int budget) {
    Int cnt = 0;
    for (Int a : arith::divisors(std::llabs(m))) {
        Int c = std::llabs(m) / a;
        if (2 * (a * a + c * c) <= budget) ++cnt;
    }
    return 2 * cnt;
}

}  // namespace

CountResult count_q(Int d, double T, int threads) {
    Int n = require_square(d, "count_q");
    const Int nl = norm_limit(T);
    CountResult res{d, T, 0, {}};
    if (d > nl) return res;
    arith::prime_table();
    Int bmax = isqrt(nl);
    Int total = 0;
    // b = 0 slice exists only for even n
    if (n % 2 == 0) total += q_slice_nonzero(-d / 4, nl);
    // b = n slice (m = 0): points (a, n, 0) and (0, n, c), overlap (0,n,0)
    {
        Int budget = nl - n * n;
        Int A = isqrt(budget / 2);
        total += 2 * (4 * A + 1);  // both signs of b
    }
    // remaining b > 0, b = n (mod 2), b != n; count once per b and double for -b
    Int lo = (n % 2 == 0) ? 2 : 1;
    total += 2 * parallel_blocks(lo, bmax, threads, [&](Int blo, Int bhi) {
        Int acc = 0;
        Int b = blo + ((blo % 2 != n % 2) ? 1 : 0);
        for (; b <= bhi; b += 2) {
            if (b == n) continue;
            Int m = (b * b - d) / 4;
            acc += q_slice_nonzero(m, nl - b * b);
        }
        return acc;
    });
    res.total = total;
    return res;
}

CountResult orbit_tally(Int d, double T, Lattice lat) {
    Int n = require_square(d, "orbit_tally");
    const Int nl = norm_limit(T);
    CountResult res{d, T, 0, {}};
    if (d > nl) return res;
    auto add = [&](const forms::FormTriple& v) {
        OrbitClass c = forms::classify(v, lat);
        ++res.per_orbit[c];
        ++res.total;
    };
    if (lat == Lattice::Gamma1) {
        // V_d(Z): enumerate b = n (mod 2), then divisor pairs ac = (b^2-d)/4
        Int bmax = isqrt(nl);
        for (Int b = -bmax; b <= bmax; ++b) {
            if (((b % 2) + 2) % 2 != n % 2) continue;
            Int budget = nl - b * b;
            Int m = (b * b - d) / 4;
            if (m == 0) {
                Int A = isqrt(budget / 2);
                for (Int a = -A; a <= A; ++a) add({forms::Rat(a), forms::Rat(b), forms::Rat(0)});
                for (Int c = -A; c <= A; ++c)
                    if (c != 0) add({forms::Rat(0), forms::Rat(b), forms::Rat(c)});
            } else {
                for (Int a : arith::divisors(std::llabs(m))) {
                    Int c = m / a;  // sign of m carried by c
                    if (2 * (a * a + c * c) > budget) continue;
                    add({forms::Rat(a), forms::Rat(b), forms::Rat(c)});
                    add({forms::Rat(-a), forms::Rat(b), forms::Rat(-c)});
                }
            }
        }
    } else {
        // tilde-V_d(Z) via W_d(Z): x^2+y^2 = z^2+d, norm = 2z^2+d
        Int zmax = isqrt((nl - d) / 2);
        for (Int z = -zmax; z <= zmax; ++z) {
            Int s = z * z + d;
            Int xb = isqrt(s);
            for (Int x = -xb; x <= xb; ++x) {
                Int yy = s - x * x;
                Int y = isqrt(yy);
                if (y * y != yy) continue;
                add(forms::w_to_v(x, y, z));
                if (y != 0) add(forms::w_to_v(x, -y, z));
            }
        }
    }
    return res;
}

}  // namespace qcensus::count
