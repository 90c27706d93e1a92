#include "qcensus/mainterm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qcensus/arith.hpp"
#include "qcensus/count.hpp"
#include "qcensus/special.hpp"

namespace qcensus::mainterm {

namespace {

constexpr double kPi = std::numbers::pi;

Int require_square(Int d, const char* who) {
    if (d < 1) throw std::domain_error(std::string(who) + ": square discriminant required");
    Int n = arith::isqrt(d);
    if (n * n != d) throw std::domain_error(std::string(who) + ": square discriminant required");
    return n;
}

}  // namespace

double main_term_w(Int d, double T) {
    Int n = require_square(d, "main_term_w");
    if (!(T > 0.0)) throw std::domain_error("main_term_w: T must be > 0");
    int nu = arith::nu2(n);
    double two_adic = std::log(2.0) * (1.0 / 3.0 - std::ldexp(1.0, -(nu + 2)));
    return std::sqrt(128.0) * T / kPi *
           (std::log(T) + special::constant_C() - arith::dirichlet_D(n) + two_adic);
}

double main_term_q(Int d, double T) {
    Int n = require_square(d, "main_term_q");
    if (!(T > 0.0)) throw std::domain_error("main_term_q: T must be > 0");
    return std::sqrt(72.0) * T / kPi *
           (std::log(T) + special::constant_C() - arith::dirichlet_D(n));
}

double cone_main_term(Int n, Int j, double T, Lattice lat, FormKind kind) {
    if (n < 1) throw std::domain_error("cone_main_term: n must be >= 1");
    double tn = forms::cone_radius(n, T);
    if (lat == Lattice::Gamma1) {
        if (j < 0 || j >= n) throw std::domain_error("cone_main_term: bad index");
        double v = kPi / 3.0;
        Int g = (j == 0) ? n : forms::gcd(n, j);
        double wprime = static_cast<double>(n) * n / (static_cast<double>(g) * g);
        double k1 = special::kronecker_gamma1_at_i();
        return 2.0 * tn / v * (std::log(tn * tn * wprime) - 2.0 + v * 2.0 * k1);
    }
    auto [wa, wb] = forms::gamma2_width_pair(n, j, kind);
    auto [ca, cb] = forms::gamma2_cusp_pair(n, j, kind);
    auto kval = [](forms::CuspG2 c) {
        return c == forms::CuspG2::Infinity ? special::kronecker_gamma2_infinity_at_i()
                                            : special::kronecker_gamma2_one_at_i();
    };
    double v = kPi;  // hyperbolic area of the index-3 subgroup
    return 2.0 * tn / v *
           (std::log(tn * tn * static_cast<double>(wa) * static_cast<double>(wb)) - 2.0 +
            v * (kval(ca) + kval(cb)));
}

ExponentParams admissible_exponents(double theta) {
    if (!(theta >= 0.0 && theta <= 0.5))
        throw std::domain_error("admissible_exponents: theta must lie in [0, 1/2]");
    return {theta, 3.0 / (40.0 + 72.0 * theta), 1.5 + 2.0 * theta,
            (3.0 + 4.0 * theta) / (4.0 + 8.0 * theta)};
}

CountSeries residual_series(Int d, const std::vector<double>& t_grid,
                            CountTarget target, int threads) {
    require_square(d, "residual_series");
    if (t_grid.empty()) throw std::domain_error("residual_series: empty grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::domain_error("residual_series: grid must be strictly increasing");
    CountSeries s;
    s.rows.reserve(t_grid.size());
    for (double T : t_grid) {
        Int cnt = (target == CountTarget::W) ? count::fast_count_w(d, T, threads).total
                                             : count::count_q(d, T, threads).total;
        double main = (target == CountTarget::W) ? main_term_w(d, T) : main_term_q(d, T);
        s.rows.push_back({T, cnt, main, static_cast<double>(cnt) - main});
    }
    return s;
}

double fit_exponent(const CountSeries& series) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (const auto& r : series.rows) {
        double ar = std::fabs(r.residual);
        if (ar < 1.0) continue;  // avoid the log singularity
        double x = std::log(r.T), y = std::log(ar);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++k;
    }
    if (k < 5) throw std::domain_error("fit_exponent: need at least 5 usable rows");
    double denom = k * sxx - sx * sx;
    if (denom == 0.0) throw std::runtime_error("fit_exponent: degenerate abscissae");
    return (k * sxy - sx * sy) / denom;
}

}  // namespace qcensus::mainterm
