#include "qcensus/shear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcensus::shear {

namespace {

constexpr double kPi = std::numbers::pi;

Int igcd(Int a, Int b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// a*x + b*y = 1 for coprime (a,b); returns (x, y)
std::pair<Int, Int> bezout(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1, aa = a, bb = b;
    while (bb != 0) {
        Int q = aa / bb;
        Int t = aa - q * bb;
        aa = bb;
        bb = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (aa < 0) {
        x0 = -x0;
        y0 = -y0;
    }
    return {x0, y0};
}

double cosh_dist(double x, double y, double u, double v) {
    double dx = x - u, dy = y - v;
    return 1.0 + (dx * dx + dy * dy) / (2.0 * y * v);
}

void require_delta(double delta) {
    if (!(delta > 0.0 && delta < 0.5))
        throw std::domain_error("shear: delta must lie in (0, 0.5)");
}

void require_level(Int p) {
    if (p < 1) throw std::domain_error("shear: p must be 1 or prime");
    if (p == 1) return;
    for (Int q = 2; q * q <= p; ++q)
        if (p % q == 0) throw std::domain_error("shear: p must be 1 or prime");
}

// One support window: the ray meets the delta-ball around w = u + iv for
// y in [ylo, yhi].
struct Window {
    double ylo, yhi, u, v;
    bool operator<(const Window& o) const {
        if (ylo != o.ylo) return ylo < o.ylo;
        if (yhi != o.yhi) return yhi < o.yhi;
        if (u != o.u) return u < o.u;
        return v < o.v;
    }
};

// Term centers for the unfolded integral: each group element contributes
// f(d(Ty+iy, w)) on the y-interval where the ray meets the delta-ball around
// its center w = (q v, v), v = 1/(c^2+d^2), q integer.  Centers are
// parametrized by a coprime row (c,d) (one representative per +-pair) and
// one q in an arithmetic progression q0 + step Z:
//   mode A (the infinity-side sum over Gamma_0(p)): rows with c = 0 (mod p),
//     completion a d - b c = 1, q = ac+bd, step = c^2+d^2;
//   mode B (the sigma-side sum, already reflected onto the standard ray):
//     rows with c != 0 (mod p), completion g d - h c = 1 shifted so p | g,
//     q = gc+hd, step = p (c^2+d^2).
// A window exists only for q inside
// [T cosh(delta) - sqrt(T^2+1) sinh(delta), T cosh(delta) + sqrt(...)].
enum class RowMode { A, B };

std::vector<Window> support_windows(double T, double delta, Int p, RowMode mode,
                                    double y_min) {
    const double ch = std::cosh(delta), sh = std::sinh(delta);
    const double rt = std::sqrt(T * T + 1.0);
    const double qlo = T * ch - rt * sh, qhi = T * ch + rt * sh;
    // a window reaches y only with y <= v (A + sqrt(disc))/(T^2+1) <= 2 v A/(T^2+1)
    const double cd2_max = 2.0 * (T * qhi + ch) / (y_min * (T * T + 1.0)) * 1.01 + 4.0;
    std::vector<Window> wins;
    const Int cmax = static_cast<Int>(std::sqrt(cd2_max)) + 1;
    for (Int c = 0; c <= cmax; ++c) {
        if (p > 1) {
            bool is_zero_mod_p = (c % p == 0);
            if (mode == RowMode::A && !is_zero_mod_p) continue;
            if (mode == RowMode::B && is_zero_mod_p) continue;
        }
        Int dmax = static_cast<Int>(std::sqrt(std::max(0.0, cd2_max - static_cast<double>(c) * c)));
        for (Int d = (c == 0 ? 1 : -dmax); d <= dmax; ++d) {
            if (c == 0 && d != 1) continue;  // +- canonical: (0,1) only
            if (c > 0 && igcd(c, d) != 1) continue;
            const Int m = c * c + d * d;
            const double v = 1.0 / static_cast<double>(m);
            // base completion a0 d - b0 c = 1 -> q0 = a0 c + b0 d
            auto [x, yb] = bezout(d, c);
            Int a0 = x, b0 = -yb;
            Int step = m;
            if (mode == RowMode::B && p > 1) {
                // shift (a0,b0) -> (a0 + t c, b0 + t d) so that p | a0;
                // c is invertible mod p on this branch
                Int r = ((a0 % p) + p) % p;
                if (r != 0) {
                    auto [xi, yi] = bezout(((c % p) + p) % p, p);
                    (void)yi;
                    Int cinv = ((xi % p) + p) % p;
                    Int t = ((p - r) * cinv) % p;
                    a0 += t * c;
                    b0 += t * d;
                }
                step = m * p;
            }
            Int q0 = a0 * c + b0 * d;
            double base = static_cast<double>(q0);
            Int tlo = static_cast<Int>(std::ceil((qlo - base) / static_cast<double>(step)));
            Int thi = static_cast<Int>(std::floor((qhi - base) / static_cast<double>(step)));
            for (Int t = tlo; t <= thi; ++t) {
                double q = base + static_cast<double>(t) * step;
                double A = T * q + ch;
                double disc = A * A - (T * T + 1.0) * (q * q + 1.0);
                if (disc <= 0.0) continue;
                double rd = std::sqrt(disc);
                double ylo = v * (A - rd) / (T * T + 1.0);
                double yhi = v * (A + rd) / (T * T + 1.0);
                if (yhi <= y_min) continue;
                wins.push_back({std::max(ylo, y_min), yhi, q * v, v});
            }
        }
    }
    std::sort(wins.begin(), wins.end());
    return wins;
}

struct Integrand {
    double T, delta, norm;
    const std::function<double(double)>* profile;
    double u, v;

    double operator()(double y) const {
        double chd = cosh_dist(T * y, y, u, v);
        if (chd <= 1.0) return norm * (*profile)(0.0) / y;
        double dist = std::acosh(chd);
        if (dist >= delta) return 0.0;
        return norm * (*profile)(dist / delta) / y;
    }
};

double adaptive_simpson(const Integrand& f, double a, double fa, double m, double fm,
                        double b, double fb, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double err = left + right - whole;
    if (std::fabs(err) <= 15.0 * tol || (b - a) < 1e-15) return left + right + err / 15.0;
    if (depth <= 0)
        throw std::runtime_error(
            "shear_integral: quadrature refinement failed to converge (window [" +
            std::to_string(a) + "," + std::to_string(b) + "])");
    return adaptive_simpson(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

double integrate_window(const Integrand& f, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, fa, m, fm, b, fb, whole, tol, 40);
}

double windows_integral(double T, const BumpSpec& spec, Int p, RowMode mode,
                        double y_min) {
    auto wins = support_windows(T, spec.delta, p, mode, y_min);
    double total = 0.0;
    for (const auto& w : wins) {
        Integrand f{T, spec.delta, spec.normalization, &spec.profile, w.u, w.v};
        total += integrate_window(f, w.ylo, w.yhi, 1e-12);
    }
    return total;
}

double v_gamma(Int p) { return (p == 1 ? 1.0 : p + 1.0) * kPi / 3.0; }

double kron_inf_at_i(Int p) {
    return p == 1 ? special::kronecker_gamma1_at_i()
                  : special::kronecker_gamma0p({0.0, 1.0}, p, special::Cusp::Infinity);
}

double kron_zero_at_i(Int p) {
    return p == 1 ? special::kronecker_gamma1_at_i()
                  : special::kronecker_gamma0p({0.0, 1.0}, p, special::Cusp::Zero);
}

}  // namespace

double standard_profile(double u) {
    double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}

double bump_normalization(double delta, const std::function<double(double)>& profile) {
    require_delta(delta);
    // composite Simpson over [0, delta] of profile(rho/delta) sinh(rho)
    constexpr int N = 4096;
    double h = delta / N;
    double acc = 0.0;
    for (int i = 0; i <= N; ++i) {
        double rho = i * h;
        double w = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * profile(rho / delta) * std::sinh(rho);
    }
    double integral = 2.0 * kPi * acc * h / 3.0;
    if (!(integral > 0.0)) throw std::domain_error("bump_normalization: degenerate profile");
    return 1.0 / integral;
}

BumpSpec make_bump(double delta) {
    BumpSpec spec;
    spec.delta = delta;
    spec.profile = standard_profile;
    spec.normalization = bump_normalization(delta, spec.profile);
    return spec;
}

std::vector<forms::Mat2i> nearby_group_elements(HalfPlanePoint z, double delta, Int p,
                                                double pad) {
    require_delta(delta);
    require_level(p);
    if (!(z.im > 0.0)) throw std::domain_error("nearby_group_elements: im(z) must be > 0");
    const double x = z.re, y = z.im;
    const double edp = std::exp(delta) * pad;
    const double chd_max = std::cosh(delta);
    std::vector<forms::Mat2i> out;
    const Int cmax = static_cast<Int>(std::sqrt(edp / y)) + 1;
    for (Int c = 0; c <= cmax; ++c) {
        if (p > 1 && c % p != 0) continue;
        double c2y2 = static_cast<double>(c) * c * y * y;
        if (c > 0 && c2y2 > y * edp) break;
        // |cz+d|^2 = (cx+d)^2 + c^2 y^2 <= y e^delta
        double span = std::sqrt(std::max(0.0, y * edp - c2y2));
        Int dlo, dhi;
        if (c == 0) {
            dlo = dhi = 1;  // canonical +- representative
        } else {
            dlo = static_cast<Int>(std::ceil(-c * x - span));
            dhi = static_cast<Int>(std::floor(-c * x + span));
        }
        for (Int d = dlo; d <= dhi; ++d) {
            if (c == 0 ? d != 1 : igcd(c, d) != 1) continue;
            Int a0, b0;
            if (c == 0) {
                a0 = 1;
                b0 = 0;
            } else {
                auto [xx, yy] = bezout(d, c);
                a0 = xx;
                b0 = -yy;
            }
            // gamma_t = n_t gamma_0, gamma_t z = gamma_0 z + t
            double den = (c * x + d) * (c * x + d) + c2y2;
            double u0 = ((a0 * x + b0) * (c * x + d) + a0 * c * y * y) / den;
            double v0 = y / den;
            double r2 = 2.0 * v0 * (chd_max - 1.0) * pad - (v0 - 1.0) * (v0 - 1.0);
            if (r2 < 0.0) continue;
            double r = std::sqrt(r2);
            Int tlo = static_cast<Int>(std::ceil(-u0 - r));
            Int thi = static_cast<Int>(std::floor(-u0 + r));
            for (Int t = tlo; t <= thi; ++t) {
                if (cosh_dist(u0 + t, v0, 0.0, 1.0) > chd_max + 1e-15) continue;
                out.push_back(forms::Mat2i{a0 + t * c, b0 + t * d, c, d});
            }
        }
    }
    return out;
}

double periodized_bump_eval(HalfPlanePoint z, const BumpSpec& spec, Int p) {
    double total = 0.0;
    const double x = z.re, y = z.im;
    for (const auto& g : nearby_group_elements(z, spec.delta, p)) {
        double den = (g.c * x + g.d) * (g.c * x + g.d) +
                     static_cast<double>(g.c) * g.c * y * y;
        double u = ((g.a * x + g.b) * (g.c * x + g.d) +
                    static_cast<double>(g.a) * g.c * y * y) /
                   den;
        double v = y / den;
        double chd = cosh_dist(u, v, 0.0, 1.0);
        double dist = chd <= 1.0 ? 0.0 : std::acosh(chd);
        if (dist < spec.delta) total += spec.normalization * spec.profile(dist / spec.delta);
    }
    return total;
}

double shear_integral(double T, const BumpSpec& spec, Int p) {
    if (!(T >= 2.0)) throw std::domain_error("shear_integral: T must be >= 2");
    require_delta(spec.delta);
    require_level(p);
    double y0 = 1.0 / std::sqrt(T * T + 1.0);
    return windows_integral(T, spec, p, RowMode::A, y0);
}

double predicted_shear(double T, const BumpSpec& spec, Int p) {
    require_level(p);
    (void)spec;  // mu(Psi_delta) = 1/v since the bump has unit mass
    return std::log(T) / v_gamma(p) + kron_inf_at_i(p);
}

double two_sided_shear(double T, const BumpSpec& spec, Int p, double scale) {
    if (!(T >= 2.0)) throw std::domain_error("two_sided_shear: T must be >= 2");
    if (!(scale > 0.0)) throw std::domain_error("two_sided_shear: scale must be > 0");
    require_delta(spec.delta);
    require_level(p);
    // Evaluating Psi^(a_t) (e^t = scale) substitutes y' = scale*y in the
    // infinity-side integral and y' = y/scale in the sigma-side one; the two
    // pieces still tile the full ray (0, inf) exactly.
    double y0 = 1.0 / std::sqrt(T * T + 1.0);
    double side_inf = windows_integral(T, spec, p, RowMode::A, y0 * scale);
    double side_zero = windows_integral(T, spec, p, RowMode::B, y0 / scale);
    return side_inf + side_zero;
}

double predicted_two_sided(double T, const BumpSpec& spec, Int p) {
    require_level(p);
    (void)spec;
    double w = std::sqrt(static_cast<double>(p));  // sqrt(w1 w2), w1 = 1, w2 = p
    return 2.0 * std::log(T * w) / v_gamma(p) + kron_inf_at_i(p) + kron_zero_at_i(p);
}

}  // namespace qcensus::shear
