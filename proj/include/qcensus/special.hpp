#pragma once

// High-precision special functions and the analytic layer: Riemann zeta and
// its derivative (Euler-Maclaurin), Gamma (Stirling with argument shift),
// Dedekind eta, completed zeta, K-Bessel (cosh-integral quadrature),
// Eisenstein scattering coefficients for SL2(Z) and Gamma_0(p), Kronecker
// limits, and the explicit constant
//
//   C = 2*gamma - 1 - 2*zeta'(2)/zeta(2) - log(2)/2 - log(Gamma(1/4)^4/(4 pi^3))
//     = 0.616174...

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace qcensus::special {

using Int = std::int64_t;

struct HalfPlanePoint {
    double re = 0.0;
    double im = 1.0;  // must be > 0
};

struct SpecialConstants {
    double euler_gamma;
    double zeta_prime_2;
    double zeta_2;
    double gamma_quarter;
    double C;
    double v_gamma1;  // hyperbolic area of SL2(Z)\H, = pi/3
};

// zeta(s) for real s > 1, absolute error <= 1e-13.
double zeta(double s);
// zeta'(s) for real s > 1, absolute error <= 1e-13.
double zeta_prime(double s);
// Gamma(s) for real s > 0, relative error <= 1e-12.
double gamma_fn(double s);
// Euler's constant, computed by Euler-Maclaurin summation of H_N - log N.
double euler_gamma();

const SpecialConstants& special_constants();
double constant_C();

// Dedekind eta, q-product truncated with tail below 1e-14.
std::complex<double> dedekind_eta(HalfPlanePoint z);

// zeta*(s) = pi^{-s/2} zeta(s) Gamma(s/2), s > 1.
double completed_zeta(double s);

// tau_s(m) = sum_{ab=|m|} (a/b)^s, m != 0; symmetric under s -> -s.
double divisor_tau(double s, Int m);

// K_nu(y) = int_0^inf exp(-y cosh t) cosh(nu t) dt, real nu (even in nu),
// y > 0; composite Gauss panels, absolute error well below 1e-10.
double kbessel(double nu, double y);

// SL2(Z) scattering data: phi(s) = zeta*(2s-1)/zeta*(2s),
// phi(s;m) = tau_{s-1/2}(m)/zeta*(2s).
double scattering_sl2z(double s);
double scattering_sl2z_m(double s, Int m);

// Gamma_0(p) scattering entries phi_{a,b}(s;m) for the cusps a,b in
// {infinity, 0}.  The coprime-case sign of phi_{inf,0} is the one forced by
// the decomposition E_{Gamma_1} = E_inf + p^s E_0:
//   (p,m)=1:  phi_{ii} = -phi(s;m)/(p^{2s}-1),  phi_{i0} = +p^s phi(s;m)/(p^{2s}-1)
//   p|m:      phi_{ii} = (p^{s+1/2} phi(s;m/p) - phi(s;m))/(p^{2s}-1)
//             phi_{i0} = (p^s phi(s;m) - sqrt(p) phi(s;m/p))/(p^{2s}-1)
struct ScatteringEntry {
    Int p;
    double s;
    Int m;
    double phi_inf_inf, phi_inf_0, phi_0_inf, phi_0_0;
};
ScatteringEntry scattering_gamma0p(double s, Int m, Int p);

// Constant-term (m = 0) scattering matrix entries for Gamma_0(p):
//   phi_{inf,inf}(s) = phi(s) (p-1)/(p^{2s}-1)
//   phi_{inf,0}(s)   = phi(s) (p^s - p^{1-s})/(p^{2s}-1)
// obtained from the same 2x2 system applied to the constant terms.
struct ScatteringConst {
    double phi_inf_inf, phi_inf_0;
};
ScatteringConst scattering_gamma0p_const(double s, Int p);

// Residuals of the two decomposition rows
//   phi_{ii} + p^s phi_{0i} - phi(s;m)
//   phi_{i0} + p^s phi_{00} - sqrt(p) phi(s;m/p)     (0 when p does not divide m)
// evaluated in extended precision (phi(s;m) reaches ~3e4 on the test grid, so
// a double-arithmetic residual would be dominated by final-rounding noise).
std::pair<double, double> scattering_consistency_residuals(double s, Int m, Int p);

// Kronecker limits.
//   K_{Gamma_1}(z)         = (3/pi)(2g - 2z'/z(2) - log(4y|eta(z)|^4))
//   K_{Gamma_0(p),inf}(z)  = 3/((p+1)pi) (2g - 2z'/z(2)
//                              - log(4y |eta(pz)|^{4p/(p-1)} / |eta(z)|^{4/(p-1)})
//                              - 2 p^2 log(p)/(p^2-1))
//   K_{Gamma_0(p),0}(z)    = 3/((p+1)pi) (2g - 2z'/z(2)
//                              - log(4y |eta(z)|^{4p/(p-1)} / |eta(pz)|^{4/(p-1)})
//                              + (1+2p-p^2) log(p)/(p^2-1))
// The cusp-0 log(p) coefficient is the unique one compatible with the
// decomposition K_{Gamma_1} = K_inf + p K_0 + 3p log(p)/((p+1)pi) for all p
// (it coincides with (p-1)^2/(p^2-1) at p = 2).
enum class Cusp { Infinity, Zero };
double kronecker_sl2z(HalfPlanePoint z);
double kronecker_gamma0p(HalfPlanePoint z, Int p, Cusp cusp);
double kronecker_gamma1_at_i();

// Kronecker limits of the theta-group-conjugate lattice at z = i, expressed
// through Gamma_0(2) at (1+i)/2: the cusp-infinity value is
// K_{Gamma_0(2),0}((1+i)/2) and the cusp-one value is
// K_{Gamma_0(2),inf}((1+i)/2).
double kronecker_gamma2_infinity_at_i();
double kronecker_gamma2_one_at_i();

// Direct coset-sum evaluation of the Eisenstein series.
//   cusp infinity: sum over coprime (c,d), c = 0 mod p, of y^s/|cz+d|^{2s}
//   cusp 0:        p^{-s} sum over coprime (c,d), c != 0 mod p (p>1)
// with c^2+d^2 <= radius^2; includes the y^s term; the reported tail bound
// comes from an integral comparison.  Requires s >= 1.5.
struct EisensteinValue {
    double value;
    double tail_bound;
};
EisensteinValue eisenstein_direct(HalfPlanePoint z, double s, Int p, Cusp cusp,
                                  Int radius);

// Trapezoidal Fourier coefficient (1/N) sum f(x_j) e(-m x_j / period) over
// x_j = j*period/N (real part); exact for band-limited truncations.
double fourier_coeff_numeric(const std::function<double(double)>& evaluator,
                             Int m, double period, int panels);

// Fourier coefficients of the truncated direct sum of E_{Gamma_0(p),of_series}
// expanded at cusp at_cusp, computed without forming the series pointwise:
// the m = 0 coefficient uses exact x-integrals of every (c,d) pair in the
// disc c^2+d^2 <= disc_radius^2, and the m >= 1 coefficients use an N-node
// trapezoid over the rows c <= c_split with |d| <= d_trunc.  The coprimality
// filter makes row c contribute mu(c)/c^{2s} times the c = 1 row coefficient
// (Moebius subrow with g = c), so the c-tail decays like c^{1-2s}; at the
// defaults the total truncation error is below 1e-7 for y ~ 1, s = 2.
struct EisTruncation {
    Int disc_radius = 4000;
    Int c_split = 64;
    Int d_trunc = 3000;
    int nodes = 256;
};
std::vector<double> eisenstein_fourier_direct(double y, double s, Int p,
                                              Cusp at_cusp, Cusp of_series,
                                              const std::vector<Int>& ms,
                                              const EisTruncation& tr = {});

// Model-side coefficient: delta_{a,b} y^s + phi_{a,b}(s) y^{1-s} for m = 0,
// phi_{a,b}(s;m) * 2 sqrt(y) K_{s-1/2}(2 pi |m| y) for m != 0.
double eisenstein_fourier_model(double y, double s, Int p, Cusp at_cusp,
                                Cusp of_series, Int m);

}  // namespace qcensus::special
