#pragma once

// Numerical verification of shear equidistribution: periodized spherical
// bumps Psi_delta(z) = sum_{gamma in Gamma} psi_delta(gamma z) on
// Gamma_0(p)\H, the shear integral
//
//   int_{1/sqrt(T^2+1)}^inf Psi_delta(Ty + iy) dy/y,
//
// its predicted main term (1/v_Gamma) log(T w) + K_{Gamma,inf}(i), and the
// two-sided variant with prediction 2 mu log(T sqrt(w1 w2)) + K_inf + K_0.
//
// The integrand's support is enumerated exactly: a group element gamma
// contributes on the y-interval where the ray meets the delta-ball around
// w = gamma^{-1} i, and writing w = v(q + i) the integer q = ac+bd is
// confined to |q - T cosh d| <= sqrt(T^2+1) sinh d, a finite window
// independent of the bottom row (c,d).  Each window is integrated by
// adaptive Simpson refinement; windows are summed in a fixed sorted order.

#include <cstdint>
#include <functional>
#include <vector>

#include "qcensus/forms.hpp"
#include "qcensus/special.hpp"

namespace qcensus::shear {

using Int = std::int64_t;
using special::HalfPlanePoint;

struct BumpSpec {
    double delta = 0.05;
    std::function<double(double)> profile;  // radial profile on [0,1)
    double normalization = 0.0;             // c with  int_H c*profile(rho/delta) dmu = 1
};

// The standard smooth compactly supported profile exp(1 - 1/(1-u^2)).
double standard_profile(double u);

// c with 2 pi c int_0^delta profile(rho/delta) sinh(rho) drho = 1.
double bump_normalization(double delta, const std::function<double(double)>& profile);

// Bump with the standard profile and its normalization precomputed.
BumpSpec make_bump(double delta);

// All gamma in Gamma_0(p) (one representative per +-pair) with hyperbolic
// distance d(gamma z, i) <= delta; complete by the box bound
// |cz+d|^2 in [y e^-delta, y e^delta].  pad >= 1 widens the enumeration box
// (the result must not change; used as a completeness check).
std::vector<forms::Mat2i> nearby_group_elements(HalfPlanePoint z, double delta, Int p,
                                                double pad = 1.0);

// Psi_delta(z), evaluated over nearby_group_elements.
double periodized_bump_eval(HalfPlanePoint z, const BumpSpec& spec, Int p);

// One-sided shear integral along y -> Ty + iy, y >= 1/sqrt(T^2+1).
double shear_integral(double T, const BumpSpec& spec, Int p);

// (1/v_Gamma) log(T * w_inf) + K_{Gamma,inf}(i), w_inf = 1 for Gamma_0(p).
double predicted_shear(double T, const BumpSpec& spec, Int p);

// mu_T(Psi) = int_0^inf Psi(Ty+iy) dy/y, computed as the two one-sided
// integrals of the inversion identity; scale > 0 evaluates Psi^(a_t) with
// e^t = scale (the result is scale-invariant).
double two_sided_shear(double T, const BumpSpec& spec, Int p, double scale = 1.0);

// 2 mu_Gamma log(T sqrt(w1 w2)) + K_{Gamma,inf}(i) + K_{Gamma,0}(i), with
// w1 = 1, w2 = p the widths at infinity of Gamma and its sigma-conjugate.
double predicted_two_sided(double T, const BumpSpec& spec, Int p);

}  // namespace qcensus::shear
