#pragma once

// The explicit main terms
//
//   M_d(T)    = sqrt(128) T/pi (log T + C - D(n) + log(2)(1/3 - 1/2^{nu+2}))
//   M_Q,d(T)  = sqrt(72)  T/pi (log T + C - D(n))
//
// their per-orbit cone refinement
//
//   (2 T_n / v) (log(T_n^2 w w') - 2 + v (K_a(i) + K_b(i))),
//
// the admissible error-exponent formulas in the Ramanujan parameter theta,
// and residual-series assembly with least-squares exponent fitting.

#include <cstdint>
#include <vector>

#include "qcensus/forms.hpp"

namespace qcensus::mainterm {

using Int = std::int64_t;
using forms::FormKind;
using forms::Lattice;

double main_term_w(Int d, double T);
double main_term_q(Int d, double T);

// Per-orbit cone main term at cone radius T_n = sqrt(T^2/2n^2 - 1/2).
// Gamma1 uses widths (1, n^2/(n,j)^2) and both Kronecker values K_{Gamma1}(i);
// Gamma2 uses the per-class width/cusp tables.
double cone_main_term(Int n, Int j, double T, Lattice lat,
                      FormKind kind = FormKind::Plain);

struct ExponentParams {
    double theta;
    double eta_max;        // 3/(40+72 theta)
    double beta_min;       // 3/2 + 2 theta
    double thm2_exponent;  // (3+4 theta)/(4+8 theta)
};
ExponentParams admissible_exponents(double theta);

struct CountSeries {
    struct Row {
        double T;
        Int count;
        double main;
        double residual;  // count - main
    };
    std::vector<Row> rows;
};

enum class CountTarget { W, Q };

CountSeries residual_series(Int d, const std::vector<double>& t_grid,
                            CountTarget target, int threads = 1);

// Least-squares slope of log|residual| against log T over rows with
// |residual| >= 1; requires at least 5 usable rows.
double fit_exponent(const CountSeries& series);

}  // namespace qcensus::mainterm
