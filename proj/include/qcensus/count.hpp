#pragma once

// Exact enumeration of integer points: N_d(T) on the quadric
// x^2+y^2-z^2 = d inside the ball x^2+y^2+z^2 <= T^2, the form count
// N_{Q,d}(T) on b^2-4ac = d inside 2a^2+b^2+2c^2 <= T^2, brute-force
// oracles for both, and per-orbit tallies.
//
// The ball boundary is inclusive (<= T^2) in every engine and oracle.
// The fast engines are deterministically parallel: the outer range is cut
// into fixed blocks whose exact integer partial sums are added in block
// order, so totals are independent of the thread count.

#include <cstdint>
#include <map>

#include "qcensus/forms.hpp"

namespace qcensus::count {

using Int = std::int64_t;
using forms::Lattice;
using forms::OrbitClass;

struct CountResult {
    Int d = 0;
    double T = 0.0;
    Int total = 0;
    std::map<OrbitClass, Int> per_orbit;  // empty unless produced by orbit_tally
};

// Number of (x,y) in Z^2 with x^2+y^2 = m (m >= 1).
Int r2(Int m);

// Exhaustive (x,y)-loop oracle deriving z; intended for T <= 2000.
CountResult brute_count_w(Int d, double T);

// Slice engine: for each z with 2z^2+d <= T^2 add r2(z^2+d).
CountResult fast_count_w(Int d, double T, int threads = 1);

// Exhaustive (a,b)-loop oracle deriving c.
CountResult brute_count_q(Int d, double T);

// Divisor-pair engine over b = n (mod 2).
CountResult count_q(Int d, double T, int threads = 1);

// Enumerate and classify every point; Gamma1 tallies V_d(Z), Gamma2 tallies
// tilde-V_d(Z) (the image of W_d(Z)).  Feasible up to T ~ 2000.
CountResult orbit_tally(Int d, double T, Lattice lat);

}  // namespace qcensus::count
