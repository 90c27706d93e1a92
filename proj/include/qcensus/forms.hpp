#pragma once

// Binary quadratic forms of square discriminant and their group actions:
// the spin morphism iota: SL2 -> SO_{b^2-4ac}, the W_d <-> V_d bijection,
// orbit representatives and exact classification under Gamma_1 = SL2(Z) and
// the level-2 group Gamma_2, cone radii, and the per-orbit cusp/width tables.
//
// All arithmetic is exact: int64 rationals with overflow-checked operations
// (std::overflow_error on any overflow; the spec-scale inputs stay far below
// the limits).

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace qcensus::forms {

using Int = std::int64_t;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int gcd(Int a, Int b);

// Exact rational, normalized (den > 0, gcd(num,den) = 1).
struct Rat {
    Int num = 0;
    Int den = 1;

    Rat() = default;
    Rat(Int n) : num(n), den(1) {}
    Rat(Int n, Int d);

    bool is_integer() const { return den == 1; }
    Int as_int() const;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rat operator+(Rat a, Rat b);
    friend Rat operator-(Rat a, Rat b);
    friend Rat operator*(Rat a, Rat b);
    friend Rat operator/(Rat a, Rat b);
    friend Rat operator-(Rat a) { return Rat(-a.num, a.den); }
    friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(Rat a, Rat b) { return !(a == b); }
};

// 2x2 exact rational matrix (group elements, scaling matrices tau_j etc).
struct Mat2q {
    Rat a, b, c, d;
    Rat det() const { return a * d - b * c; }
    friend Mat2q operator*(const Mat2q& x, const Mat2q& y);
    friend bool operator==(const Mat2q& x, const Mat2q& y);
};

// Integer matrix (SL2(Z) words, split matrices, HNF).
struct Mat2i {
    Int a = 1, b = 0, c = 0, d = 1;
    Int det() const { return checked_sub(checked_mul(a, d), checked_mul(b, c)); }
    Mat2i inverse_unimodular() const;  // requires det = 1
    Mat2q to_rational() const { return {Rat(a), Rat(b), Rat(c), Rat(d)}; }
    friend Mat2i operator*(const Mat2i& x, const Mat2i& y);
    friend bool operator==(const Mat2i& x, const Mat2i& y);
};

// A point (a,b,c) of V_d or its half-integral variant; denominators divide 2.
struct FormTriple {
    Rat a, b, c;

    Rat disc() const { return b * b - Rat(4) * a * c; }
    bool is_integral() const;
    // b in Z, a,c in (1/2)Z, a+c in Z
    bool is_tilde_integral() const;
    friend bool operator==(const FormTriple& u, const FormTriple& v);
};

using Spin3 = std::array<std::array<Rat, 3>, 3>;

// The spin morphism iota(a,b;c,d) = [[a^2,2ab,b^2],[ac,ad+bc,bd],[c^2,2cd,d^2]];
// requires det = 1.
Spin3 spin(const Mat2q& g);

// (a,b,c)^g = (a,b,c) * iota(g); preserves the discriminant exactly.
FormTriple act(const FormTriple& v, const Mat2q& g);
FormTriple act(const FormTriple& v, const Mat2i& g);

// (x,y,z) -> ((z+y)/2, x, (z-y)/2), a bijection W_d <-> tilde-V_d with
// x^2+y^2+z^2 = 2a^2+b^2+2c^2.
FormTriple w_to_v(Int x, Int y, Int z);
std::array<Int, 3> v_to_w(const FormTriple& v);  // throws unless tilde-integral

enum class Lattice { Gamma1, Gamma2 };
enum class FormKind { Plain, Tilde };

struct OrbitClass {
    Lattice lattice = Lattice::Gamma1;
    FormKind kind = FormKind::Plain;  // Gamma1 classes are all Plain
    Int j = 0;                        // Gamma1: 0 <= j < n;  Gamma2: 0 <= j < 2n

    friend bool operator==(const OrbitClass& x, const OrbitClass& y) {
        return x.lattice == y.lattice && x.kind == y.kind && x.j == y.j;
    }
    friend bool operator<(const OrbitClass& x, const OrbitClass& y) {
        if (x.kind != y.kind) return x.kind < y.kind;
        return x.j < y.j;
    }
};

// Gamma1: (0,n,j) for 0 <= j < n.
// Gamma2: plain (0,n,j) for 0 <= j < 2n, then tilde (n+j/2, n+j, j/2).
std::vector<std::pair<OrbitClass, FormTriple>> orbit_reps(Int n, Lattice lat);

// Factor an integral form of discriminant n^2 > 0 as Q = (Ax+By)(Cx+Dy);
// deterministic canonical choice with det(M) = +n.
Mat2i split_form(const FormTriple& v);

// Column-style Hermite reduction: returns (H, g) with M*g = H = (A,0;C,D),
// A,D > 0, AD = det(M) = n, 0 <= C < D, g in SL2(Z).
std::pair<Mat2i, Mat2i> hnf_with_witness(Mat2i M);

// Gamma1 classification with an explicit witness: returns (j, gamma) with
// (0,n,j)^gamma = v; every call verifies the witness exactly.
std::pair<Int, Mat2i> classify_gamma1_witness(const FormTriple& v);

OrbitClass classify(const FormTriple& v, Lattice lat);

// T_n = sqrt(T^2/(2n^2) - 1/2); throws for T < n (empty ball).
double cone_radius(Int n, double T);

// Cusp pair (a_j, b_j) of the two cone ends for the Gamma_2 orbit (kind, j):
// plain classes sit at (infinity, *), tilde classes at (one, *), with the
// second cusp decided by the parity of nj/(n,j)^2 resp. j(j+2n)/(2n,j)^2.
enum class CuspG2 { Infinity, One };
std::pair<CuspG2, CuspG2> gamma2_cusp_pair(Int n, Int j, FormKind kind);

// Width pair (omega, omega') for the Gamma_2 orbit (kind, j).
std::pair<Int, Int> gamma2_width_pair(Int n, Int j, FormKind kind);

}  // namespace qcensus::forms
