#include "qcensus/forms.hpp"

#include <cmath>
#include <stdexcept>

#include "qcensus/arith.hpp"

namespace qcensus::forms {

Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 add overflow");
    return r;
}
Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 sub overflow");
    return r;
}
Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 mul overflow");
    return r;
}

Int gcd(Int a, Int b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rat::Rat(Int n, Int d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) {
        n = checked_sub(0, n);
        d = checked_sub(0, d);
    }
    Int g = gcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

Int Rat::as_int() const {
    if (den != 1) throw std::domain_error("Rat: not an integer");
    return num;
}

Rat operator+(Rat a, Rat b) {
    return Rat(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
               checked_mul(a.den, b.den));
}
Rat operator-(Rat a, Rat b) {
    return Rat(checked_sub(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
               checked_mul(a.den, b.den));
}
Rat operator*(Rat a, Rat b) {
    return Rat(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
}
Rat operator/(Rat a, Rat b) {
    if (b.num == 0) throw std::domain_error("Rat: division by zero");
    return Rat(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
}

Mat2q operator*(const Mat2q& x, const Mat2q& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
bool operator==(const Mat2q& x, const Mat2q& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

Mat2i operator*(const Mat2i& x, const Mat2i& y) {
    return {checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
            checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
            checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
            checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d))};
}
bool operator==(const Mat2i& x, const Mat2i& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

Mat2i Mat2i::inverse_unimodular() const {
    if (det() != 1) throw std::domain_error("inverse_unimodular: det must be 1");
    return {d, checked_sub(0, b), checked_sub(0, c), a};
}

bool FormTriple::is_integral() const {
    return a.is_integer() && b.is_integer() && c.is_integer();
}

bool FormTriple::is_tilde_integral() const {
    if (!b.is_integer()) return false;
    if (a.den > 2 || c.den > 2) return false;
    return (a + c).is_integer();
}

bool operator==(const FormTriple& u, const FormTriple& v) {
    return u.a == v.a && u.b == v.b && u.c == v.c;
}

Spin3 spin(const Mat2q& g) {
    if (g.det() != Rat(1)) throw std::domain_error("spin: det(g) must be 1");
    return {{{g.a * g.a, Rat(2) * g.a * g.b, g.b * g.b},
             {g.a * g.c, g.a * g.d + g.b * g.c, g.b * g.d},
             {g.c * g.c, Rat(2) * g.c * g.d, g.d * g.d}}};
}

FormTriple act(const FormTriple& v, const Mat2q& g) {
    Spin3 s = spin(g);
    return {v.a * s[0][0] + v.b * s[1][0] + v.c * s[2][0],
            v.a * s[0][1] + v.b * s[1][1] + v.c * s[2][1],
            v.a * s[0][2] + v.b * s[1][2] + v.c * s[2][2]};
}

FormTriple act(const FormTriple& v, const Mat2i& g) { return act(v, g.to_rational()); }

FormTriple w_to_v(Int x, Int y, Int z) {
    return {Rat(checked_add(z, y), 2), Rat(x), Rat(checked_sub(z, y), 2)};
}

std::array<Int, 3> v_to_w(const FormTriple& v) {
    if (!v.is_tilde_integral()) throw std::domain_error("v_to_w: not tilde-integral");
    return {v.b.as_int(), (v.a - v.c).as_int(), (v.a + v.c).as_int()};
}

std::vector<std::pair<OrbitClass, FormTriple>> orbit_reps(Int n, Lattice lat) {
    if (n < 1) throw std::domain_error("orbit_reps: n must be >= 1");
    std::vector<std::pair<OrbitClass, FormTriple>> reps;
    if (lat == Lattice::Gamma1) {
        for (Int j = 0; j < n; ++j)
            reps.push_back({{lat, FormKind::Plain, j}, {Rat(0), Rat(n), Rat(j)}});
        return reps;
    }
    for (Int j = 0; j < 2 * n; ++j)
        reps.push_back({{lat, FormKind::Plain, j}, {Rat(0), Rat(n), Rat(j)}});
    for (Int j = 0; j < 2 * n; ++j)
        reps.push_back({{lat, FormKind::Tilde, j},
                        {Rat(n) + Rat(j, 2), Rat(checked_add(n, j)), Rat(j, 2)}});
    return reps;
}

namespace {

// extended gcd: returns (g, x, y) with a*x + b*y = g >= 0
std::array<Int, 3> egcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;
        Int t = checked_sub(a, checked_mul(q, b));
        a = b;
        b = t;
        t = checked_sub(x0, checked_mul(q, x1));
        x0 = x1;
        x1 = t;
        t = checked_sub(y0, checked_mul(q, y1));
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    return {a, x0, y0};
}

Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Int mod_inverse(Int a, Int m) {
    if (m == 1) return 0;
    auto [g, x, y] = egcd(a % m, m);
    if (g != 1) throw std::domain_error("mod_inverse: not invertible");
    Int r = x % m;
    return r < 0 ? r + m : r;
}

// reduce p/q to lowest terms with positive second component
std::pair<Int, Int> reduced(Int p, Int q) {
    Int g = gcd(p, q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return {p, q};
}

FormTriple form_of_matrix(const Mat2i& m) {
    return {Rat(checked_mul(m.a, m.c)),
            Rat(checked_add(checked_mul(m.a, m.d), checked_mul(m.b, m.c))),
            Rat(checked_mul(m.b, m.d))};
}

// class index of the reduced HNF invariant t = A*C in [0,n): the rep (0,n,j)
// reduces to t = g * ((j/g)^{-1} mod n/g), g = gcd(j,n), an involution.
Int hnf_invariant_to_class(Int t, Int n) {
    if (t == 0) return 0;
    Int g = gcd(t, n);
    return checked_mul(g, mod_inverse(t / g, n / g));
}

}  // namespace

Mat2i split_form(const FormTriple& v) {
    if (!v.is_integral()) throw std::domain_error("split_form: form must be integral");
    Int a = v.a.as_int(), b = v.b.as_int(), c = v.c.as_int();
    Int disc = checked_sub(checked_mul(b, b), checked_mul(4, checked_mul(a, c)));
    if (disc <= 0) throw std::domain_error("split_form: discriminant must be positive");
    Int n = arith::isqrt(disc);
    if (checked_mul(n, n) != disc)
        throw std::domain_error("split_form: discriminant must be a perfect square");

    Mat2i M;
    if (a == 0) {
        // Q = y (bx + cy)
        M = {b, c, 0, 1};
    } else {
        // roots (-b+-n)/(2a) as reduced fractions p_i/q_i; the content factor
        // k = a/(q1 q2) is an exact integer by Gauss's lemma
        auto [p1, q1] = reduced(checked_add(-b, n), checked_mul(2, a));
        auto [p2, q2] = reduced(checked_sub(-b, n), checked_mul(2, a));
        Int q1q2 = checked_mul(q1, q2);
        if (q1q2 == 0 || a % q1q2 != 0)
            throw std::logic_error("split_form: content factor not integral");
        Int k = a / q1q2;
        M = {checked_mul(k, q1), checked_mul(k, -p1), q2, -p2};
    }
    if (M.det() == -n) M = {M.c, M.d, M.a, M.b};  // swapping factors flips det
    if (M.det() != n) throw std::logic_error("split_form: determinant mismatch");
    // canonical sign: first nonzero entry of the top row positive
    if (M.a < 0 || (M.a == 0 && M.b < 0)) M = {-M.a, -M.b, -M.c, -M.d};
    if (!(form_of_matrix(M) == v)) throw std::logic_error("split_form: product mismatch");
    return M;
}

std::pair<Mat2i, Mat2i> hnf_with_witness(Mat2i M) {
    Int n = M.det();
    if (n <= 0) throw std::domain_error("hnf_with_witness: det must be positive");
    Mat2i g{1, 0, 0, 1};
    if (M.b != 0) {
        auto [g0, x, y] = egcd(M.a, M.b);
        Mat2i gamma{x, -M.b / g0, y, M.a / g0};
        M = M * gamma;
        g = g * gamma;
    } else if (M.a < 0) {
        Mat2i gamma{-1, 0, 0, -1};
        M = M * gamma;
        g = g * gamma;
    }
    // now M = (A,0;C,D), A > 0, D = n/A > 0; reduce C into [0,D)
    Int k = -floor_div(M.c, M.d);
    Mat2i gamma{1, 0, k, 1};
    M = M * gamma;
    g = g * gamma;
    if (M.b != 0 || M.a <= 0 || M.d <= 0 || M.c < 0 || M.c >= M.d)
        throw std::logic_error("hnf_with_witness: reduction failed");
    return {M, g};
}

std::pair<Int, Mat2i> classify_gamma1_witness(const FormTriple& v) {
    Mat2i Mv = split_form(v);
    Int n = Mv.det();
    auto [Hv, g1] = hnf_with_witness(Mv);
    Int t = checked_mul(Hv.a, Hv.c) % n;
    Int j = hnf_invariant_to_class(t, n);

    FormTriple rep{Rat(0), Rat(n), Rat(j)};
    Mat2i Mr = split_form(rep);
    auto [Hr, g2] = hnf_with_witness(Mr);
    Mat2i gamma = g2 * g1.inverse_unimodular();
    if (!(act(rep, gamma) == v))
        throw std::logic_error("classify_gamma1_witness: witness verification failed");
    return {j, gamma};
}

OrbitClass classify(const FormTriple& v, Lattice lat) {
    if (lat == Lattice::Gamma1) {
        if (!v.is_integral())
            throw std::domain_error("classify: Gamma1 requires an integral form");
        return {Lattice::Gamma1, FormKind::Plain, classify_gamma1_witness(v).first};
    }
    if (!v.is_tilde_integral())
        throw std::domain_error("classify: Gamma2 requires a tilde-integral form");
    // double into V_{4d}, classify under Gamma1 with witness, then split the
    // witness as sigma * gamma2 with sigma in {I, (1,1;0,1), (1,0;1,1)}
    FormTriple u{v.a * Rat(2), v.b * Rat(2), v.c * Rat(2)};
    auto [jp, gamma] = classify_gamma1_witness(u);
    Int n2 = arith::isqrt(u.disc().as_int());
    Int n = n2 / 2;

    int am = static_cast<int>(((gamma.a % 2) + 2) % 2);
    int bm = static_cast<int>(((gamma.b % 2) + 2) % 2);
    int cm = static_cast<int>(((gamma.c % 2) + 2) % 2);
    int dm = static_cast<int>(((gamma.d % 2) + 2) % 2);
    int code = am * 8 + bm * 4 + cm * 2 + dm;

    OrbitClass cls{Lattice::Gamma2, FormKind::Plain, 0};
    Mat2i sigma{1, 0, 0, 1};
    switch (code) {
        case 0b1001:  // I
        case 0b0110:  // (0,1;1,0)
            if (jp % 2 != 0) throw std::logic_error("classify: parity violation (I)");
            cls = {Lattice::Gamma2, FormKind::Plain, jp / 2};
            sigma = {1, 0, 0, 1};
            break;
        case 0b1101:  // (1,1;0,1)
        case 0b1110:  // (1,1;1,0)
            if (jp % 2 != 0) throw std::logic_error("classify: parity violation (n1)");
            cls = {Lattice::Gamma2, FormKind::Plain, n + jp / 2};
            sigma = {1, 1, 0, 1};
            break;
        case 0b1011:  // (1,0;1,1)
        case 0b0111:  // (0,1;1,1)
            cls = {Lattice::Gamma2, FormKind::Tilde, jp};
            sigma = {1, 0, 1, 1};
            break;
        default:
            throw std::logic_error("classify: impossible residue class");
    }
    // verify: v = rep_cls ^ (sigma^-1 gamma), the Gamma_2 part of the witness
    Mat2i gtilde = sigma.inverse_unimodular() * gamma;
    auto reps = orbit_reps(n, Lattice::Gamma2);
    const FormTriple& rep = reps[static_cast<std::size_t>(
                                     cls.kind == FormKind::Tilde ? 2 * n + cls.j : cls.j)]
                                .second;
    if (!(act(rep, gtilde) == v))
        throw std::logic_error("classify: Gamma2 witness verification failed");
    return cls;
}

double cone_radius(Int n, double T) {
    if (n < 1) throw std::domain_error("cone_radius: n must be >= 1");
    if (T < static_cast<double>(n)) throw std::domain_error("cone_radius: empty ball (T < n)");
    double t = T / static_cast<double>(n);
    return std::sqrt(t * t / 2.0 - 0.5);
}

std::pair<CuspG2, CuspG2> gamma2_cusp_pair(Int n, Int j, FormKind kind) {
    if (n < 1 || j < 0 || j >= 2 * n) throw std::domain_error("gamma2_cusp_pair: bad index");
    if (kind == FormKind::Plain) {
        Int g = (j == 0) ? n : gcd(n, j);
        Int t = checked_mul(n, j) / checked_mul(g, g);
        return {CuspG2::Infinity, t % 2 == 0 ? CuspG2::Infinity : CuspG2::One};
    }
    Int g = (j == 0) ? 2 * n : gcd(2 * n, j);
    Int t = checked_mul(j, checked_add(j, 2 * n)) / checked_mul(g, g);
    return {CuspG2::One, t % 2 == 0 ? CuspG2::Infinity : CuspG2::One};
}

std::pair<Int, Int> gamma2_width_pair(Int n, Int j, FormKind kind) {
    if (n < 1 || j < 0 || j >= 2 * n) throw std::domain_error("gamma2_width_pair: bad index");
    if (kind == FormKind::Plain) {
        Int g = (j == 0) ? n : gcd(n, j);
        Int t = checked_mul(n, j) / checked_mul(g, g);
        Int base = checked_mul(n, n) / checked_mul(g, g);
        return {2, t % 2 == 1 ? base : checked_mul(2, base)};
    }
    Int g = (j == 0) ? 2 * n : gcd(2 * n, j);
    Int base = checked_mul(4, checked_mul(n, n)) / checked_mul(g, g);
    bool small = (j != 0) && ((j / g) % 2 == 1) && (((2 * n) / g) % 2 == 0);
    return {1, small ? base : checked_mul(2, base)};
}

}  // namespace qcensus::forms
