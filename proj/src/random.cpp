#include "pscat/random.hpp"

#include <stdexcept>

namespace pscat {

int RandomSource::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Rational RandomSource::rational(int max_num, int max_den) {
    int num = uniform(-max_num, max_num);
    int den = uniform(1, max_den);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Scalar RandomSource::scalar(const LocalField& K) {
    Scalar x(rational());
    if (uniform(0, 2) == 0) x += K.root_of_unity(1, 4) * Scalar(rational());
    return x;
}

BruhatFunction RandomSource::s0_function(const LocalField& K, unsigned max_e, int vmin, int vmax, int terms) {
    const auto& P = K.padic();
    BruhatFunction phi;
    for (int t = 0; t < terms; ++t) {
        int v = uniform(vmin, vmax);
        unsigned e = static_cast<unsigned>(uniform(1, static_cast<int>(max_e)));
        auto units = K.unit_residues(e);
        std::int64_t u = units[static_cast<std::size_t>(uniform(0, static_cast<int>(units.size()) - 1))];
        QpNum center = P.shift(P.make(u, 0), v);
        phi.add_term(K, center, v + static_cast<int>(e), scalar(K));
    }
    return phi;
}

BruhatFunction RandomSource::s0_dual_function(const LocalField& K, unsigned max_e) {
    const auto& P = K.padic();
    BruhatFunction phi = s0_function(K, max_e);
    // Cancel the integral with a multiple of the indicator of 1 + p Z_p.
    Scalar total = integral(K, phi);
    if (!total.is_zero()) {
        Scalar vol = integral(K, BruhatFunction({{P.ball(P.make(1, 0), 1), Scalar(1)}}));
        phi.add_term(K, P.make(1, 0), 1, -total.divided(vol));
    }
    return phi;
}

BruhatFunction RandomSource::d_minus_function(const LocalField& K, int depth, int terms) {
    const auto& P = K.padic();
    BruhatFunction phi;
    for (int t = 0; t < terms; ++t) {
        int r = uniform(0, depth);
        std::int64_t c = uniform(0, static_cast<int>(P.pow(r)) - 1);
        phi.add_term(K, P.make(c, 0), r, scalar(K));
    }
    Scalar total = integral(K, phi);
    if (!total.is_zero()) phi.add_term(K, P.make(0, 0), 0, -total);
    return phi;
}

MultFunction RandomSource::mult_function(const LocalField& K, unsigned level, int mmin, int mmax, int terms) {
    MultFunction f(level);
    auto units = K.unit_residues(level);
    for (int t = 0; t < terms; ++t) {
        int m = uniform(mmin, mmax);
        std::int64_t u = units[static_cast<std::size_t>(uniform(0, static_cast<int>(units.size()) - 1))];
        f.add(K, m, u, scalar(K));
    }
    return f.pruned();
}

InvariantVector RandomSource::invariant_s0_dual(const LocalField& K, int lo, int hi) {
    if (hi - lo < 2) throw std::invalid_argument("window too small");
    std::map<int, Scalar> c;
    for (int j = lo + 2; j <= hi; ++j) c[j] = Scalar(rational());
    // Solve for c_lo, c_{lo+1} so that sum c_j q^{-j/2} = 0 and sum c_j q^{j/2} = 0.
    Scalar r1, r2;
    for (const auto& [j, x] : c) {
        r1 -= x * K.sqrt_q_power(-j);
        r2 -= x * K.sqrt_q_power(j);
    }
    Scalar a11 = K.sqrt_q_power(-lo), a12 = K.sqrt_q_power(-(lo + 1));
    Scalar a21 = K.sqrt_q_power(lo), a22 = K.sqrt_q_power(lo + 1);
    Scalar det = a11 * a22 - a12 * a21;
    c[lo] = (r1 * a22 - a12 * r2).divided(det);
    c[lo + 1] = (a11 * r2 - a21 * r1).divided(det);
    return InvariantVector(c);
}

RationalSpectral RandomSource::laurent(const LocalField& K, int lo, int hi) {
    RationalSpectral::Poly p;
    for (int j = lo; j <= hi; ++j)
        if (uniform(0, 1)) p[j] = scalar(K);
    return RationalSpectral(K.ctx(), p);
}

LaurentKernel RandomSource::laurent_kernel(const LocalField& K, int lo, int hi, int terms) {
    LaurentKernel k(K.ctx());
    for (int t = 0; t < terms; ++t) k.add(uniform(lo, hi), uniform(lo, hi), scalar(K));
    // Make sure some diagonal terms are present.
    int j = uniform(lo, hi);
    k.add(j, j, Scalar(rational()));
    return k;
}

}  // namespace pscat
