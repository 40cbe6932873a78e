#pragma once

// Independent reference computations used by the tests. They avoid the
// library's transforms and residue calculus: plain character sums, direct
// quadrature and closed forms.

#include "pscat/bruhat.hpp"
#include "pscat/local_field.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using cd = std::complex<double>;

inline cd zeta(double num, double den) { return std::polar(1.0, 2 * std::numbers::pi * num / den); }

// Fractional part {x} of x = num / p^k as a double.
inline double frac_part(const pscat::QpNum& x, std::int64_t pk) {
    if (x.k <= 0) return 0.0;
    std::int64_t r = ((x.num % pk) + pk) % pk;
    return static_cast<double>(r) / static_cast<double>(pk);
}

// F phi(x) = int phi(y) lambda(-x y) dy by summing over the cosets of p^R Z_p
// inside p^{-A} Z_p, with lambda(t) = exp(2 pi i {t}). Valid for |x| <= p^R.
inline cd fourier_value(const pscat::LocalField& K, const pscat::BruhatFunction& phi, const pscat::QpNum& x, int A,
                        int R) {
    const auto& P = K.padic();
    std::int64_t count = P.pow(A + R);
    cd total = 0;
    // Coset representatives c / p^A for c in [0, p^{A+R}) cover p^{-A} Z_p / p^R Z_p.
    for (std::int64_t c = 0; c < count; ++c) {
        pscat::QpNum y = P.make(c, A);
        pscat::QpNum xy = P.mul(x, y);
        int kk = std::max(xy.k, 0);
        double phase = frac_part(xy, P.pow(kk));
        total += phi.eval(K, y).embed() * std::polar(1.0, -2 * std::numbers::pi * phase);
    }
    return total / static_cast<double>(P.pow(R));
}

// Root number of a ramified character of Q_p^x: chi(-1) G(chi) / sqrt(p^e)
// with G(chi) = sum_y chi(y) zeta_{p^e}^y.
inline cd root_number(const pscat::LocalField& K, const pscat::UnitCharacter& chi) {
    std::int64_t pe = K.padic().pow(static_cast<int>(chi.e));
    cd g = 0;
    for (std::int64_t y : K.unit_residues(chi.e)) g += K.char_eval(chi, y).embed() * zeta(static_cast<double>(y), pe);
    return static_cast<double>(K.parity(chi)) * g / std::sqrt(static_cast<double>(pe));
}

// Exact version of the same Gauss sum quotient.
inline pscat::Scalar root_number_exact(const pscat::LocalField& K, const pscat::UnitCharacter& chi) {
    std::int64_t pe = K.padic().pow(static_cast<int>(chi.e));
    pscat::Scalar g;
    for (std::int64_t y : K.unit_residues(chi.e))
        g += K.char_eval(chi, y) * K.root_of_unity(y, static_cast<std::uint64_t>(pe));
    return g * K.sqrt_p_power(-static_cast<long>(chi.e)) * pscat::Scalar(K.parity(chi));
}

// Trapezoid rule for int g(e^{i theta}) d theta / 2 pi.
inline cd circle_mean(const std::function<cd(cd)>& g, int samples = 4096) {
    cd total = 0;
    for (int k = 0; k < samples; ++k) total += g(std::polar(1.0, 2 * std::numbers::pi * (k + 0.5) / samples));
    return total / static_cast<double>(samples);
}

// Fourier coefficients of (1 - 1/q) / |1 - z/sqrt q|^2.
inline double poisson_coefficient(double q, int k) { return std::pow(q, -std::abs(k) / 2.0); }

}  // namespace oracle
