#pragma once

#include "pscat/bruhat.hpp"
#include "pscat/local_field.hpp"
#include "pscat/mult_function.hpp"
#include "pscat/scalar.hpp"

#include <complex>
#include <map>
#include <mutex>
#include <optional>

namespace pscat {

// N(z) / (u^j v^k) with N a Laurent polynomial, u = 1 - z/sqrt(q) and
// v = 1 - 1/(z sqrt(q)). Kept canonical: N is not divisible by u (when
// j > 0) nor by v (when k > 0). On the unit circle conj(z) = 1/z.
class RationalSpectral {
public:
    using Poly = std::map<int, Scalar>;

    RationalSpectral() = default;
    explicit RationalSpectral(const ScalarContext* ctx) : ctx_(ctx) {}
    RationalSpectral(const ScalarContext* ctx, Poly numerator, int j = 0, int k = 0);

    static RationalSpectral constant(const ScalarContext* ctx, const Scalar& c);
    static RationalSpectral monomial(const ScalarContext* ctx, const Scalar& c, int m);
    // 1/u^j v^k
    static RationalSpectral poles(const ScalarContext* ctx, int j, int k);

    const ScalarContext* context() const { return ctx_; }
    const Poly& numerator() const { return num_; }
    int u_exp() const { return j_; }
    int v_exp() const { return k_; }
    bool is_zero() const { return num_.empty(); }
    bool is_laurent() const { return j_ == 0 && k_ == 0; }
    // Coefficient of z^m of the numerator.
    Scalar coefficient(int m) const;
    int min_exponent() const;
    int max_exponent() const;

    RationalSpectral operator+(const RationalSpectral& y) const;
    RationalSpectral operator-(const RationalSpectral& y) const;
    RationalSpectral operator*(const RationalSpectral& y) const;
    RationalSpectral operator-() const { return scaled(Scalar(-1)); }
    RationalSpectral scaled(const Scalar& c) const;
    // z^m r(z)
    RationalSpectral shifted(int m) const;
    bool operator==(const RationalSpectral& y) const;
    bool operator!=(const RationalSpectral& y) const { return !(*this == y); }

    // z -> 1/z
    RationalSpectral reflect() const;
    // Complex conjugate on the circle: conjugate coefficients and reflect.
    RationalSpectral conj() const;
    // z d/dz, in units of log q.
    RationalSpectral derivative() const;

    // Integral against d theta / 2 pi by residues at 0 and 1/sqrt(q).
    Scalar circle_integral() const;
    // Exact value; empty at a pole or when a denominator is not invertible.
    std::optional<Scalar> eval(const Scalar& z) const;
    std::complex<double> eval_numeric(std::complex<double> z) const;
    // Trapezoid rule with the given number of circle samples.
    std::complex<double> circle_integral_numeric(int samples) const;

    // Numerator evaluated at sqrt(q) divided by v(sqrt(q))^k; requires j = 0.
    Scalar value_at_sqrt_q() const;

private:
    void canonicalize();
    Scalar sqrt_q_pow(long k) const;
    const ScalarContext* ensure_ctx(const RationalSpectral& y) const;

    const ScalarContext* ctx_ = nullptr;
    Poly num_;
    int j_ = 0;
    int k_ = 0;
};

// Laurent polynomial helpers shared by the spectral and kernel code.
namespace laurent {
using Poly = RationalSpectral::Poly;
Poly add(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Scalar& c);
Poly u_power(const ScalarContext* ctx, int j);
Poly v_power(const ScalarContext* ctx, int k);
Scalar eval(const Poly& a, const Scalar& z);
void prune(Poly& a);
}  // namespace laurent

using SpectralElement = std::map<UnitCharacter, RationalSpectral>;

SpectralElement spectral_add(const SpectralElement& x, const SpectralElement& y);
SpectralElement spectral_scale(const SpectralElement& x, const Scalar& c);
bool spectral_equal(const SpectralElement& x, const SpectralElement& y);
SpectralElement spectral_derivative(const SpectralElement& x);
// l(chi; z) -> l(conj chi; 1/z)
SpectralElement spectral_inversion(const LocalField& K, const SpectralElement& x);
// sum over components of the circle integral of conj(x) y
Scalar spectral_inner_product(const SpectralElement& x, const SpectralElement& y);

// Mellin transform against d*t; one component per character of (Z/p^e)^x.
SpectralElement mellin(const LocalField& K, const MultFunction& f);
// Inverse for Laurent components; throws if a component has a denominator.
MultFunction mellin_inverse(const LocalField& K, const SpectralElement& l);
// Spectral picture of a Schwartz-Bruhat function: mellin(to_mult) on the
// part away from 0 plus the closed form of the ball indicators at 0.
SpectralElement spectral_transform(const LocalField& K, const BruhatFunction& phi);

enum class MultiplierKind { Gamma, H, T, S, Alpha };
const char* multiplier_name(MultiplierKind kind);

// Spectral calculus bound to one local field; caches root numbers.
class SpectralCalculus {
public:
    explicit SpectralCalculus(const LocalField& K) : K_(K) {}

    const LocalField& field() const { return K_; }

    // w(chi) for ramified chi from the Fourier image of chi(x) 1_units.
    Scalar root_number(const UnitCharacter& chi) const;
    bool has_root_numbers() const { return K_.params().concrete(); }

    // The multiplier on the component chi. H and T are in log q units.
    RationalSpectral multiplier(MultiplierKind kind, const UnitCharacter& chi) const;
    SpectralElement apply_multiplier(MultiplierKind kind, const SpectralElement& l) const;

    // Component chi of the result is Gamma(chi; z) l(conj chi; 1/z).
    SpectralElement apply_fourier(const SpectralElement& l) const;
    // Multiplication by chi(-1) on each component.
    SpectralElement apply_parity(const SpectralElement& l) const;

private:
    const LocalField& K_;
    mutable std::mutex mu_;
    mutable std::map<UnitCharacter, Scalar> roots_;
};

}  // namespace pscat
