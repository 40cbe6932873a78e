#pragma once

#include "pscat/cyclotomic.hpp"
#include "pscat/rational.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace pscat {

// Shared, immutable description of the coefficient tower
// Q(zeta_N)[s, a] / (s^2 - p, a^2 - (alpha + beta s)),
// where a^2 = q^{-delta/2} (1 - 1/q) and q = p^f.
// When sqrt(p) lies in Q(zeta_N) (always for the default conductor), s is
// replaced by that cyclotomic value so the tower has no zero divisors in s.
class ScalarContext {
public:
    // Interned: equal parameters give the same pointer.
    static const ScalarContext* get(std::uint64_t p, unsigned f, unsigned delta, std::uint64_t n);

    // Default cyclotomic conductor: deep enough for roots of unity of order
    // p^(2*max_level+4) and for every unit character of conductor <= max_conductor.
    static std::uint64_t default_conductor(std::uint64_t p, unsigned max_level,
                                           unsigned max_conductor);

    std::uint64_t p() const { return p_; }
    unsigned f() const { return f_; }
    unsigned delta() const { return delta_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t n() const { return field_.conductor(); }
    const CycloField& field() const { return field_; }
    // Largest k with p^k dividing N.
    unsigned p_depth() const { return p_depth_; }
    const Rational& alpha() const { return alpha_; }
    const Rational& beta() const { return beta_; }
    // +sqrt(p) as a cyclotomic number, if Q(zeta_N) contains it.
    const std::optional<CycloNumber>& sqrt_p() const { return sqrt_p_; }
    // a^2 as a cyclotomic number; requires sqrt_p().
    const CycloNumber& a_squared() const { return a_squared_; }

private:
    ScalarContext(std::uint64_t p, unsigned f, unsigned delta, std::uint64_t n);

    std::uint64_t p_;
    unsigned f_;
    unsigned delta_;
    std::uint64_t q_;
    unsigned p_depth_;
    CycloField field_;
    Rational alpha_;
    Rational beta_;
    std::optional<CycloNumber> sqrt_p_;
    CycloNumber a_squared_;
};

// Exact element x0 + x1 s + x2 a + x3 s a with cyclotomic coordinates.
// A null context means a plain rational usable with any context. Equality
// and zero tests are those of the embedded values: coordinates are reduced
// with sqrt(p) in Q(zeta_N), and a is compared against its square.
class Scalar {
public:
    Scalar() = default;
    Scalar(const Rational& r);  // NOLINT(google-explicit-constructor)
    Scalar(long v);             // NOLINT(google-explicit-constructor)
    Scalar(int v) : Scalar(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    Scalar(const ScalarContext* ctx, std::array<CycloNumber, 4> coords);

    static Scalar cyclo(const ScalarContext* ctx, const CycloNumber& c);
    // zeta_den^num
    static Scalar root_of_unity(const ScalarContext* ctx, std::int64_t num, std::uint64_t den);
    static Scalar s(const ScalarContext* ctx);
    static Scalar a(const ScalarContext* ctx);
    // s^k = p^{k/2}, any integer k.
    static Scalar sqrt_p_power(const ScalarContext* ctx, long k);
    // q^{k/2} = s^{f k}.
    static Scalar sqrt_q_power(const ScalarContext* ctx, long k);

    const ScalarContext* context() const { return ctx_; }
    const std::array<CycloNumber, 4>& coords() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& y);
    Scalar& operator-=(const Scalar& y);
    Scalar& operator*=(const Scalar& y);
    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    Scalar scaled(const Rational& r) const;

    bool operator==(const Scalar& y) const;
    bool operator!=(const Scalar& y) const { return !(*this == y); }

    Scalar conj() const;
    std::optional<Scalar> try_invert() const;
    // Division; throws std::domain_error when the divisor cannot be inverted.
    Scalar divided(const Scalar& y) const;

    std::complex<double> embed() const;
    std::string debug_string() const;

private:
    static const ScalarContext* merge(const ScalarContext* a, const ScalarContext* b);
    const CycloField* field() const { return ctx_ ? &ctx_->field() : nullptr; }
    // Folds the s coordinates into the cyclotomic ones when possible.
    void reduce();

    const ScalarContext* ctx_ = nullptr;
    std::array<CycloNumber, 4> c_{};
};

inline Scalar conj(const Scalar& x) { return x.conj(); }

}  // namespace pscat
