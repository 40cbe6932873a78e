#pragma once

#include "pscat/spectral.hpp"

#include <map>
#include <utility>
#include <vector>

namespace pscat {

// k(z, w) = sum_i A_i(z) conj(B_i(w)) on the product of two circles.
class SeparableKernel {
public:
    struct Term {
        RationalSpectral left;
        RationalSpectral right;
    };

    SeparableKernel() = default;
    explicit SeparableKernel(const ScalarContext* ctx) : ctx_(ctx) {}

    const ScalarContext* context() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }
    void add(const RationalSpectral& left, const RationalSpectral& right);

    SeparableKernel operator+(const SeparableKernel& k) const;
    SeparableKernel scaled(const Scalar& c) const;
    // (z, w) -> conj k(w, z)
    SeparableKernel adjoint() const;

    // k(z, z) as a one-variable function.
    RationalSpectral diagonal() const;
    // z -> int k(z, w) g(w) dtheta(w)/2pi
    RationalSpectral apply(const RationalSpectral& g) const;
    std::optional<Scalar> eval(const Scalar& z, const Scalar& w) const;
    std::complex<double> eval_numeric(std::complex<double> z, std::complex<double> w) const;

    // Exact equality of the two-variable functions.
    bool equals(const SeparableKernel& k) const;
    bool is_zero() const;
    bool is_hermitian() const { return equals(adjoint()); }

private:
    const ScalarContext* ctx_ = nullptr;
    std::vector<Term> terms_;
};

// Finite double Laurent series sum a_{k,l} z^k conj(w)^l.
class LaurentKernel {
public:
    using Index = std::pair<int, int>;

    LaurentKernel() = default;
    explicit LaurentKernel(const ScalarContext* ctx) : ctx_(ctx) {}

    const ScalarContext* context() const { return ctx_; }
    const std::map<Index, Scalar>& coeffs() const { return a_; }
    void add(int k, int l, const Scalar& c);

    // sum_j int int z^{-j} A(z, w) w^j, each double integral done slice by slice.
    Scalar shifted_double_integral_sum() const;
    // int A(z, z) dtheta/2pi
    Scalar diagonal_integral() const;

private:
    const ScalarContext* ctx_ = nullptr;
    std::map<Index, Scalar> a_;
};

}  // namespace pscat
