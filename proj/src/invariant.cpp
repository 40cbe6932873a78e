#include "pscat/invariant.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace pscat {

InvariantVector::InvariantVector(std::map<int, Scalar> coeffs) {
    for (auto& [j, c] : coeffs)
        if (!c.is_zero()) c_.emplace(j, std::move(c));
}

InvariantVector InvariantVector::omega(int j, const Scalar& c) { return InvariantVector({{j, c}}); }

Scalar InvariantVector::coefficient(int j) const {
    auto it = c_.find(j);
    return it == c_.end() ? Scalar() : it->second;
}

bool InvariantVector::operator==(const InvariantVector& other) const {
    return (*this - other).is_zero();
}

InvariantVector InvariantVector::operator+(const InvariantVector& w) const {
    std::map<int, Scalar> r = c_;
    for (const auto& [j, c] : w.c_) r[j] += c;
    return InvariantVector(std::move(r));
}

InvariantVector InvariantVector::operator-(const InvariantVector& w) const {
    return *this + w.scaled(Scalar(-1));
}

InvariantVector InvariantVector::scaled(const Scalar& c) const {
    std::map<int, Scalar> r;
    for (const auto& [j, x] : c_) r.emplace(j, x * c);
    return InvariantVector(std::move(r));
}

InvariantVector invariant_fourier(const LocalField& K, const InvariantVector& v) {
    std::map<int, Scalar> r;
    const int d = static_cast<int>(K.delta());
    for (const auto& [j, c] : v.coeffs()) r[d - j] += c;
    return InvariantVector(std::move(r));
}

InvariantVector invariant_shift(const InvariantVector& v, int m) {
    std::map<int, Scalar> r;
    for (const auto& [j, c] : v.coeffs()) r.emplace(j + m, c);
    return InvariantVector(std::move(r));
}

InvariantVector invariant_cutoff(const LocalField& K, const InvariantVector& v, int n) {
    std::map<int, Scalar> r;
    for (const auto& [j, c] : v.coeffs()) {
        if (j <= n)
            r[j] += c;
        else
            r[n] += c * K.sqrt_q_power(n - j);
    }
    return InvariantVector(std::move(r));
}

Scalar invariant_inner(const LocalField& K, const InvariantVector& v, const InvariantVector& w) {
    Scalar sum;
    for (const auto& [j, a] : v.coeffs())
        for (const auto& [k, b] : w.coeffs()) sum += a.conj() * b * K.sqrt_q_power(-std::abs(j - k));
    return sum;
}

bool invariant_in_s0(const LocalField& K, const InvariantVector& v) {
    Scalar sum;
    for (const auto& [j, c] : v.coeffs()) sum += c * K.sqrt_q_power(-j);
    return sum.is_zero();
}

InvariantVector invariant_apply_A(const LocalField& K, const InvariantVector& v) {
    if (!invariant_in_s0(K, v)) throw std::invalid_argument("the operator A requires a function vanishing near 0");
    if (v.is_zero()) return v;
    // d_j = sum_{k >= j} c_k q^{-k/2} is the (scaled) value on |x| = q^j.
    int lo = v.coeffs().begin()->first;
    int hi = v.coeffs().rbegin()->first;
    std::map<int, Scalar> r;
    Scalar d;
    for (int j = hi; j >= lo; --j) {
        d += v.coefficient(j) * K.sqrt_q_power(-j);
        if (j == 0 || d.is_zero()) continue;
        Scalar w = d.scaled(Rational(j));
        r[j] += w * K.sqrt_q_power(j);
        r[j - 1] -= w * K.sqrt_q_power(j - 1);
    }
    return InvariantVector(std::move(r));
}

RationalSpectral invariant_spectral(const LocalField& K, const InvariantVector& v) {
    RationalSpectral::Poly p;
    for (const auto& [j, c] : v.coeffs()) p.emplace(j, c);
    return RationalSpectral(K.ctx(), std::move(p), 0, 1);
}

Scalar invariant_sector_trace(const LocalField& K, int n, const std::map<int, Scalar>& f) {
    if (n < 0) throw std::invalid_argument("cutoff exponent must be non-negative");
    const int d = static_cast<int>(K.delta());
    int lo = std::min(n, d - n);
    int hi = std::max(n, d - n);
    Scalar trace;
    for (int j = lo; j <= hi; ++j) {
        InvariantVector w;
        for (const auto& [m, c] : f)
            if (!c.is_zero()) w = w + InvariantVector::omega(j + m, c);
        w = invariant_cutoff(K, w, n);
        w = invariant_fourier(K, w);  // inverse transform: parity acts trivially here
        w = invariant_cutoff(K, w, n);
        w = invariant_fourier(K, w);
        for (const auto& [k, c] : w.coeffs())
            if (k < lo || k > hi) throw std::logic_error("sector operator leaves the window");
        trace += w.coefficient(j);
    }
    return trace;
}

}  // namespace pscat
