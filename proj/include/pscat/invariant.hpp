#pragma once

#include "pscat/local_field.hpp"
#include "pscat/spectral.hpp"

#include <map>

namespace pscat {

// Combination of the normalized ball indicators omega_j (ball of radius q^j),
// valid for any (q, delta). <omega_j | omega_k> = q^{-|j-k|/2}.
class InvariantVector {
public:
    InvariantVector() = default;
    explicit InvariantVector(std::map<int, Scalar> coeffs);
    static InvariantVector omega(int j, const Scalar& c = Scalar(1));

    const std::map<int, Scalar>& coeffs() const { return c_; }
    Scalar coefficient(int j) const;
    bool is_zero() const { return c_.empty(); }
    bool operator==(const InvariantVector& other) const;

    InvariantVector operator+(const InvariantVector& w) const;
    InvariantVector operator-(const InvariantVector& w) const;
    InvariantVector scaled(const Scalar& c) const;

private:
    std::map<int, Scalar> c_;
};

InvariantVector invariant_fourier(const LocalField& K, const InvariantVector& v);
// U(1/pi)^m: omega_j -> omega_{j+m}
InvariantVector invariant_shift(const InvariantVector& v, int m);
InvariantVector invariant_cutoff(const LocalField& K, const InvariantVector& v, int n);
Scalar invariant_inner(const LocalField& K, const InvariantVector& v, const InvariantVector& w);
bool invariant_in_s0(const LocalField& K, const InvariantVector& v);
// Multiplication by log|x| in log q units; needs S_0.
InvariantVector invariant_apply_A(const LocalField& K, const InvariantVector& v);
// Trivial-component spectral function, without the common factor sqrt(1 - 1/q):
// omega_j -> z^j / (1 - 1/(z sqrt q)).
RationalSpectral invariant_spectral(const LocalField& K, const InvariantVector& v);

// Trace of P~_n P_n U(f) on the sector for unit-invariant f, with
// f_m the value of f on |t| = q^m; log q units.
Scalar invariant_sector_trace(const LocalField& K, int n, const std::map<int, Scalar>& f);

}  // namespace pscat
