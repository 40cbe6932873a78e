#pragma once

#include "pscat/rational.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace pscat {

// One term of a cyclotomic number: coefficient times a basis monomial.
// Keys are mixed-radix packings of per-prime-power exponents; key 0 is 1.
struct CycloTerm {
    std::uint64_t key;
    Rational coeff;
};

// Element of Q(zeta_N) as a sparse, sorted, zero-free term list over the
// tensor product of the power bases of Q(zeta_{l^k}) for the prime powers
// l^k exactly dividing N. The representation is canonical, so equality is
// structural. Arithmetic needs the owning CycloField.
class CycloNumber {
public:
    CycloNumber() = default;
    explicit CycloNumber(const Rational& r);

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    // Rational part when is_rational(), otherwise throws.
    Rational rational_value() const;
    const std::vector<CycloTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool operator==(const CycloNumber& other) const;
    bool operator!=(const CycloNumber& other) const { return !(*this == other); }

    CycloNumber operator-() const;
    CycloNumber scaled(const Rational& r) const;

    // Sum of sorted term lists; needs no field data.
    friend CycloNumber operator+(const CycloNumber& x, const CycloNumber& y);
    friend CycloNumber operator-(const CycloNumber& x, const CycloNumber& y);

    // Builds from unsorted terms with possible duplicates and zeros.
    static CycloNumber from_terms(std::vector<CycloTerm> terms);

private:
    std::vector<CycloTerm> terms_;
};

class CycloField {
public:
    explicit CycloField(std::uint64_t n);

    std::uint64_t conductor() const { return n_; }

    // zeta_N^a for any integer a.
    CycloNumber root(std::int64_t a) const;
    // zeta_m^a for m dividing N.
    CycloNumber root_of_order(std::int64_t a, std::uint64_t m) const;

    CycloNumber mul(const CycloNumber& x, const CycloNumber& y) const;
    CycloNumber conj(const CycloNumber& x) const;
    // The automorphism zeta_N -> zeta_N^k, gcd(k, N) = 1.
    CycloNumber automorphism(const CycloNumber& x, std::int64_t k) const;
    std::optional<CycloNumber> inverse(const CycloNumber& x) const;

    std::complex<double> embed(const CycloNumber& x) const;

    // Exponent a with monomial(key) = zeta_N^a; used for serialization.
    std::uint64_t key_to_exponent(std::uint64_t key) const;

private:
    struct Factor {
        std::uint64_t prime;
        unsigned power;
        std::uint64_t modulus;   // prime^power
        std::uint64_t degree;    // phi(modulus)
        std::uint64_t stride;    // radix weight in the packed key
        std::uint64_t crt;       // inverse of N/modulus modulo modulus
    };

    // Expands x_i^e (0 <= e < modulus) into the power basis: (exponent, sign).
    void reduce_factor(const Factor& f, std::uint64_t e,
                       std::vector<std::pair<std::uint64_t, int>>& out) const;
    // Maps per-factor exponents (each mod modulus) to canonical terms.
    void expand_monomial(const std::vector<std::uint64_t>& exps, const Rational& coeff,
                         std::vector<CycloTerm>& out) const;
    std::vector<std::uint64_t> unpack(std::uint64_t key) const;
    unsigned factor_level(const CycloNumber& x, std::size_t i) const;
    CycloNumber factor_automorphism(const CycloNumber& x, std::size_t i, std::uint64_t g) const;

    std::uint64_t n_;
    std::vector<Factor> factors_;
};

}  // namespace pscat
