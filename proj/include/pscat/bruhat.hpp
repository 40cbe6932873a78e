#pragma once

#include "pscat/local_field.hpp"
#include "pscat/mult_function.hpp"
#include "pscat/qp.hpp"
#include "pscat/scalar.hpp"

#include <cstdint>
#include <vector>

namespace pscat {

struct BruhatTerm {
    Ball ball;
    Scalar coeff;
};

// Values on the cosets y p^{-a} + p^b Z_p, y in [0, p^{a+b}).
struct GridForm {
    int a = 0;
    int b = 0;
    std::vector<Scalar> values;
};

// Locally constant compactly supported function on Q_p, stored as a sum of
// ball indicators (the balls may overlap unless the function is normalized).
class BruhatFunction {
public:
    BruhatFunction() = default;
    explicit BruhatFunction(std::vector<BruhatTerm> terms) : terms_(std::move(terms)) {}

    const std::vector<BruhatTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const LocalField& K, const QpNum& center, int r, const Scalar& coeff);

    Scalar eval(const LocalField& K, const QpNum& x) const;

    // Smallest grid containing every term.
    void grid_bounds(const LocalField& K, int& a, int& b) const;
    GridForm to_grid(const LocalField& K) const;
    GridForm to_grid(const LocalField& K, int a, int b) const;
    static BruhatFunction from_grid(const LocalField& K, const GridForm& g);
    // Canonical form: coarsest disjoint balls, sorted, zero-free.
    BruhatFunction normalized(const LocalField& K) const;
    bool equals(const LocalField& K, const BruhatFunction& other) const;

    BruhatFunction operator+(const BruhatFunction& g) const;
    BruhatFunction operator-(const BruhatFunction& g) const;
    BruhatFunction scaled(const Scalar& c) const;

    // Vanishes on a neighbourhood of 0.
    bool in_s0(const LocalField& K) const;
    // Value on the ball p^r Z_p for r large (the germ at 0).
    Scalar value_at_zero(const LocalField& K) const;

    // Canonical terms of the given function which contain 0 or not.
    std::vector<BruhatTerm> normalized_terms(const LocalField& K) const;

private:
    std::vector<BruhatTerm> terms_;
};

Scalar integral(const LocalField& K, const BruhatFunction& phi);
Scalar inner_product(const LocalField& K, const BruhatFunction& phi, const BruhatFunction& psi);

// Grid Fourier transform: the exact character sum of size p^{a+b} per output.
GridForm fourier_grid_serial(const LocalField& K, const GridForm& g);
GridForm fourier_grid_parallel(const LocalField& K, const GridForm& g);

BruhatFunction fourier(const LocalField& K, const BruhatFunction& phi, bool parallel = true);
BruhatFunction fourier_inverse(const LocalField& K, const BruhatFunction& phi);
// phi(x) -> phi(-x)
BruhatFunction parity(const LocalField& K, const BruhatFunction& phi);
// The inversion phi(x) -> (1/|x|) phi(1/x). Needs S_0.
BruhatFunction invert_variable(const LocalField& K, const BruhatFunction& phi);
// U(t) with t = p^{-m} u: phi(x) -> |t|^{-1/2} phi(x/t).
BruhatFunction dilate(const LocalField& K, int m, std::int64_t u, const BruhatFunction& phi);
// Multiplication by log|x| in units of log q. Needs S_0.
BruhatFunction apply_A(const LocalField& K, const BruhatFunction& phi);

// f(t) = a |t|^{1/2} phi(t), and back.
MultFunction to_mult(const LocalField& K, const BruhatFunction& phi);
BruhatFunction from_mult(const LocalField& K, const MultFunction& f);

// Grid size cap for the Fourier character sum.
inline constexpr std::int64_t kMaxGridSize = 1 << 16;

}  // namespace pscat
