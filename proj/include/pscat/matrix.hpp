#pragma once

#include "pscat/scalar.hpp"

#include <cstddef>
#include <vector>

namespace pscat {

// Small dense square matrix over the exact scalars.
class ScalarMatrix {
public:
    ScalarMatrix() = default;
    explicit ScalarMatrix(std::size_t n) : n_(n), a_(n * n) {}
    static ScalarMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    Scalar& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    ScalarMatrix operator+(const ScalarMatrix& b) const;
    ScalarMatrix operator-(const ScalarMatrix& b) const;
    ScalarMatrix operator*(const ScalarMatrix& b) const;
    ScalarMatrix scaled(const Scalar& c) const;
    ScalarMatrix power(unsigned k) const;
    bool operator==(const ScalarMatrix& b) const;
    bool is_zero() const;

    Scalar trace() const;
    // Coefficients c_0..c_n of det(lambda - M) = sum c_k lambda^k (Faddeev-LeVerrier).
    std::vector<Scalar> characteristic_polynomial() const;

private:
    std::size_t n_ = 0;
    std::vector<Scalar> a_;
};

}  // namespace pscat
