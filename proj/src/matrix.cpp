#include "pscat/matrix.hpp"

#include <stdexcept>

namespace pscat {

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
    ScalarMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

ScalarMatrix ScalarMatrix::operator+(const ScalarMatrix& b) const {
    if (b.n_ != n_) throw std::invalid_argument("matrix size mismatch");
    ScalarMatrix out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += b.a_[i];
    return out;
}

ScalarMatrix ScalarMatrix::operator-(const ScalarMatrix& b) const { return *this + b.scaled(Scalar(-1)); }

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& b) const {
    if (b.n_ != n_) throw std::invalid_argument("matrix size mismatch");
    ScalarMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const Scalar& x = at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j)
                if (!b.at(k, j).is_zero()) out.at(i, j) += x * b.at(k, j);
        }
    return out;
}

ScalarMatrix ScalarMatrix::scaled(const Scalar& c) const {
    ScalarMatrix out = *this;
    for (auto& x : out.a_) x = x * c;
    return out;
}

ScalarMatrix ScalarMatrix::power(unsigned k) const {
    ScalarMatrix out = identity(n_);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
}

bool ScalarMatrix::operator==(const ScalarMatrix& b) const {
    if (b.n_ != n_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (a_[i] != b.a_[i]) return false;
    return true;
}

bool ScalarMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

Scalar ScalarMatrix::trace() const {
    Scalar t;
    for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

std::vector<Scalar> ScalarMatrix::characteristic_polynomial() const {
    std::vector<Scalar> c(n_ + 1);
    c[n_] = Scalar(1);
    ScalarMatrix m = ScalarMatrix(n_);  // M_0 = 0
    for (std::size_t k = 1; k <= n_; ++k) {
        m = *this * m + identity(n_).scaled(c[n_ - k + 1]);
        c[n_ - k] = (*this * m).trace().scaled(Rational(-1, static_cast<unsigned long>(k)));
    }
    return c;
}

}  // namespace pscat
