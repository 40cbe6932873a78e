#pragma once

#include "pscat/rational.hpp"

#include <climits>
#include <cstdint>
#include <optional>
#include <string>

namespace pscat {

// Element num / p^k of Z[1/p]. Canonical: k == 0 or p does not divide num.
struct QpNum {
    std::int64_t num = 0;
    int k = 0;
    bool operator==(const QpNum&) const = default;
    auto operator<=>(const QpNum&) const = default;
};

// The ball center + p^r Z_p with center reduced to its canonical
// representative (num in [0, p^{max(0, k + r)}) over p^k).
struct Ball {
    QpNum center;
    int r = 0;
    bool operator==(const Ball&) const = default;
    auto operator<=>(const Ball&) const = default;
};

inline constexpr int kInfiniteValuation = INT_MAX;

class PadicOps {
public:
    explicit PadicOps(std::uint64_t p);

    std::uint64_t p() const { return p_; }
    // p^k as a 64-bit integer; throws on overflow beyond 2^62.
    std::int64_t pow(int k) const;

    QpNum make(std::int64_t num, int k) const;
    QpNum from_rational(const Rational& x) const;
    Rational to_rational(const QpNum& x) const;
    std::string to_string(const QpNum& x) const;

    QpNum add(const QpNum& x, const QpNum& y) const;
    QpNum neg(const QpNum& x) const { return {-x.num, x.k}; }
    QpNum sub(const QpNum& x, const QpNum& y) const { return add(x, neg(y)); }
    QpNum mul(const QpNum& x, const QpNum& y) const;
    // x * p^m
    QpNum shift(const QpNum& x, int m) const;

    int valuation(const QpNum& x) const;
    // Representative of x modulo p^r Z_p.
    QpNum reduce(const QpNum& x, int r) const;
    // Unit part u = x p^{-v(x)} reduced modulo p^e, as an integer in [0, p^e).
    std::int64_t unit_residue(const QpNum& x, int e) const;
    // Inverse of the integer unit u modulo p^e.
    std::int64_t unit_inverse(std::int64_t u, int e) const;
    // 1/x for nonzero x, correct modulo p^r (r > -v(x)); returned reduced.
    QpNum inverse_mod(const QpNum& x, int r) const;

    Ball ball(const QpNum& center, int r) const { return {reduce(center, r), r}; }
    bool contains(const Ball& b, const QpNum& x) const;
    bool contains_zero(const Ball& b) const { return b.center.num == 0; }
    bool is_subset(const Ball& inner, const Ball& outer) const;
    std::optional<Ball> intersect(const Ball& b1, const Ball& b2) const;

private:
    std::uint64_t p_;
};

}  // namespace pscat
