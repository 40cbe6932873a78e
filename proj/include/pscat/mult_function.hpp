#pragma once

#include "pscat/local_field.hpp"
#include "pscat/scalar.hpp"

#include <cstdint>
#include <map>
#include <utility>

namespace pscat {

// Finitely supported function on the multiplicative group, constant on the
// cells {pi^{-m} u (1 + p^e Z_p)}: entry (m, u mod p^e) holds f(pi^{-m} u),
// so |t| = q^m on the cell. Each cell has d*t mass 1/phi(p^e).
class MultFunction {
public:
    using Key = std::pair<int, std::int64_t>;  // (m, unit residue mod p^e)

    MultFunction() = default;
    explicit MultFunction(unsigned level) : level_(level) {}

    unsigned level() const { return level_; }
    const std::map<Key, Scalar>& entries() const { return entries_; }
    bool is_zero() const;

    // Adds v to the cell (m, u mod p^level).
    void add(const LocalField& K, int m, std::int64_t u, const Scalar& v);
    // Value at pi^{-m} u.
    Scalar eval(const LocalField& K, int m, std::int64_t u) const;
    // f(1): valuation 0, unit coset of 1.
    Scalar at_one(const LocalField& K) const { return eval(K, 0, 1); }

    // Same function on the finer cell grid of the given level.
    MultFunction refined(const LocalField& K, unsigned level) const;
    // Drops explicit zero entries.
    MultFunction pruned() const;

    MultFunction operator+(const MultFunction& g) const;
    MultFunction scaled(const Scalar& c) const;
    bool equals(const LocalField& K, const MultFunction& g) const;

    // t -> f(1/t), i.e. (m, u) -> (-m, u^{-1}).
    MultFunction inverted(const LocalField& K) const;
    // Splits by |t| >= 1 (m >= 0) and |t| < 1.
    std::pair<MultFunction, MultFunction> split_at_unit_circle() const;

    // Integral of f against d*t (unit group of mass 1).
    Scalar integral(const LocalField& K) const;
    int min_m() const;
    int max_m() const;

    // Indicator of the cell (m, u) at the given level.
    static MultFunction cell(const LocalField& K, unsigned level, int m, std::int64_t u,
                             const Scalar& v = Scalar(1));
    // chi(u) on units (m = 0) at level e(chi).
    static MultFunction character_on_units(const LocalField& K, const UnitCharacter& chi);
    // Indicator of |t| = q^m.
    static MultFunction sphere(int m);

private:
    unsigned level_ = 0;
    std::map<Key, Scalar> entries_;
};

}  // namespace pscat
