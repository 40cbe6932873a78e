#pragma once

#include "pscat/qp.hpp"
#include "pscat/scalar.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace pscat {

struct FieldParams {
    std::uint64_t p = 2;
    unsigned f = 1;      // residue degree, q = p^f
    unsigned delta = 0;  // differental exponent
    std::uint64_t q() const;
    // Q_p itself: the only case with concrete additive arithmetic.
    bool concrete() const { return f == 1 && delta == 0; }
};

// Character of the unit group, stored at its exact conductor e.
// Odd p: exps = {j}, chi(g) = zeta_{phi(p^e)}^j for the fixed primitive root g.
// p = 2: exps = {b, j}, chi(-1) = (-1)^b, chi(5) = zeta_{2^{e-2}}^j.
// Extended to the multiplicative group by chi(p) = 1.
struct UnitCharacter {
    std::uint64_t p = 2;
    unsigned e = 0;
    std::vector<std::int64_t> exps;

    bool is_trivial() const { return e == 0; }
    std::string id() const;
    auto operator<=>(const UnitCharacter&) const = default;
    bool operator==(const UnitCharacter&) const = default;
};

class LocalField {
public:
    LocalField(FieldParams params, unsigned max_level = 6, unsigned max_conductor = 3);

    const FieldParams& params() const { return params_; }
    std::uint64_t p() const { return params_.p; }
    std::uint64_t q() const { return params_.q(); }
    unsigned delta() const { return params_.delta; }
    unsigned max_level() const { return max_level_; }
    unsigned max_conductor() const { return max_conductor_; }
    const ScalarContext* ctx() const { return ctx_; }
    const PadicOps& padic() const { return padic_; }

    // Throws std::invalid_argument unless the field is Q_p.
    void require_concrete(const char* what) const;

    // lambda(m/p^k) = zeta_{p^k}^m.
    Scalar additive_character(const QpNum& x) const;

    // phi(p^e), with phi(1) = 1.
    std::int64_t phi(unsigned e) const;
    // Unit residues modulo p^e in increasing order ({1} for e = 0).
    std::vector<std::int64_t> unit_residues(unsigned e) const;

    UnitCharacter trivial() const;
    // One character per element of the dual of (Z/p^e)^x.
    std::vector<UnitCharacter> enumerate_characters(unsigned e) const;
    UnitCharacter conj(const UnitCharacter& chi) const;
    // chi(u) for an integer u prime to p.
    Scalar char_eval(const UnitCharacter& chi, std::int64_t u) const;
    // chi(-1) as +1 or -1.
    int parity(const UnitCharacter& chi) const;
    // Builds a character from exponent data given at level e, canonicalizing.
    UnitCharacter character_from_level(unsigned e, const std::vector<std::int64_t>& exps) const;

    Scalar s() const { return Scalar::s(ctx_); }
    Scalar a() const { return Scalar::a(ctx_); }
    Scalar sqrt_q_power(long k) const { return Scalar::sqrt_q_power(ctx_, k); }
    Scalar sqrt_p_power(long k) const { return Scalar::sqrt_p_power(ctx_, k); }
    Scalar root_of_unity(std::int64_t num, std::uint64_t den) const {
        return Scalar::root_of_unity(ctx_, num, den);
    }

private:
    // Discrete log of u modulo p^table_level_ (odd p: base g; p = 2: base 5 on +-u).
    std::int64_t dlog(std::int64_t u) const;

    FieldParams params_;
    unsigned max_level_;
    unsigned max_conductor_;
    const ScalarContext* ctx_;
    PadicOps padic_;
    std::int64_t generator_ = 1;
    unsigned table_level_ = 0;
    std::vector<std::int64_t> dlog_table_;
};

}  // namespace pscat
