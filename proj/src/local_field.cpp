#include "pscat/local_field.hpp"

#include <numeric>
#include <stdexcept>

namespace pscat {

namespace {

std::int64_t pmod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
    __int128 r = 1, x = pmod(b, m);
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::int64_t>(r);
}

}  // namespace

std::uint64_t FieldParams::q() const {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < f; ++i) r *= p;
    return r;
}

std::string UnitCharacter::id() const {
    std::string s = "p" + std::to_string(p) + "e" + std::to_string(e) + "[";
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(exps[i]);
    }
    return s + "]";
}

LocalField::LocalField(FieldParams params, unsigned max_level, unsigned max_conductor)
    : params_(params),
      max_level_(max_level),
      max_conductor_(max_conductor),
      ctx_(ScalarContext::get(params.p, params.f, params.delta,
                              ScalarContext::default_conductor(params.p, max_level,
                                                               max_conductor))),
      padic_(params.p) {
    const std::int64_t p = static_cast<std::int64_t>(params.p);
    if (p == 2) {
        table_level_ = std::max(max_conductor, 2u);
        generator_ = 5;
    } else {
        table_level_ = std::max(max_conductor, 1u);
        std::vector<std::int64_t> primes;
        std::int64_t rest = p - 1;
        for (std::int64_t d = 2; d * d <= rest; ++d) {
            if (rest % d != 0) continue;
            primes.push_back(d);
            while (rest % d == 0) rest /= d;
        }
        if (rest > 1) primes.push_back(rest);
        std::int64_t g = 2;
        for (;; ++g) {
            bool prim = true;
            for (std::int64_t r : primes)
                if (powmod(g, (p - 1) / r, p) == 1) prim = false;
            if (prim) break;
        }
        if (powmod(g, p - 1, p * p) == 1) g += p;
        generator_ = g;
    }
    std::int64_t m = padic_.pow(static_cast<int>(table_level_));
    dlog_table_.assign(static_cast<std::size_t>(m), -1);
    std::int64_t order = (p == 2) ? m / 4 : m / p * (p - 1);
    std::int64_t x = 1;
    for (std::int64_t t = 0; t < order; ++t) {
        dlog_table_[static_cast<std::size_t>(x)] = t;
        x = static_cast<std::int64_t>(static_cast<__int128>(x) * generator_ % m);
    }
}

void LocalField::require_concrete(const char* what) const {
    if (!params_.concrete())
        throw std::invalid_argument(std::string(what) + " requires the concrete field Q_p (f = 1, delta = 0)");
}

Scalar LocalField::additive_character(const QpNum& x) const {
    require_concrete("additive character");
    if (x.k <= 0) return Scalar(1);
    return root_of_unity(x.num, static_cast<std::uint64_t>(padic_.pow(x.k)));
}

std::int64_t LocalField::phi(unsigned e) const {
    if (e == 0) return 1;
    std::int64_t pe = padic_.pow(static_cast<int>(e));
    return pe / static_cast<std::int64_t>(params_.p) * (static_cast<std::int64_t>(params_.p) - 1);
}

std::vector<std::int64_t> LocalField::unit_residues(unsigned e) const {
    if (e == 0) return {1};
    std::int64_t m = padic_.pow(static_cast<int>(e));
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(phi(e)));
    for (std::int64_t u = 1; u < m; ++u)
        if (u % static_cast<std::int64_t>(params_.p) != 0) out.push_back(u);
    return out;
}

UnitCharacter LocalField::trivial() const {
    UnitCharacter c;
    c.p = params_.p;
    c.e = 0;
    c.exps = params_.p == 2 ? std::vector<std::int64_t>{0, 0} : std::vector<std::int64_t>{0};
    return c;
}

UnitCharacter LocalField::character_from_level(unsigned e,
                                               const std::vector<std::int64_t>& exps) const {
    if (e > max_conductor_) throw std::invalid_argument("character level exceeds max conductor");
    const std::int64_t p = static_cast<std::int64_t>(params_.p);
    UnitCharacter c;
    c.p = params_.p;
    if (p == 2) {
        if (exps.size() != 2) throw std::invalid_argument("p = 2 characters need two exponents");
        std::int64_t b = pmod(exps[0], 2);
        if (e < 2) {
            if (b != 0 && e < 2) throw std::invalid_argument("no such character at this level");
            return trivial();
        }
        std::int64_t n = std::int64_t(1) << (e - 2);
        std::int64_t j = pmod(exps[1], n);
        std::int64_t ord = n / std::gcd(j == 0 ? n : j, n);
        unsigned w = 0;
        while ((std::int64_t(1) << w) < ord) ++w;
        if (w == 0) {
            if (b == 0) return trivial();
            c.e = 2;
            c.exps = {1, 0};
            return c;
        }
        c.e = w + 2;
        c.exps = {b, j * (std::int64_t(1) << (c.e - 2)) / n};
        return c;
    }
    if (exps.size() != 1) throw std::invalid_argument("odd p characters need one exponent");
    if (e == 0) return trivial();
    std::int64_t n = phi(e);
    std::int64_t j = pmod(exps[0], n);
    if (j == 0) return trivial();
    std::int64_t ord = n / std::gcd(j, n);
    unsigned v = 0;
    for (std::int64_t o = ord; o % p == 0; o /= p) ++v;
    c.e = v + 1;
    c.exps = {j * phi(c.e) / n};
    return c;
}

std::vector<UnitCharacter> LocalField::enumerate_characters(unsigned e) const {
    if (e > max_conductor_) throw std::invalid_argument("character level exceeds max conductor");
    std::vector<UnitCharacter> out;
    if (params_.p == 2) {
        if (e < 2) return {trivial()};
        std::int64_t n = std::int64_t(1) << (e - 2);
        for (std::int64_t b = 0; b < 2; ++b)
            for (std::int64_t j = 0; j < n; ++j) out.push_back(character_from_level(e, {b, j}));
    } else {
        for (std::int64_t j = 0; j < phi(e); ++j) out.push_back(character_from_level(e, {j}));
    }
    return out;
}

UnitCharacter LocalField::conj(const UnitCharacter& chi) const {
    if (chi.is_trivial()) return chi;
    UnitCharacter c = chi;
    if (params_.p == 2) {
        std::int64_t n = std::int64_t(1) << (chi.e - 2);
        c.exps[1] = pmod(-chi.exps[1], n);
    } else {
        c.exps[0] = pmod(-chi.exps[0], phi(chi.e));
    }
    return c;
}

std::int64_t LocalField::dlog(std::int64_t u) const {
    std::int64_t m = padic_.pow(static_cast<int>(table_level_));
    std::int64_t r = pmod(u, m);
    if (params_.p == 2 && r % 4 == 3) r = m - r;
    std::int64_t t = dlog_table_[static_cast<std::size_t>(r)];
    if (t < 0) throw std::invalid_argument("not a unit");
    return t;
}

Scalar LocalField::char_eval(const UnitCharacter& chi, std::int64_t u) const {
    const std::int64_t p = static_cast<std::int64_t>(params_.p);
    if (pmod(u, p) == 0) throw std::invalid_argument("character evaluated at a non-unit");
    if (chi.is_trivial()) return Scalar(1);
    std::int64_t t = dlog(u);
    if (p == 2) {
        Scalar sign = (chi.exps[0] != 0 && pmod(u, 4) == 3) ? Scalar(-1) : Scalar(1);
        std::int64_t n = std::int64_t(1) << (chi.e - 2);
        if (n == 1) return sign;
        return sign * root_of_unity(pmod(chi.exps[1] * pmod(t, n), n), static_cast<std::uint64_t>(n));
    }
    std::int64_t n = phi(chi.e);
    std::int64_t ex = static_cast<std::int64_t>(static_cast<__int128>(chi.exps[0]) * pmod(t, n) % n);
    return root_of_unity(ex, static_cast<std::uint64_t>(n));
}

int LocalField::parity(const UnitCharacter& chi) const {
    Scalar v = char_eval(chi, -1);
    return v == Scalar(1) ? 1 : -1;
}

}  // namespace pscat
