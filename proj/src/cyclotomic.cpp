#include "pscat/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pscat {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t reduce_signed(std::int64_t a, std::uint64_t m) {
    __int128 r = static_cast<__int128>(a) % static_cast<__int128>(m);
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

// Inverse of a modulo m via extended Euclid; a and m coprime.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    __int128 t = 0, newt = 1;
    __int128 r = m, newr = a % m;
    while (newr != 0) {
        __int128 q = r / newr;
        __int128 tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::invalid_argument("invmod: not invertible");
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

}  // namespace

CycloNumber::CycloNumber(const Rational& r) {
    if (r != 0) terms_.push_back({0, r});
}

bool CycloNumber::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].key == 0);
}

Rational CycloNumber::rational_value() const {
    if (!is_rational()) throw std::logic_error("cyclotomic number is not rational");
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

bool CycloNumber::operator==(const CycloNumber& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].key != other.terms_[i].key || terms_[i].coeff != other.terms_[i].coeff)
            return false;
    }
    return true;
}

CycloNumber CycloNumber::operator-() const {
    CycloNumber r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

CycloNumber CycloNumber::scaled(const Rational& s) const {
    if (s == 0) return {};
    CycloNumber r = *this;
    for (auto& t : r.terms_) t.coeff *= s;
    return r;
}

CycloNumber operator+(const CycloNumber& x, const CycloNumber& y) {
    CycloNumber r;
    auto& out = r.terms_;
    out.reserve(x.terms_.size() + y.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < x.terms_.size() || j < y.terms_.size()) {
        if (j == y.terms_.size() || (i < x.terms_.size() && x.terms_[i].key < y.terms_[j].key)) {
            out.push_back(x.terms_[i++]);
        } else if (i == x.terms_.size() || y.terms_[j].key < x.terms_[i].key) {
            out.push_back(y.terms_[j++]);
        } else {
            Rational c = x.terms_[i].coeff + y.terms_[j].coeff;
            if (c != 0) out.push_back({x.terms_[i].key, c});
            ++i;
            ++j;
        }
    }
    return r;
}

CycloNumber operator-(const CycloNumber& x, const CycloNumber& y) { return x + (-y); }

CycloNumber CycloNumber::from_terms(std::vector<CycloTerm> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const CycloTerm& a, const CycloTerm& b) { return a.key < b.key; });
    CycloNumber r;
    for (auto& t : terms) {
        if (!r.terms_.empty() && r.terms_.back().key == t.key) {
            r.terms_.back().coeff += t.coeff;
        } else {
            if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
            r.terms_.push_back(std::move(t));
        }
    }
    if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
    return r;
}

CycloField::CycloField(std::uint64_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("cyclotomic conductor must be positive");
    std::uint64_t rest = n;
    std::uint64_t stride = 1;
    for (std::uint64_t l = 2; l * l <= rest || (rest > 1 && l <= rest); ++l) {
        if (rest % l != 0) continue;
        Factor f{l, 0, 1, 0, 0, 0};
        while (rest % l == 0) {
            rest /= l;
            ++f.power;
            f.modulus *= l;
        }
        f.degree = f.modulus / l * (l - 1);
        factors_.push_back(f);
    }
    for (auto& f : factors_) {
        if (f.degree == 1) {
            // Only l = 2, power 1: Q(zeta_2) = Q contributes nothing.
            f.stride = 0;
        } else {
            f.stride = stride;
            if (stride > (std::uint64_t(1) << 62) / f.degree)
                throw std::invalid_argument("cyclotomic conductor too large for packed keys");
            stride *= f.degree;
        }
        f.crt = invmod((n / f.modulus) % f.modulus, f.modulus);
    }
}

std::vector<std::uint64_t> CycloField::unpack(std::uint64_t key) const {
    std::vector<std::uint64_t> e(factors_.size(), 0);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto& f = factors_[i];
        if (f.stride == 0) continue;
        e[i] = (key / f.stride) % f.degree;
    }
    return e;
}

void CycloField::reduce_factor(const Factor& f, std::uint64_t e,
                               std::vector<std::pair<std::uint64_t, int>>& out) const {
    out.clear();
    if (f.stride == 0) {
        // zeta_2^e = (-1)^e
        out.push_back({0, (e % 2 == 0) ? 1 : -1});
        return;
    }
    if (e < f.degree) {
        out.push_back({e, 1});
        return;
    }
    // x^((l-1) l^(k-1) + r) = -sum_{i=0}^{l-2} x^(i l^(k-1) + r)
    std::uint64_t step = f.modulus / f.prime;
    std::uint64_t r = e - f.degree;
    for (std::uint64_t i = 0; i + 1 < f.prime; ++i) out.push_back({i * step + r, -1});
}

void CycloField::expand_monomial(const std::vector<std::uint64_t>& exps, const Rational& coeff,
                                 std::vector<CycloTerm>& out) const {
    // Fast path: every factor already reduced.
    bool simple = true;
    std::uint64_t key = 0;
    int sign = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto& f = factors_[i];
        if (f.stride == 0) {
            if (exps[i] % 2) sign = -sign;
            continue;
        }
        if (exps[i] >= f.degree) {
            simple = false;
            break;
        }
        key += exps[i] * f.stride;
    }
    if (simple) {
        out.push_back({key, sign > 0 ? coeff : Rational(-coeff)});
        return;
    }
    std::vector<std::pair<std::uint64_t, int>> partial{{0, 1}}, next, red;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        reduce_factor(factors_[i], exps[i], red);
        next.clear();
        for (const auto& [k, s] : partial)
            for (const auto& [e, t] : red) next.push_back({k + e * factors_[i].stride, s * t});
        partial.swap(next);
    }
    for (const auto& [k, s] : partial) out.push_back({k, s > 0 ? coeff : Rational(-coeff)});
}

CycloNumber CycloField::root(std::int64_t a) const {
    std::vector<std::uint64_t> e(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto& f = factors_[i];
        e[i] = mulmod(reduce_signed(a, f.modulus), f.crt, f.modulus);
    }
    std::vector<CycloTerm> out;
    expand_monomial(e, Rational(1), out);
    return CycloNumber::from_terms(std::move(out));
}

CycloNumber CycloField::root_of_order(std::int64_t a, std::uint64_t m) const {
    if (m == 0 || n_ % m != 0)
        throw std::invalid_argument("root of unity order does not divide the field conductor");
    std::uint64_t r = reduce_signed(a, m);
    std::uint64_t e = mulmod(r, n_ / m, n_);
    return root(static_cast<std::int64_t>(e));
}

CycloNumber CycloField::mul(const CycloNumber& x, const CycloNumber& y) const {
    if (x.is_zero() || y.is_zero()) return {};
    if (x.is_rational()) return y.scaled(x.rational_value());
    if (y.is_rational()) return x.scaled(y.rational_value());
    std::vector<std::vector<std::uint64_t>> ux, uy;
    ux.reserve(x.size());
    uy.reserve(y.size());
    for (const auto& t : x.terms()) ux.push_back(unpack(t.key));
    for (const auto& t : y.terms()) uy.push_back(unpack(t.key));
    std::vector<CycloTerm> out;
    out.reserve(x.size() * y.size());
    std::vector<std::uint64_t> e(factors_.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            for (std::size_t k = 0; k < factors_.size(); ++k) {
                std::uint64_t s = ux[i][k] + uy[j][k];
                if (s >= factors_[k].modulus) s -= factors_[k].modulus;
                e[k] = s;
            }
            expand_monomial(e, x.terms()[i].coeff * y.terms()[j].coeff, out);
        }
    }
    return CycloNumber::from_terms(std::move(out));
}

CycloNumber CycloField::automorphism(const CycloNumber& x, std::int64_t k) const {
    if (x.is_rational()) return x;
    std::vector<CycloTerm> out;
    out.reserve(x.size() * 2);
    std::vector<std::uint64_t> e(factors_.size());
    for (const auto& t : x.terms()) {
        auto u = unpack(t.key);
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const auto& f = factors_[i];
            std::uint64_t kk = reduce_signed(k, f.modulus);
            if (f.modulus % f.prime == 0 && kk % f.prime == 0 && f.modulus > 1)
                throw std::invalid_argument("automorphism exponent not coprime to conductor");
            e[i] = mulmod(u[i], kk, f.modulus);
        }
        expand_monomial(e, t.coeff, out);
    }
    return CycloNumber::from_terms(std::move(out));
}

CycloNumber CycloField::conj(const CycloNumber& x) const { return automorphism(x, -1); }

CycloNumber CycloField::factor_automorphism(const CycloNumber& x, std::size_t i,
                                            std::uint64_t g) const {
    std::vector<CycloTerm> out;
    std::vector<std::uint64_t> e;
    for (const auto& t : x.terms()) {
        e = unpack(t.key);
        e[i] = mulmod(e[i], g, factors_[i].modulus);
        expand_monomial(e, t.coeff, out);
    }
    return CycloNumber::from_terms(std::move(out));
}

unsigned CycloField::factor_level(const CycloNumber& x, std::size_t i) const {
    const auto& f = factors_[i];
    if (f.stride == 0) return 0;
    unsigned min_v = f.power;
    for (const auto& t : x.terms()) {
        std::uint64_t e = (t.key / f.stride) % f.degree;
        if (e == 0) continue;
        unsigned v = 0;
        while (e % f.prime == 0) {
            e /= f.prime;
            ++v;
        }
        min_v = std::min(min_v, v);
    }
    return f.power - min_v;
}

std::optional<CycloNumber> CycloField::inverse(const CycloNumber& x) const {
    if (x.is_zero()) return std::nullopt;
    CycloNumber y = x;
    CycloNumber acc(Rational(1));
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const auto& f = factors_[i];
        for (unsigned level = factor_level(y, i); level > 0; level = factor_level(y, i)) {
            CycloNumber prod(Rational(1));
            if (level >= 2) {
                std::uint64_t step = 1;
                for (unsigned j = 0; j + 1 < level; ++j) step *= f.prime;
                for (std::uint64_t j = 1; j < f.prime; ++j)
                    prod = mul(prod, factor_automorphism(y, i, 1 + j * step));
            } else {
                for (std::uint64_t g = 2; g < f.prime; ++g)
                    prod = mul(prod, factor_automorphism(y, i, g));
            }
            y = mul(y, prod);
            acc = mul(acc, prod);
        }
    }
    Rational r = y.rational_value();
    if (r == 0) return std::nullopt;
    return acc.scaled(1 / r);
}

std::complex<double> CycloField::embed(const CycloNumber& x) const {
    std::complex<long double> sum = 0;
    const long double two_pi = 6.283185307179586476925286766559L;
    for (const auto& t : x.terms()) {
        long double frac = 0;
        std::uint64_t key = t.key;
        for (const auto& f : factors_) {
            if (f.stride == 0) continue;
            std::uint64_t e = (key / f.stride) % f.degree;
            frac += static_cast<long double>(e) / static_cast<long double>(f.modulus);
        }
        frac -= std::floor(frac);
        long double c = t.coeff.get_d();
        sum += std::polar<long double>(c, two_pi * frac);
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

std::uint64_t CycloField::key_to_exponent(std::uint64_t key) const {
    std::uint64_t a = 0;
    for (const auto& f : factors_) {
        if (f.stride == 0) continue;
        std::uint64_t e = (key / f.stride) % f.degree;
        a = (a + mulmod(e, n_ / f.modulus, n_)) % n_;
    }
    return a;
}

}  // namespace pscat
