#include "pscat/qp.hpp"

#include <stdexcept>

namespace pscat {

namespace {

std::int64_t mod_floor(__int128 a, std::int64_t m) {
    __int128 r = a % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("p-adic numerator overflow");
    return static_cast<std::int64_t>(v);
}

}  // namespace

PadicOps::PadicOps(std::uint64_t p) : p_(p) {
    if (p < 2) throw std::invalid_argument("p must be a prime");
}

std::int64_t PadicOps::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative exponent in p-power");
    __int128 r = 1;
    for (int i = 0; i < k; ++i) {
        r *= p_;
        if (r > (__int128(1) << 62)) throw std::overflow_error("p-power exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(r);
}

QpNum PadicOps::make(std::int64_t num, int k) const {
    std::int64_t pp = static_cast<std::int64_t>(p_);
    if (num == 0) return {0, 0};
    while (k > 0 && num % pp == 0) {
        num /= pp;
        --k;
    }
    while (k < 0) {
        num = narrow(static_cast<__int128>(num) * pp);
        ++k;
    }
    return {num, k};
}

QpNum PadicOps::from_rational(const Rational& x) const {
    mpz_class den = x.get_den();
    int k = 0;
    while (den % p_ == 0) {
        den /= p_;
        ++k;
    }
    if (den != 1) throw std::invalid_argument("denominator is not a power of p");
    if (!x.get_num().fits_slong_p()) throw std::overflow_error("p-adic numerator overflow");
    return make(x.get_num().get_si(), k);
}

Rational PadicOps::to_rational(const QpNum& x) const {
    Rational r(rational_from_int(x.num) / Rational(mpz_class(pow(x.k))));
    r.canonicalize();
    return r;
}

std::string PadicOps::to_string(const QpNum& x) const {
    if (x.k == 0) return std::to_string(x.num);
    return std::to_string(x.num) + "/" + std::to_string(pow(x.k));
}

QpNum PadicOps::add(const QpNum& x, const QpNum& y) const {
    int k = std::max(x.k, y.k);
    __int128 a = static_cast<__int128>(x.num) * pow(k - x.k);
    __int128 b = static_cast<__int128>(y.num) * pow(k - y.k);
    return make(narrow(a + b), k);
}

QpNum PadicOps::mul(const QpNum& x, const QpNum& y) const {
    return make(narrow(static_cast<__int128>(x.num) * y.num), x.k + y.k);
}

QpNum PadicOps::shift(const QpNum& x, int m) const {
    if (x.num == 0) return x;
    return make(x.num, x.k - m);
}

int PadicOps::valuation(const QpNum& x) const {
    if (x.num == 0) return kInfiniteValuation;
    if (x.k > 0) return -x.k;
    std::int64_t n = x.num;
    int v = 0;
    std::int64_t pp = static_cast<std::int64_t>(p_);
    while (n % pp == 0) {
        n /= pp;
        ++v;
    }
    return v;
}

QpNum PadicOps::reduce(const QpNum& x, int r) const {
    int level = x.k + r;
    if (level <= 0 || x.num == 0) return {0, 0};
    std::int64_t m = pow(level);
    return make(mod_floor(x.num, m), x.k);
}

std::int64_t PadicOps::unit_residue(const QpNum& x, int e) const {
    if (x.num == 0) throw std::invalid_argument("unit part of zero");
    std::int64_t n = x.num;
    std::int64_t pp = static_cast<std::int64_t>(p_);
    while (n % pp == 0) n /= pp;
    return mod_floor(n, pow(e));
}

std::int64_t PadicOps::unit_inverse(std::int64_t u, int e) const {
    std::int64_t m = pow(e);
    if (m == 1) return 0;
    __int128 t = 0, nt = 1, r = m, nr = mod_floor(u, m);
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::invalid_argument("not a unit modulo p^e");
    return mod_floor(t, m);
}

QpNum PadicOps::inverse_mod(const QpNum& x, int r) const {
    int v = valuation(x);
    if (v == kInfiniteValuation) throw std::domain_error("inverse of zero");
    if (r + v <= 0) return {0, 0};
    std::int64_t u = unit_residue(x, r + v);
    std::int64_t ui = unit_inverse(u, r + v);
    return reduce(shift(make(ui, 0), -v), r);
}

bool PadicOps::contains(const Ball& b, const QpNum& x) const {
    return reduce(x, b.r) == b.center;
}

bool PadicOps::is_subset(const Ball& inner, const Ball& outer) const {
    return inner.r >= outer.r && contains(outer, inner.center);
}

std::optional<Ball> PadicOps::intersect(const Ball& b1, const Ball& b2) const {
    if (is_subset(b1, b2)) return b1;
    if (is_subset(b2, b1)) return b2;
    return std::nullopt;
}

}  // namespace pscat
