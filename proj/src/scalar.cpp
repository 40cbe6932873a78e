#include "pscat/scalar.hpp"

#include <cmath>
#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace pscat {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

CycloNumber cmul(const CycloField* field, const CycloNumber& x, const CycloNumber& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (x.is_rational()) return y.scaled(x.rational_value());
    if (y.is_rational()) return x.scaled(y.rational_value());
    if (!field) throw std::logic_error("cyclotomic product without a context");
    return field->mul(x, y);
}

}  // namespace

ScalarContext::ScalarContext(std::uint64_t p, unsigned f, unsigned delta, std::uint64_t n)
    : p_(p), f_(f), delta_(delta), q_(ipow(p, f)), p_depth_(0), field_(n) {
    for (std::uint64_t m = n; m % p == 0; m /= p) ++p_depth_;
    // a^2 = p^{-f delta/2} (1 - 1/q)
    Rational base = 1 - Rational(1, q_);
    unsigned fd = f * delta;
    if (fd % 2 == 0) {
        alpha_ = base / Rational(mpz_class(ipow(p, fd / 2)));
        beta_ = 0;
    } else {
        alpha_ = 0;
        beta_ = base / Rational(mpz_class(ipow(p, (fd + 1) / 2)));
    }
    alpha_.canonicalize();
    beta_.canonicalize();

    // +sqrt(p) from the quadratic Gauss sum, or zeta_8 + zeta_8^{-1} for p = 2.
    CycloNumber g;
    if (p == 2) {
        if (n % 8 != 0) return;
        g = field_.root_of_order(1, 8) + field_.root_of_order(-1, 8);
    } else {
        for (std::uint64_t y = 1; y < p; ++y) {
            std::uint64_t leg = 1, b = y % p;
            for (std::uint64_t e = (p - 1) / 2; e; e >>= 1, b = b * b % p)
                if (e & 1) leg = leg * b % p;
            CycloNumber z = field_.root_of_order(static_cast<std::int64_t>(y), p);
            g = leg == 1 ? g + z : g - z;
        }
        // g^2 = p for p = 1 mod 4 and -p otherwise.
        if (p % 4 == 3) {
            if (n % 4 != 0) return;
            g = field_.mul(g, field_.root_of_order(3, 4));
        }
    }
    if (field_.embed(g).real() < 0) g = -g;
    sqrt_p_ = g;
    a_squared_ = CycloNumber(alpha_) + g.scaled(beta_);
}

const ScalarContext* ScalarContext::get(std::uint64_t p, unsigned f, unsigned delta,
                                        std::uint64_t n) {
    static std::mutex mu;
    static std::deque<ScalarContext> registry;
    if (p < 2) throw std::invalid_argument("p must be a prime");
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("p must be a prime");
    if (f < 1) throw std::invalid_argument("residue degree must be >= 1");
    if (n % p != 0) throw std::invalid_argument("cyclotomic conductor must be divisible by p");
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& c : registry)
        if (c.p_ == p && c.f_ == f && c.delta_ == delta && c.n() == n) return &c;
    registry.push_back(ScalarContext(p, f, delta, n));
    return &registry.back();
}

std::uint64_t ScalarContext::default_conductor(std::uint64_t p, unsigned max_level,
                                               unsigned max_conductor) {
    unsigned k = std::max(2 * max_level + 4, max_conductor + 1);
    const std::uint64_t limit = std::uint64_t(1) << 50;
    std::uint64_t pk = 1;
    unsigned used = 0;
    while (used < k && pk <= limit / p) {
        pk *= p;
        ++used;
    }
    if (used < max_conductor + 1)
        throw std::invalid_argument("prime too large for the configured conductor");
    std::uint64_t cof = (p == 2) ? 1 : (p - 1) / gcd64(p - 1, 4) * 4;
    return pk * cof;
}

Scalar::Scalar(const Rational& r) { c_[0] = CycloNumber(r); }

Scalar::Scalar(long v) { c_[0] = CycloNumber(rational_from_int(v)); }

Scalar::Scalar(const ScalarContext* ctx, std::array<CycloNumber, 4> coords)
    : ctx_(ctx), c_(std::move(coords)) {
    reduce();
}

void Scalar::reduce() {
    if (!ctx_ || !ctx_->sqrt_p() || (c_[1].is_zero() && c_[3].is_zero())) return;
    const CycloNumber& r = *ctx_->sqrt_p();
    const CycloField* fld = &ctx_->field();
    if (!c_[1].is_zero()) c_[0] = c_[0] + cmul(fld, c_[1], r);
    if (!c_[3].is_zero()) c_[2] = c_[2] + cmul(fld, c_[3], r);
    c_[1] = CycloNumber();
    c_[3] = CycloNumber();
}

Scalar Scalar::cyclo(const ScalarContext* ctx, const CycloNumber& c) {
    return Scalar(ctx, {c, CycloNumber(), CycloNumber(), CycloNumber()});
}

Scalar Scalar::root_of_unity(const ScalarContext* ctx, std::int64_t num, std::uint64_t den) {
    if (!ctx) throw std::invalid_argument("root of unity needs a scalar context");
    return cyclo(ctx, ctx->field().root_of_order(num, den));
}

Scalar Scalar::s(const ScalarContext* ctx) {
    if (!ctx) throw std::invalid_argument("s needs a scalar context");
    return Scalar(ctx, {CycloNumber(), CycloNumber(Rational(1)), CycloNumber(), CycloNumber()});
}

Scalar Scalar::a(const ScalarContext* ctx) {
    if (!ctx) throw std::invalid_argument("a needs a scalar context");
    return Scalar(ctx, {CycloNumber(), CycloNumber(), CycloNumber(Rational(1)), CycloNumber()});
}

Scalar Scalar::sqrt_p_power(const ScalarContext* ctx, long k) {
    long half = k >= 0 ? k / 2 : -((-k + 1) / 2);  // floor(k/2)
    Rational pr = rational_pow(Rational(mpz_class(ctx->p())), half);
    if (k - 2 * half == 0) return Scalar(pr);
    Scalar r = Scalar::s(ctx);
    return r.scaled(pr);
}

Scalar Scalar::sqrt_q_power(const ScalarContext* ctx, long k) {
    return sqrt_p_power(ctx, k * static_cast<long>(ctx->f()));
}

const ScalarContext* Scalar::merge(const ScalarContext* a, const ScalarContext* b) {
    if (!a) return b;
    if (!b || a == b) return a;
    throw std::invalid_argument("scalar context mismatch");
}

bool Scalar::is_zero() const {
    if (c_[2].is_zero() && c_[3].is_zero()) {
        if (c_[1].is_zero()) return c_[0].is_zero();
        return c_[0].is_zero() && c_[1].is_zero();
    }
    if (!ctx_ || !ctx_->sqrt_p() || c_[0].is_zero()) return false;
    // Reduced form x0 + x2 a with x0, x2 != 0. It vanishes only if
    // x0^2 = x2^2 a^2, and then it is either 0 or 2 x0.
    const CycloField& fld = ctx_->field();
    CycloNumber lhs = fld.mul(c_[0], c_[0]);
    CycloNumber rhs = fld.mul(fld.mul(c_[2], c_[2]), ctx_->a_squared());
    if (lhs != rhs) return false;
    return std::abs(embed()) < std::abs(fld.embed(c_[0]));
}

bool Scalar::is_rational() const {
    return c_[0].is_rational() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
}

Rational Scalar::rational_value() const {
    if (!is_rational()) throw std::logic_error("scalar is not rational");
    return c_[0].rational_value();
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& y) {
    ctx_ = merge(ctx_, y.ctx_);
    for (int i = 0; i < 4; ++i)
        if (!y.c_[i].is_zero()) c_[i] = c_[i] + y.c_[i];
    reduce();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& y) {
    ctx_ = merge(ctx_, y.ctx_);
    for (int i = 0; i < 4; ++i)
        if (!y.c_[i].is_zero()) c_[i] = c_[i] - y.c_[i];
    reduce();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& y) {
    *this = *this * y;
    return *this;
}

Scalar operator*(const Scalar& x, const Scalar& y) {
    const ScalarContext* ctx = Scalar::merge(x.ctx_, y.ctx_);
    if (x.is_rational() || y.is_rational()) {
        Scalar r = x.is_rational() ? y.scaled(x.rational_value()) : x.scaled(y.rational_value());
        r.ctx_ = ctx;
        return r;
    }
    const CycloField* fld = &ctx->field();
    Rational p(mpz_class(ctx->p()));
    const Rational& al = ctx->alpha();
    const Rational& be = ctx->beta();
    const auto& a = x.c_;
    const auto& b = y.c_;
    auto m = [&](int i, int j) { return cmul(fld, a[i], b[j]); };
    CycloNumber x22 = m(2, 2), x33 = m(3, 3);
    CycloNumber x23 = m(2, 3) + m(3, 2);
    std::array<CycloNumber, 4> r;
    r[0] = m(0, 0) + m(1, 1).scaled(p) + x22.scaled(al) + x23.scaled(be * p) + x33.scaled(p * al);
    r[1] = m(0, 1) + m(1, 0) + x22.scaled(be) + x23.scaled(al) + x33.scaled(p * be);
    r[2] = m(0, 2) + m(2, 0) + (m(1, 3) + m(3, 1)).scaled(p);
    r[3] = m(0, 3) + m(3, 0) + m(1, 2) + m(2, 1);
    return Scalar(ctx, std::move(r));
}

Scalar Scalar::scaled(const Rational& r) const {
    Scalar out = *this;
    for (auto& c : out.c_) c = c.scaled(r);
    return out;
}

bool Scalar::operator==(const Scalar& y) const {
    if (ctx_ && y.ctx_ && ctx_ != y.ctx_) throw std::invalid_argument("scalar context mismatch");
    bool same = true;
    for (int i = 0; i < 4 && same; ++i) same = c_[i] == y.c_[i];
    if (same) return true;
    // Coordinates differ; the values can still agree when a lies in Q(zeta_N).
    if (c_[2] == y.c_[2] && c_[3] == y.c_[3]) return false;
    return (*this - y).is_zero();
}

Scalar Scalar::conj() const {
    if (is_rational()) return *this;
    Scalar r = *this;
    for (auto& c : r.c_)
        if (!c.is_rational()) c = ctx_->field().conj(c);
    return r;
}

std::optional<Scalar> Scalar::try_invert() const {
    if (is_zero()) return std::nullopt;
    if (is_rational()) return Scalar(Rational(1) / rational_value());
    const CycloField* fld = &ctx_->field();
    if (ctx_->sqrt_p()) {
        // x = P + Q a; x (P - Q a) = P^2 - Q^2 a^2.
        const CycloNumber& P = c_[0];
        const CycloNumber& Q = c_[2];
        CycloNumber R = cmul(fld, P, P) - cmul(fld, cmul(fld, Q, Q), ctx_->a_squared());
        if (R.is_zero()) {
            // Q a = +-P, and x != 0, so x = 2 P.
            auto pi = fld->inverse(P.scaled(Rational(2)));
            if (!pi) return std::nullopt;
            return Scalar::cyclo(ctx_, *pi);
        }
        auto ri = fld->inverse(R);
        if (!ri) return std::nullopt;
        return Scalar(ctx_, {cmul(fld, P, *ri), CycloNumber(), -cmul(fld, Q, *ri), CycloNumber()});
    }
    Rational p(mpz_class(ctx_->p()));
    Scalar s = Scalar::s(ctx_);
    // x = P + Q a with P, Q in Q(zeta)[s]; x (P - Q a) = P^2 - Q^2 a^2.
    Scalar P(ctx_, {c_[0], c_[1], CycloNumber(), CycloNumber()});
    Scalar Q(ctx_, {c_[2], c_[3], CycloNumber(), CycloNumber()});
    Scalar a2(ctx_, {CycloNumber(ctx_->alpha()), CycloNumber(ctx_->beta()), CycloNumber(),
                     CycloNumber()});
    Scalar conj_a = P - Q * Scalar::a(ctx_);
    Scalar R = P * P - Q * Q * a2;
    // R = R0 + R1 s; R (R0 - R1 s) = R0^2 - p R1^2.
    Scalar conj_s(ctx_, {R.c_[0], -R.c_[1], CycloNumber(), CycloNumber()});
    CycloNumber c = cmul(fld, R.c_[0], R.c_[0]) - cmul(fld, R.c_[1], R.c_[1]).scaled(p);
    auto ci = fld->inverse(c);
    if (!ci) return std::nullopt;
    Scalar out = conj_a * conj_s * Scalar::cyclo(ctx_, *ci);
    return out;
}

Scalar Scalar::divided(const Scalar& y) const {
    auto inv = y.try_invert();
    if (!inv) throw std::domain_error("division by a non-invertible scalar");
    return *this * *inv;
}

std::complex<double> Scalar::embed() const {
    if (is_rational()) return {rational_value().get_d(), 0.0};
    const CycloField& fld = ctx_->field();
    double sp = std::sqrt(static_cast<double>(ctx_->p()));
    double a2 = ctx_->alpha().get_d() + ctx_->beta().get_d() * sp;
    double av = std::sqrt(a2);
    std::complex<double> r = fld.embed(c_[0]);
    if (!c_[1].is_zero()) r += fld.embed(c_[1]) * sp;
    if (!c_[2].is_zero()) r += fld.embed(c_[2]) * av;
    if (!c_[3].is_zero()) r += fld.embed(c_[3]) * (sp * av);
    return r;
}

std::string Scalar::debug_string() const {
    std::ostringstream os;
    static const char* names[4] = {"", "s", "a", "sa"};
    bool any = false;
    for (int i = 0; i < 4; ++i) {
        for (const auto& t : c_[i].terms()) {
            if (any) os << " + ";
            any = true;
            os << to_string(t.coeff);
            if (t.key != 0) os << "*z^" << ctx_->field().key_to_exponent(t.key);
            if (i) os << "*" << names[i];
        }
    }
    if (!any) os << "0";
    return os.str();
}

}  // namespace pscat
