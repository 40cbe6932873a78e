#include "pscat/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace pscat {

namespace laurent {

void prune(Poly& a) {
    for (auto it = a.begin(); it != a.end();) {
        if (it->second.is_zero())
            it = a.erase(it);
        else
            ++it;
    }
}

Poly add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b) {
        auto [it, inserted] = r.try_emplace(m, c);
        if (!inserted) it->second += c;
    }
    prune(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [m1, c1] : a)
        for (const auto& [m2, c2] : b) {
            auto [it, inserted] = r.try_emplace(m1 + m2, c1 * c2);
            if (!inserted) it->second += c1 * c2;
        }
    prune(r);
    return r;
}

Poly scale(const Poly& a, const Scalar& c) {
    Poly r;
    if (c.is_zero()) return r;
    for (const auto& [m, x] : a) r.emplace(m, x * c);
    prune(r);
    return r;
}

Poly u_power(const ScalarContext* ctx, int j) {
    Poly r{{0, Scalar(1)}};
    Poly u{{0, Scalar(1)}, {1, -Scalar::sqrt_q_power(ctx, -1)}};
    for (int i = 0; i < j; ++i) r = mul(r, u);
    return r;
}

Poly v_power(const ScalarContext* ctx, int k) {
    Poly r{{0, Scalar(1)}};
    Poly v{{0, Scalar(1)}, {-1, -Scalar::sqrt_q_power(ctx, -1)}};
    for (int i = 0; i < k; ++i) r = mul(r, v);
    return r;
}

Scalar eval(const Poly& a, const Scalar& z) {
    if (a.empty()) return Scalar();
    Scalar sum;
    std::optional<Scalar> zinv;
    for (const auto& [m, c] : a) {
        Scalar pw(1);
        if (m > 0) {
            for (int i = 0; i < m; ++i) pw *= z;
        } else if (m < 0) {
            if (!zinv) {
                zinv = z.try_invert();
                if (!zinv) throw std::domain_error("negative power of a non-invertible point");
            }
            for (int i = 0; i < -m; ++i) pw *= *zinv;
        }
        sum += c * pw;
    }
    return sum;
}

}  // namespace laurent

namespace {

// N / (z - c), exact when N(c) = 0.
RationalSpectral::Poly divide_linear(const RationalSpectral::Poly& n, const Scalar& c) {
    int lo = n.begin()->first;
    int hi = n.rbegin()->first;
    int d = hi - lo;
    std::vector<Scalar> p(static_cast<std::size_t>(d + 1));
    for (const auto& [m, x] : n) p[static_cast<std::size_t>(m - lo)] = x;
    std::vector<Scalar> q(static_cast<std::size_t>(d));
    if (d == 0) throw std::logic_error("division of a nonzero monomial by a linear factor");
    q[static_cast<std::size_t>(d - 1)] = p[static_cast<std::size_t>(d)];
    for (int i = d - 1; i >= 1; --i)
        q[static_cast<std::size_t>(i - 1)] = p[static_cast<std::size_t>(i)] + c * q[static_cast<std::size_t>(i)];
    RationalSpectral::Poly out;
    for (int i = 0; i < d; ++i)
        if (!q[static_cast<std::size_t>(i)].is_zero()) out.emplace(lo + i, q[static_cast<std::size_t>(i)]);
    return out;
}

Rational binom_general(long n, long i) {
    Rational r = 1;
    for (long t = 0; t < i; ++t) {
        Rational step(n - t, t + 1);
        step.canonicalize();
        r *= step;
    }
    return r;
}

Rational binom_neg(long j, long i) {
    // coefficient of x^i in (1 - x)^{-j}
    return binom_general(j + i - 1, i);
}

}  // namespace

RationalSpectral::RationalSpectral(const ScalarContext* ctx, Poly numerator, int j, int k)
    : ctx_(ctx), num_(std::move(numerator)), j_(j), k_(k) {
    if (j < 0 || k < 0) throw std::invalid_argument("negative denominator exponent");
    canonicalize();
}

RationalSpectral RationalSpectral::constant(const ScalarContext* ctx, const Scalar& c) {
    return monomial(ctx, c, 0);
}

RationalSpectral RationalSpectral::monomial(const ScalarContext* ctx, const Scalar& c, int m) {
    Poly p;
    if (!c.is_zero()) p.emplace(m, c);
    return RationalSpectral(ctx, std::move(p));
}

RationalSpectral RationalSpectral::poles(const ScalarContext* ctx, int j, int k) {
    return RationalSpectral(ctx, Poly{{0, Scalar(1)}}, j, k);
}

Scalar RationalSpectral::sqrt_q_pow(long k) const {
    if (!ctx_) throw std::logic_error("spectral function without a scalar context");
    return Scalar::sqrt_q_power(ctx_, k);
}

void RationalSpectral::canonicalize() {
    laurent::prune(num_);
    if (num_.empty()) {
        j_ = k_ = 0;
        return;
    }
    if ((j_ > 0 || k_ > 0) && !ctx_) throw std::logic_error("spectral function without a scalar context");
    while (j_ > 0) {
        Scalar c = sqrt_q_pow(1);
        if (!laurent::eval(num_, c).is_zero()) break;
        // N / u = -sqrt(q) N / (z - sqrt(q))
        num_ = laurent::scale(divide_linear(num_, c), -c);
        --j_;
    }
    while (k_ > 0) {
        Scalar c = sqrt_q_pow(-1);
        if (!laurent::eval(num_, c).is_zero()) break;
        // N / v = z N / (z - 1/sqrt(q))
        Poly d = divide_linear(num_, c);
        num_.clear();
        for (auto& [m, x] : d) num_.emplace(m + 1, x);
        --k_;
    }
}

Scalar RationalSpectral::coefficient(int m) const {
    auto it = num_.find(m);
    return it == num_.end() ? Scalar() : it->second;
}

int RationalSpectral::min_exponent() const {
    if (num_.empty()) throw std::logic_error("exponent range of zero");
    return num_.begin()->first;
}

int RationalSpectral::max_exponent() const {
    if (num_.empty()) throw std::logic_error("exponent range of zero");
    return num_.rbegin()->first;
}

const ScalarContext* RationalSpectral::ensure_ctx(const RationalSpectral& y) const {
    if (!ctx_) return y.ctx_;
    if (y.ctx_ && y.ctx_ != ctx_) throw std::invalid_argument("spectral context mismatch");
    return ctx_;
}

RationalSpectral RationalSpectral::operator+(const RationalSpectral& y) const {
    const ScalarContext* ctx = ensure_ctx(y);
    if (y.is_zero()) return RationalSpectral(ctx, num_, j_, k_);
    if (is_zero()) return RationalSpectral(ctx, y.num_, y.j_, y.k_);
    int J = std::max(j_, y.j_);
    int Kx = std::max(k_, y.k_);
    Poly a = num_, b = y.num_;
    if (J > j_ || Kx > k_) a = laurent::mul(a, laurent::mul(laurent::u_power(ctx, J - j_), laurent::v_power(ctx, Kx - k_)));
    if (J > y.j_ || Kx > y.k_)
        b = laurent::mul(b, laurent::mul(laurent::u_power(ctx, J - y.j_), laurent::v_power(ctx, Kx - y.k_)));
    return RationalSpectral(ctx, laurent::add(a, b), J, Kx);
}

RationalSpectral RationalSpectral::operator-(const RationalSpectral& y) const { return *this + (-y); }

RationalSpectral RationalSpectral::operator*(const RationalSpectral& y) const {
    const ScalarContext* ctx = ensure_ctx(y);
    if (is_zero() || y.is_zero()) return RationalSpectral(ctx);
    return RationalSpectral(ctx, laurent::mul(num_, y.num_), j_ + y.j_, k_ + y.k_);
}

RationalSpectral RationalSpectral::scaled(const Scalar& c) const {
    RationalSpectral r(ctx_);
    if (c.is_zero()) return r;
    r.num_ = laurent::scale(num_, c);
    r.j_ = r.num_.empty() ? 0 : j_;
    r.k_ = r.num_.empty() ? 0 : k_;
    return r;
}

RationalSpectral RationalSpectral::shifted(int m) const {
    RationalSpectral r(ctx_);
    for (const auto& [e, c] : num_) r.num_.emplace(e + m, c);
    r.j_ = j_;
    r.k_ = k_;
    r.canonicalize();
    return r;
}

bool RationalSpectral::operator==(const RationalSpectral& y) const {
    return (*this - y).is_zero();
}

RationalSpectral RationalSpectral::reflect() const {
    RationalSpectral r(ctx_);
    for (const auto& [m, c] : num_) r.num_.emplace(-m, c);
    r.j_ = k_;
    r.k_ = j_;
    return r;
}

RationalSpectral RationalSpectral::conj() const {
    RationalSpectral r(ctx_);
    for (const auto& [m, c] : num_) r.num_.emplace(-m, c.conj());
    r.j_ = k_;
    r.k_ = j_;
    return r;
}

RationalSpectral RationalSpectral::derivative() const {
    Poly zd;
    for (const auto& [m, c] : num_)
        if (m != 0) zd.emplace(m, c.scaled(Rational(m)));
    if (j_ == 0 && k_ == 0) return RationalSpectral(ctx_, std::move(zd));
    Scalar c = sqrt_q_pow(-1);
    Poly uv = laurent::mul(laurent::u_power(ctx_, 1), laurent::v_power(ctx_, 1));
    Poly out = laurent::mul(zd, uv);
    if (j_ > 0) {
        Poly t = laurent::mul(num_, laurent::v_power(ctx_, 1));
        Poly shifted;
        for (auto& [m, x] : t) shifted.emplace(m + 1, x * c.scaled(Rational(j_)));
        out = laurent::add(out, shifted);
    }
    if (k_ > 0) {
        Poly t = laurent::mul(num_, laurent::u_power(ctx_, 1));
        Poly shifted;
        for (auto& [m, x] : t) shifted.emplace(m - 1, x * c.scaled(Rational(-k_)));
        out = laurent::add(out, shifted);
    }
    return RationalSpectral(ctx_, std::move(out), j_ + 1, k_ + 1);
}

Scalar RationalSpectral::circle_integral() const {
    if (num_.empty()) return Scalar();
    if (j_ == 0 && k_ == 0) return coefficient(0);
    const long j = j_, k = k_;
    Scalar c = sqrt_q_pow(-1);  // the pole 1/sqrt(q) inside the disk
    Scalar total;
    // Residue at 0 of N(z) z^{k-1} (-c)^{-k} (1 - z/c)^{-k} (1 - c z)^{-j}.
    long T = -1;
    for (const auto& [m, x] : num_) T = std::max(T, -m - k);
    if (T >= 0) {
        std::vector<Scalar> series(static_cast<std::size_t>(T + 1));
        for (long i1 = 0; i1 <= T; ++i1) {
            Scalar a = sqrt_q_pow(i1).scaled(binom_neg(k, i1));  // c^{-i1} = q^{i1/2}
            for (long i2 = 0; i1 + i2 <= T; ++i2) {
                Scalar b = sqrt_q_pow(-i2).scaled(binom_neg(j, i2));
                series[static_cast<std::size_t>(i1 + i2)] += a * b;
            }
        }
        Scalar pref = sqrt_q_pow(k).scaled(Rational(k % 2 == 0 ? 1 : -1));  // (-c)^{-k}
        for (const auto& [m, x] : num_) {
            long i = -m - k;
            if (i >= 0) total += x * pref * series[static_cast<std::size_t>(i)];
        }
    }
    if (k > 0) {
        // Residue at c of N(z) z^{k-1} u^{-j} / (z - c)^k: coefficient of w^{k-1}
        // in the expansion at z = c + w.
        Rational one_minus = 1 - Rational(1, static_cast<unsigned long>(ctx_->q()));
        std::vector<Scalar> useries(static_cast<std::size_t>(k));
        Scalar ratio = c.scaled(1 / one_minus);
        Scalar pw(1);
        Rational lead = rational_pow(1 / one_minus, j);
        for (long i = 0; i < k; ++i) {
            useries[static_cast<std::size_t>(i)] = pw.scaled(lead * binom_neg(j, i));
            pw *= ratio;
        }
        for (const auto& [m, x] : num_) {
            long n = m + k - 1;
            Scalar acc;
            for (long i = 0; i < k; ++i) {
                // [w^i] (c + w)^n = binom(n, i) c^{n - i}
                Rational b = binom_general(n, i);
                if (b == 0) continue;
                acc += sqrt_q_pow(-(n - i)).scaled(b) * useries[static_cast<std::size_t>(k - 1 - i)];
            }
            total += x * acc;
        }
    }
    return total;
}

std::optional<Scalar> RationalSpectral::eval(const Scalar& z) const {
    if (num_.empty()) return Scalar();
    Scalar n;
    try {
        n = laurent::eval(num_, z);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
    if (j_ == 0 && k_ == 0) return n;
    Scalar den = laurent::eval(laurent::mul(laurent::u_power(ctx_, j_), laurent::v_power(ctx_, k_)), z);
    auto inv = den.try_invert();
    if (!inv) return std::nullopt;
    return n * *inv;
}

std::complex<double> RationalSpectral::eval_numeric(std::complex<double> z) const {
    std::complex<double> n = 0;
    for (const auto& [m, c] : num_) n += c.embed() * std::pow(z, m);
    if (j_ == 0 && k_ == 0) return n;
    double sq = std::sqrt(static_cast<double>(ctx_->q()));
    std::complex<double> u = 1.0 - z / sq;
    std::complex<double> v = 1.0 - 1.0 / (z * sq);
    return n / (std::pow(u, j_) * std::pow(v, k_));
}

std::complex<double> RationalSpectral::circle_integral_numeric(int samples) const {
    std::complex<double> sum = 0;
    const double two_pi = 6.283185307179586476925286766559;
    // Embed the coefficients once.
    std::vector<std::pair<int, std::complex<double>>> coeffs;
    for (const auto& [m, c] : num_) coeffs.push_back({m, c.embed()});
    double sq = ctx_ ? std::sqrt(static_cast<double>(ctx_->q())) : 1.0;
    for (int t = 0; t < samples; ++t) {
        std::complex<double> z = std::polar(1.0, two_pi * t / samples);
        std::complex<double> n = 0;
        for (const auto& [m, c] : coeffs) n += c * std::pow(z, m);
        if (j_ || k_) n /= std::pow(1.0 - z / sq, j_) * std::pow(1.0 - 1.0 / (z * sq), k_);
        sum += n;
    }
    return sum / static_cast<double>(samples);
}

Scalar RationalSpectral::value_at_sqrt_q() const {
    if (j_ != 0) throw std::domain_error("pole at sqrt(q)");
    if (num_.empty()) return Scalar();
    Scalar n = laurent::eval(num_, sqrt_q_pow(1));
    if (k_ == 0) return n;
    Rational one_minus = 1 - Rational(1, static_cast<unsigned long>(ctx_->q()));
    return n.scaled(rational_pow(1 / one_minus, k_));
}

SpectralElement spectral_add(const SpectralElement& x, const SpectralElement& y) {
    SpectralElement r = x;
    for (const auto& [chi, v] : y) {
        auto it = r.find(chi);
        if (it == r.end())
            r.emplace(chi, v);
        else
            it->second = it->second + v;
    }
    for (auto it = r.begin(); it != r.end();) {
        if (it->second.is_zero())
            it = r.erase(it);
        else
            ++it;
    }
    return r;
}

SpectralElement spectral_scale(const SpectralElement& x, const Scalar& c) {
    SpectralElement r;
    for (const auto& [chi, v] : x) {
        auto w = v.scaled(c);
        if (!w.is_zero()) r.emplace(chi, w);
    }
    return r;
}

bool spectral_equal(const SpectralElement& x, const SpectralElement& y) {
    SpectralElement d = spectral_add(x, spectral_scale(y, Scalar(-1)));
    return d.empty();
}

SpectralElement spectral_derivative(const SpectralElement& x) {
    SpectralElement r;
    for (const auto& [chi, v] : x) {
        auto w = v.derivative();
        if (!w.is_zero()) r.emplace(chi, w);
    }
    return r;
}

SpectralElement spectral_inversion(const LocalField& K, const SpectralElement& x) {
    SpectralElement r;
    for (const auto& [chi, v] : x) r.emplace(K.conj(chi), v.reflect());
    return r;
}

Scalar spectral_inner_product(const SpectralElement& x, const SpectralElement& y) {
    Scalar sum;
    for (const auto& [chi, v] : x) {
        auto it = y.find(chi);
        if (it == y.end()) continue;
        sum += (v.conj() * it->second).circle_integral();
    }
    return sum;
}

SpectralElement mellin(const LocalField& K, const MultFunction& f) {
    const ScalarContext* ctx = K.ctx();
    unsigned e = f.level();
    auto chars = K.enumerate_characters(e);
    Rational inv_phi(1, static_cast<unsigned long>(K.phi(e)));
    SpectralElement out;
    for (const auto& chi : chars) {
        RationalSpectral::Poly poly;
        for (const auto& [key, v] : f.entries()) {
            if (v.is_zero()) continue;
            Scalar term = v * K.char_eval(chi, key.second);
            auto [it, inserted] = poly.try_emplace(key.first, term);
            if (!inserted) it->second += term;
        }
        for (auto& [m, c] : poly) c = c.scaled(inv_phi);
        RationalSpectral r(ctx, std::move(poly));
        if (!r.is_zero()) out.emplace(chi, std::move(r));
    }
    return out;
}

MultFunction mellin_inverse(const LocalField& K, const SpectralElement& l) {
    unsigned level = 0;
    for (const auto& [chi, r] : l) {
        if (!r.is_laurent()) throw std::invalid_argument("component is not a Laurent polynomial");
        level = std::max(level, chi.e);
    }
    MultFunction f(level);
    auto units = K.unit_residues(level);
    for (const auto& [chi, r] : l) {
        for (std::int64_t u : units) {
            Scalar cu = K.char_eval(chi, u).conj();
            for (const auto& [m, c] : r.numerator()) f.add(K, m, u, cu * c);
        }
    }
    return f.pruned();
}

SpectralElement spectral_transform(const LocalField& K, const BruhatFunction& phi) {
    K.require_concrete("spectral transform");
    BruhatFunction away;
    SpectralElement out;
    RationalSpectral at_zero(K.ctx());
    for (const auto& t : phi.normalized_terms(K)) {
        if (K.padic().contains_zero(t.ball)) {
            // a |t|^{1/2} on |t| <= q^{-r}: a q^{-r/2} z^{-r} / v
            int r = t.ball.r;
            Scalar c = K.a() * K.sqrt_q_power(-r) * t.coeff;
            at_zero = at_zero + RationalSpectral(K.ctx(), {{-r, c}}, 0, 1);
        } else {
            away.add_term(K, t.ball.center, t.ball.r, t.coeff);
        }
    }
    if (!away.is_zero()) out = mellin(K, to_mult(K, away));
    if (!at_zero.is_zero()) out = spectral_add(out, SpectralElement{{K.trivial(), at_zero}});
    return out;
}

const char* multiplier_name(MultiplierKind kind) {
    switch (kind) {
        case MultiplierKind::Gamma: return "Gamma";
        case MultiplierKind::H: return "H";
        case MultiplierKind::T: return "T";
        case MultiplierKind::S: return "S";
        case MultiplierKind::Alpha: return "alpha";
    }
    return "?";
}

Scalar SpectralCalculus::root_number(const UnitCharacter& chi) const {
    if (chi.is_trivial()) throw std::invalid_argument("root number of the trivial character");
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = roots_.find(chi);
        if (it != roots_.end()) return it->second;
    }
    if (!K_.params().concrete()) throw std::invalid_argument("root number unavailable outside Q_p");
    BruhatFunction phi;
    for (std::int64_t u : K_.unit_residues(chi.e))
        phi.add_term(K_, QpNum{u, 0}, static_cast<int>(chi.e), K_.char_eval(chi, u));
    SpectralElement l = spectral_transform(K_, fourier(K_, phi));
    auto it = l.find(chi);
    int expo = static_cast<int>(chi.e + K_.delta());
    if (it == l.end() || !it->second.is_laurent() || it->second.numerator().size() != 1 ||
        it->second.numerator().begin()->first != expo || l.size() != 1)
        throw std::logic_error("root number ratio is not a monomial");
    auto ainv = K_.a().try_invert();
    Scalar w = it->second.coefficient(expo) * *ainv;
    std::lock_guard<std::mutex> lock(mu_);
    roots_.emplace(chi, w);
    return w;
}

RationalSpectral SpectralCalculus::multiplier(MultiplierKind kind, const UnitCharacter& chi) const {
    const ScalarContext* ctx = K_.ctx();
    const long d = K_.delta();
    const long e = chi.e;
    using laurent::mul;
    using laurent::u_power;
    using laurent::v_power;
    Rational one_minus = 1 - Rational(1, static_cast<unsigned long>(K_.q()));
    if (chi.is_trivial()) {
        switch (kind) {
            case MultiplierKind::Gamma: {
                RationalSpectral::Poly n;
                for (const auto& [m, c] : u_power(ctx, 1)) n.emplace(m + d, c);
                return RationalSpectral(ctx, n, 0, 1);
            }
            case MultiplierKind::H:
            case MultiplierKind::T: {
                auto uv = mul(u_power(ctx, 1), v_power(ctx, 1));
                Scalar lead = kind == MultiplierKind::H ? Scalar(d + 1) : Scalar(d);
                Scalar tail = kind == MultiplierKind::H ? Scalar(-one_minus) : Scalar(one_minus);
                auto n = laurent::add(laurent::scale(uv, lead), {{0, tail}});
                return RationalSpectral(ctx, n, 1, 1);
            }
            case MultiplierKind::S: {
                RationalSpectral::Poly n;
                for (const auto& [m, c] : u_power(ctx, 1)) n.emplace(m - d - 1, c);
                return RationalSpectral(ctx, n, 0, 1);
            }
            case MultiplierKind::Alpha: {
                RationalSpectral::Poly n;
                for (const auto& [m, c] : v_power(ctx, 1)) n.emplace(m + 1, c);
                return RationalSpectral(ctx, n, 1, 0);
            }
        }
    }
    switch (kind) {
        case MultiplierKind::Gamma:
            return RationalSpectral::monomial(ctx, root_number(chi), static_cast<int>(e + d));
        case MultiplierKind::H: return RationalSpectral::constant(ctx, Scalar(e + d));
        case MultiplierKind::T: return RationalSpectral::constant(ctx, Scalar(e + d - 1));
        case MultiplierKind::S: return RationalSpectral::monomial(ctx, Scalar(1), static_cast<int>(1 - e - d));
        case MultiplierKind::Alpha: return RationalSpectral::constant(ctx, Scalar(1));
    }
    throw std::logic_error("unknown multiplier");
}

SpectralElement SpectralCalculus::apply_multiplier(MultiplierKind kind, const SpectralElement& l) const {
    SpectralElement out;
    for (const auto& [chi, r] : l) {
        auto w = multiplier(kind, chi) * r;
        if (!w.is_zero()) out.emplace(chi, w);
    }
    return out;
}

SpectralElement SpectralCalculus::apply_fourier(const SpectralElement& l) const {
    SpectralElement out;
    for (const auto& [psi, r] : l) {
        UnitCharacter chi = K_.conj(psi);
        out = spectral_add(out, SpectralElement{{chi, multiplier(MultiplierKind::Gamma, chi) * r.reflect()}});
    }
    return out;
}

SpectralElement SpectralCalculus::apply_parity(const SpectralElement& l) const {
    SpectralElement out;
    for (const auto& [chi, r] : l) out.emplace(chi, r.scaled(Scalar(K_.parity(chi))));
    return out;
}

}  // namespace pscat
