#include "pscat/kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace pscat {

namespace {

using BiPoly = std::map<std::pair<int, int>, Scalar>;

// Numerator of r over the denominator u^J v^K.
laurent::Poly lift_numerator(const RationalSpectral& r, int J, int K) {
    const ScalarContext* ctx = r.context();
    auto n = laurent::mul(r.numerator(), laurent::u_power(ctx, J - r.u_exp()));
    return laurent::mul(n, laurent::v_power(ctx, K - r.v_exp()));
}

struct Bounds {
    int jz = 0, kz = 0, jw = 0, kw = 0;
};

void widen(Bounds& b, const SeparableKernel& k) {
    for (const auto& t : k.terms()) {
        RationalSpectral c = t.right.conj();
        b.jz = std::max(b.jz, t.left.u_exp());
        b.kz = std::max(b.kz, t.left.v_exp());
        b.jw = std::max(b.jw, c.u_exp());
        b.kw = std::max(b.kw, c.v_exp());
    }
}

BiPoly bivariate_numerator(const SeparableKernel& k, const Bounds& b) {
    BiPoly out;
    for (const auto& t : k.terms()) {
        auto nz = lift_numerator(t.left, b.jz, b.kz);
        auto nw = lift_numerator(t.right.conj(), b.jw, b.kw);
        for (const auto& [i, x] : nz)
            for (const auto& [j, y] : nw) {
                auto [it, inserted] = out.try_emplace({i, j}, x * y);
                if (!inserted) it->second += x * y;
            }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

void SeparableKernel::add(const RationalSpectral& left, const RationalSpectral& right) {
    if (!ctx_) ctx_ = left.context() ? left.context() : right.context();
    if (left.is_zero() || right.is_zero()) return;
    terms_.push_back({left, right});
}

SeparableKernel SeparableKernel::operator+(const SeparableKernel& k) const {
    SeparableKernel out = *this;
    if (!out.ctx_) out.ctx_ = k.ctx_;
    for (const auto& t : k.terms_) out.terms_.push_back(t);
    return out;
}

SeparableKernel SeparableKernel::scaled(const Scalar& c) const {
    SeparableKernel out(ctx_);
    for (const auto& t : terms_) out.add(t.left.scaled(c), t.right);
    return out;
}

SeparableKernel SeparableKernel::adjoint() const {
    SeparableKernel out(ctx_);
    for (const auto& t : terms_) out.add(t.right, t.left);
    return out;
}

RationalSpectral SeparableKernel::diagonal() const {
    RationalSpectral out(ctx_);
    for (const auto& t : terms_) out = out + t.left * t.right.conj();
    return out;
}

RationalSpectral SeparableKernel::apply(const RationalSpectral& g) const {
    RationalSpectral out(ctx_);
    for (const auto& t : terms_) out = out + t.left.scaled((t.right.conj() * g).circle_integral());
    return out;
}

std::optional<Scalar> SeparableKernel::eval(const Scalar& z, const Scalar& w) const {
    Scalar sum;
    for (const auto& t : terms_) {
        auto a = t.left.eval(z);
        auto b = t.right.conj().eval(w);
        if (!a || !b) return std::nullopt;
        sum += *a * *b;
    }
    return sum;
}

std::complex<double> SeparableKernel::eval_numeric(std::complex<double> z, std::complex<double> w) const {
    std::complex<double> sum = 0;
    for (const auto& t : terms_) sum += t.left.eval_numeric(z) * t.right.conj().eval_numeric(w);
    return sum;
}

bool SeparableKernel::equals(const SeparableKernel& k) const {
    Bounds b;
    widen(b, *this);
    widen(b, k);
    return bivariate_numerator(*this, b) == bivariate_numerator(k, b);
}

bool SeparableKernel::is_zero() const {
    Bounds b;
    widen(b, *this);
    return bivariate_numerator(*this, b).empty();
}

void LaurentKernel::add(int k, int l, const Scalar& c) {
    auto [it, inserted] = a_.try_emplace({k, l}, c);
    if (!inserted) it->second += c;
    if (it->second.is_zero()) a_.erase(it);
}

Scalar LaurentKernel::shifted_double_integral_sum() const {
    if (a_.empty()) return Scalar();
    int lo = a_.begin()->first.second, hi = lo;
    for (const auto& [idx, c] : a_) {
        lo = std::min(lo, idx.second);
        hi = std::max(hi, idx.second);
    }
    Scalar total;
    for (int j = lo; j <= hi; ++j) {
        // Inner integral over w of conj(w)^l w^j, leaving a Laurent polynomial in z.
        RationalSpectral slice(ctx_);
        for (const auto& [idx, c] : a_) {
            Scalar inner = RationalSpectral::monomial(ctx_, Scalar(1), j - idx.second).circle_integral();
            if (!inner.is_zero()) slice = slice + RationalSpectral::monomial(ctx_, c * inner, idx.first);
        }
        total += slice.shifted(-j).circle_integral();
    }
    return total;
}

Scalar LaurentKernel::diagonal_integral() const {
    RationalSpectral diag(ctx_);
    for (const auto& [idx, c] : a_) diag = diag + RationalSpectral::monomial(ctx_, c, idx.first - idx.second);
    return diag.circle_integral();
}

}  // namespace pscat
