#include "pscat/bruhat.hpp"

#include <algorithm>
#include <stdexcept>

namespace pscat {

namespace {

void require_s0(const LocalField& K, const BruhatFunction& phi, const char* what) {
    if (!phi.in_s0(K))
        throw std::invalid_argument(std::string(what) + " requires a function vanishing near 0");
}

}  // namespace

void BruhatFunction::add_term(const LocalField& K, const QpNum& center, int r, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    terms_.push_back({K.padic().ball(center, r), coeff});
}

Scalar BruhatFunction::eval(const LocalField& K, const QpNum& x) const {
    Scalar v;
    for (const auto& t : terms_)
        if (K.padic().contains(t.ball, x)) v += t.coeff;
    return v;
}

void BruhatFunction::grid_bounds(const LocalField& K, int& a, int& b) const {
    bool first = true;
    a = 0;
    b = 0;
    for (const auto& t : terms_) {
        int v = K.padic().valuation(t.ball.center);
        int lo = std::min(v, t.ball.r);
        if (first) {
            a = -lo;
            b = t.ball.r;
            first = false;
        } else {
            a = std::max(a, -lo);
            b = std::max(b, t.ball.r);
        }
    }
    if (a + b < 0) b = -a;
}

GridForm BruhatFunction::to_grid(const LocalField& K) const {
    int a, b;
    grid_bounds(K, a, b);
    return to_grid(K, a, b);
}

GridForm BruhatFunction::to_grid(const LocalField& K, int a, int b) const {
    const auto& P = K.padic();
    if (a + b < 0) throw std::invalid_argument("empty grid");
    std::int64_t n = P.pow(a + b);
    if (n > kMaxGridSize) throw std::length_error("grid exceeds the configured size limit");
    GridForm g{a, b, std::vector<Scalar>(static_cast<std::size_t>(n))};
    for (const auto& t : terms_) {
        if (t.ball.r > b) throw std::invalid_argument("term finer than grid");
        int v = P.valuation(t.ball.center);
        if (std::min(v, t.ball.r) < -a) throw std::invalid_argument("term outside grid support");
        // y = c p^a modulo p^{a+r}, stepping by p^{a+r}
        QpNum cy = P.shift(t.ball.center, a);
        std::int64_t base = cy.num == 0 ? 0 : cy.num;
        if (cy.k != 0) throw std::logic_error("grid center not integral");
        std::int64_t step = P.pow(a + t.ball.r);
        base %= step;
        if (base < 0) base += step;
        for (std::int64_t y = base; y < n; y += step) g.values[static_cast<std::size_t>(y)] += t.coeff;
    }
    return g;
}

BruhatFunction BruhatFunction::from_grid(const LocalField& K, const GridForm& g) {
    const auto& P = K.padic();
    const int depth = g.a + g.b;
    const std::int64_t p = static_cast<std::int64_t>(K.p());
    // uniform[L][y]: the node y mod p^L has constant value on all its leaves
    std::vector<std::vector<char>> uniform(static_cast<std::size_t>(depth + 1));
    uniform[static_cast<std::size_t>(depth)].assign(g.values.size(), 1);
    for (int L = depth - 1; L >= 0; --L) {
        std::int64_t size = P.pow(L);
        auto& cur = uniform[static_cast<std::size_t>(L)];
        const auto& child = uniform[static_cast<std::size_t>(L + 1)];
        cur.assign(static_cast<std::size_t>(size), 0);
        for (std::int64_t y = 0; y < size; ++y) {
            bool ok = true;
            for (std::int64_t t = 0; t < p && ok; ++t)
                ok = child[static_cast<std::size_t>(y + t * size)] != 0;
            if (ok) {
                // all children uniform: compare representative leaves
                const Scalar& v0 = g.values[static_cast<std::size_t>(y)];
                for (std::int64_t t = 1; t < p && ok; ++t)
                    ok = g.values[static_cast<std::size_t>(y + t * size)] == v0;
            }
            cur[static_cast<std::size_t>(y)] = ok ? 1 : 0;
        }
    }
    BruhatFunction out;
    std::vector<std::pair<int, std::int64_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [L, y] = stack.back();
        stack.pop_back();
        if (uniform[static_cast<std::size_t>(L)][static_cast<std::size_t>(y)]) {
            const Scalar& v = g.values[static_cast<std::size_t>(y)];
            if (!v.is_zero()) out.terms_.push_back({P.ball(P.make(y, g.a), L - g.a), v});
            continue;
        }
        std::int64_t size = P.pow(L);
        for (std::int64_t t = p - 1; t >= 0; --t) stack.push_back({L + 1, y + t * size});
    }
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const BruhatTerm& x, const BruhatTerm& y) { return x.ball < y.ball; });
    return out;
}

BruhatFunction BruhatFunction::normalized(const LocalField& K) const {
    if (terms_.empty()) return {};
    return from_grid(K, to_grid(K));
}

std::vector<BruhatTerm> BruhatFunction::normalized_terms(const LocalField& K) const {
    return normalized(K).terms_;
}

bool BruhatFunction::equals(const LocalField& K, const BruhatFunction& other) const {
    auto x = normalized(K).terms_;
    auto y = other.normalized(K).terms_;
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].ball != y[i].ball || x[i].coeff != y[i].coeff) return false;
    return true;
}

BruhatFunction BruhatFunction::operator+(const BruhatFunction& g) const {
    BruhatFunction out = *this;
    out.terms_.insert(out.terms_.end(), g.terms_.begin(), g.terms_.end());
    return out;
}

BruhatFunction BruhatFunction::operator-(const BruhatFunction& g) const {
    return *this + g.scaled(Scalar(-1));
}

BruhatFunction BruhatFunction::scaled(const Scalar& c) const {
    BruhatFunction out;
    if (c.is_zero()) return out;
    for (const auto& t : terms_) out.terms_.push_back({t.ball, c * t.coeff});
    return out;
}

Scalar BruhatFunction::value_at_zero(const LocalField& K) const { return eval(K, QpNum{}); }

bool BruhatFunction::in_s0(const LocalField& K) const { return value_at_zero(K).is_zero(); }

Scalar integral(const LocalField& K, const BruhatFunction& phi) {
    K.require_concrete("integral");
    Scalar sum;
    for (const auto& t : phi.terms()) sum += t.coeff.scaled(rational_pow(Rational(mpz_class(K.p())), -t.ball.r));
    return sum;
}

Scalar inner_product(const LocalField& K, const BruhatFunction& phi, const BruhatFunction& psi) {
    K.require_concrete("inner product");
    Scalar sum;
    Rational p(mpz_class(K.p()));
    for (const auto& t1 : phi.terms()) {
        Scalar c1 = t1.coeff.conj();
        for (const auto& t2 : psi.terms()) {
            auto b = K.padic().intersect(t1.ball, t2.ball);
            if (!b) continue;
            sum += (c1 * t2.coeff).scaled(rational_pow(p, -b->r));
        }
    }
    return sum;
}

namespace {

std::vector<Scalar> root_table(const LocalField& K, std::int64_t n) {
    std::vector<Scalar> roots(static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < n; ++t)
        roots[static_cast<std::size_t>(t)] = K.root_of_unity(t, static_cast<std::uint64_t>(n));
    return roots;
}

Scalar fourier_entry(const std::vector<Scalar>& in, const std::vector<std::size_t>& nonzero,
                     const std::vector<Scalar>& roots, std::int64_t n, std::int64_t i,
                     const Rational& scale) {
    Scalar acc;
    for (std::size_t j : nonzero) {
        std::int64_t e = static_cast<std::int64_t>(
            (static_cast<__int128>(i) * static_cast<__int128>(j)) % n);
        std::int64_t idx = e == 0 ? 0 : n - e;
        acc += in[j] * roots[static_cast<std::size_t>(idx)];
    }
    return acc.scaled(scale);
}

GridForm fourier_grid_impl(const LocalField& K, const GridForm& g, bool parallel) {
    K.require_concrete("Fourier transform");
    std::int64_t n = static_cast<std::int64_t>(g.values.size());
    if (n > kMaxGridSize) throw std::length_error("grid exceeds the configured size limit");
    if (g.a + g.b > static_cast<int>(K.ctx()->p_depth()))
        throw std::length_error("grid deeper than the available roots of unity");
    auto roots = root_table(K, n);
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < g.values.size(); ++j)
        if (!g.values[j].is_zero()) nonzero.push_back(j);
    Rational scale = rational_pow(Rational(mpz_class(K.p())), -g.b);
    GridForm out{g.b, g.a, std::vector<Scalar>(g.values.size())};
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t i = 0; i < n; ++i)
            out.values[static_cast<std::size_t>(i)] = fourier_entry(g.values, nonzero, roots, n, i, scale);
    } else {
        for (std::int64_t i = 0; i < n; ++i)
            out.values[static_cast<std::size_t>(i)] = fourier_entry(g.values, nonzero, roots, n, i, scale);
    }
    return out;
}

}  // namespace

GridForm fourier_grid_serial(const LocalField& K, const GridForm& g) {
    return fourier_grid_impl(K, g, false);
}

GridForm fourier_grid_parallel(const LocalField& K, const GridForm& g) {
    return fourier_grid_impl(K, g, true);
}

BruhatFunction fourier(const LocalField& K, const BruhatFunction& phi, bool parallel) {
    K.require_concrete("Fourier transform");
    if (phi.is_zero()) return {};
    GridForm g = phi.to_grid(K);
    GridForm h = parallel ? fourier_grid_parallel(K, g) : fourier_grid_serial(K, g);
    return BruhatFunction::from_grid(K, h);
}

BruhatFunction parity(const LocalField& K, const BruhatFunction& phi) {
    std::vector<BruhatTerm> out;
    for (const auto& t : phi.terms())
        out.push_back({K.padic().ball(K.padic().neg(t.ball.center), t.ball.r), t.coeff});
    return BruhatFunction(std::move(out));
}

BruhatFunction fourier_inverse(const LocalField& K, const BruhatFunction& phi) {
    return parity(K, fourier(K, phi));
}

BruhatFunction invert_variable(const LocalField& K, const BruhatFunction& phi) {
    require_s0(K, phi, "inversion");
    const auto& P = K.padic();
    Rational p(mpz_class(K.p()));
    std::vector<BruhatTerm> out;
    for (const auto& t : phi.normalized_terms(K)) {
        int v = P.valuation(t.ball.center);
        int r = t.ball.r - 2 * v;
        out.push_back({P.ball(P.inverse_mod(t.ball.center, r), r), t.coeff.scaled(rational_pow(p, -v))});
    }
    return BruhatFunction(std::move(out));
}

BruhatFunction dilate(const LocalField& K, int m, std::int64_t u, const BruhatFunction& phi) {
    K.require_concrete("dilation");
    const auto& P = K.padic();
    if (u % static_cast<std::int64_t>(K.p()) == 0) throw std::invalid_argument("dilation by a non-unit");
    Scalar w = K.sqrt_p_power(-m);
    std::vector<BruhatTerm> out;
    for (const auto& t : phi.terms()) {
        QpNum c = P.shift(P.mul(t.ball.center, P.make(u, 0)), -m);
        out.push_back({P.ball(c, t.ball.r - m), t.coeff * w});
    }
    return BruhatFunction(std::move(out));
}

BruhatFunction apply_A(const LocalField& K, const BruhatFunction& phi) {
    require_s0(K, phi, "the operator A");
    std::vector<BruhatTerm> out;
    for (const auto& t : phi.normalized_terms(K)) {
        int v = K.padic().valuation(t.ball.center);
        if (v == 0) continue;
        out.push_back({t.ball, t.coeff.scaled(Rational(-v))});
    }
    return BruhatFunction(std::move(out));
}

MultFunction to_mult(const LocalField& K, const BruhatFunction& phi) {
    K.require_concrete("to_mult");
    require_s0(K, phi, "to_mult");
    const auto& P = K.padic();
    auto terms = phi.normalized_terms(K);
    unsigned level = 0;
    for (const auto& t : terms)
        level = std::max(level, static_cast<unsigned>(t.ball.r - P.valuation(t.ball.center)));
    MultFunction f(level);
    Scalar a = K.a();
    std::int64_t mod_level = P.pow(static_cast<int>(level));
    for (const auto& t : terms) {
        int v = P.valuation(t.ball.center);
        int k = t.ball.r - v;
        int m = -v;
        Scalar value = a * K.sqrt_p_power(m) * t.coeff;
        std::int64_t u = P.unit_residue(t.ball.center, k);
        std::int64_t step = P.pow(k);
        for (std::int64_t w = u; w < mod_level; w += step) f.add(K, m, w, value);
    }
    return f;
}

BruhatFunction from_mult(const LocalField& K, const MultFunction& f) {
    K.require_concrete("from_mult");
    const auto& P = K.padic();
    auto ainv = K.a().try_invert();
    if (!ainv) throw std::logic_error("a is not invertible");
    BruhatFunction out;
    int e = static_cast<int>(f.level());
    for (const auto& [key, v] : f.entries()) {
        if (v.is_zero()) continue;
        auto [m, u] = key;
        Scalar c = v * *ainv * K.sqrt_p_power(-m);
        out.add_term(K, P.shift(P.make(u, 0), -m), e - m, c);
    }
    return out;
}

}  // namespace pscat
