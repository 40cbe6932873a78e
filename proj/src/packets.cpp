#include "pscat/packets.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

#include <omp.h>

namespace pscat {

PacketCalculus::PacketCalculus(const LocalField& K) : K_(K), P_(K.padic()) {
    K.require_concrete("the wave-packet calculus");
}

Packet PacketCalculus::make(const Scalar& coeff, const QpNum& freq, const Ball& ball) const {
    Ball b = P_.ball(ball.center, ball.r);
    QpNum a = P_.reduce(freq, -b.r);
    QpNum da = P_.sub(freq, a);
    Scalar c = coeff;
    if (da.num != 0) c = c * K_.additive_character(P_.mul(da, b.center));
    return {c, a, b};
}

PacketList PacketCalculus::grid_indicator(int M, std::int64_t y) const {
    return {make(Scalar(1), QpNum{}, Ball{P_.make(y, M), M})};
}

PacketList PacketCalculus::fourier(const PacketList& in) const {
    PacketList out;
    out.reserve(in.size());
    Rational p(mpz_class(K_.p()));
    for (const auto& pk : in) {
        Scalar c = pk.coeff.scaled(rational_pow(p, -pk.ball.r)) *
                   K_.additive_character(P_.mul(pk.freq, pk.ball.center));
        out.push_back(make(c, P_.neg(pk.ball.center), Ball{pk.freq, -pk.ball.r}));
    }
    return out;
}

PacketList PacketCalculus::fourier_inverse(const PacketList& in) const {
    PacketList out;
    for (const auto& pk : fourier(in))
        out.push_back(make(pk.coeff, P_.neg(pk.freq), Ball{P_.neg(pk.ball.center), pk.ball.r}));
    return out;
}

PacketList PacketCalculus::cutoff(const PacketList& in, int n) const {
    Ball target{QpNum{}, -n};
    PacketList out;
    for (const auto& pk : in) {
        if (P_.is_subset(pk.ball, target))
            out.push_back(pk);
        else if (P_.is_subset(target, pk.ball))
            out.push_back(make(pk.coeff, pk.freq, target));
    }
    return out;
}

PacketList PacketCalculus::unmodulate(const PacketList& in) const {
    PacketList out;
    for (const auto& pk : in) {
        if (pk.freq.num == 0) {
            out.push_back(pk);
            continue;
        }
        int R = -P_.valuation(pk.freq);
        std::int64_t count = P_.pow(R - pk.ball.r);
        QpNum step = P_.shift(QpNum{1, 0}, pk.ball.r);
        QpNum c = pk.ball.center;
        for (std::int64_t t = 0; t < count; ++t) {
            out.push_back({pk.coeff * K_.additive_character(P_.mul(pk.freq, c)), QpNum{}, P_.ball(c, R)});
            c = P_.add(c, step);
        }
    }
    return out;
}

PacketList PacketCalculus::smear(const PacketList& in, const MultFunction& f) const {
    PacketList plain = unmodulate(in);
    PacketList out;
    const int e = static_cast<int>(f.level());
    const std::int64_t p = static_cast<std::int64_t>(K_.p());
    for (const auto& [key, value] : f.entries()) {
        if (value.is_zero()) continue;
        auto [m, u] = key;
        Scalar w = value * K_.sqrt_p_power(-m);
        for (const auto& pk : plain) {
            if (P_.contains_zero(pk.ball)) {
                Rational mass(1, static_cast<unsigned long>(K_.phi(static_cast<unsigned>(e))));
                out.push_back({(pk.coeff * w).scaled(mass), QpNum{}, Ball{QpNum{}, pk.ball.r - m}});
                continue;
            }
            int v = P_.valuation(pk.ball.center);
            int kappa = pk.ball.r - v;
            int lo = std::min(e, kappa);
            Rational mass(1, static_cast<unsigned long>(K_.phi(static_cast<unsigned>(std::max(e, kappa)))));
            Scalar c = (pk.coeff * w).scaled(mass);
            if (lo >= 1) {
                QpNum center = P_.shift(P_.mul(pk.ball.center, P_.make(u, 0)), -m);
                out.push_back({c, QpNum{}, P_.ball(center, v - m + lo)});
            } else {
                for (std::int64_t t = 1; t < p; ++t)
                    out.push_back({c, QpNum{}, P_.ball(P_.shift(P_.make(t, 0), v - m), v - m + 1)});
            }
        }
    }
    return simplify(out);
}

PacketList PacketCalculus::apply_A(const PacketList& in) const {
    PacketList out;
    for (const auto& pk : in) {
        if (P_.contains_zero(pk.ball))
            throw std::invalid_argument("the operator A requires functions vanishing near 0");
        int v = P_.valuation(pk.ball.center);
        if (v != 0) out.push_back({pk.coeff.scaled(Rational(-v)), pk.freq, pk.ball});
    }
    return out;
}

Scalar PacketCalculus::inner(const PacketList& a, const PacketList& b) const {
    Scalar sum;
    Rational p(mpz_class(K_.p()));
    for (const auto& x : a) {
        Scalar cx = x.coeff.conj();
        for (const auto& y : b) {
            auto ball = P_.intersect(x.ball, y.ball);
            if (!ball) continue;
            QpNum d = P_.sub(y.freq, x.freq);
            if (d.num != 0 && P_.valuation(d) < -ball->r) continue;
            Scalar term = (cx * y.coeff).scaled(rational_pow(p, -ball->r));
            if (d.num != 0) term = term * K_.additive_character(P_.mul(d, ball->center));
            sum += term;
        }
    }
    return sum;
}

PacketList PacketCalculus::simplify(const PacketList& in) const {
    std::map<std::tuple<Ball, QpNum>, Scalar> acc;
    for (const auto& pk : in) {
        if (pk.coeff.is_zero()) continue;
        acc[{pk.ball, pk.freq}] += pk.coeff;
    }
    PacketList out;
    for (auto& [key, c] : acc)
        if (!c.is_zero()) out.push_back({c, std::get<1>(key), std::get<0>(key)});
    return out;
}

bool PacketCalculus::inside_grid(const PacketList& in, int M) const {
    for (const auto& pk : in) {
        if (pk.ball.r > M || pk.ball.r < -M) return false;
        if (!P_.contains_zero(pk.ball) && P_.valuation(pk.ball.center) < -M) return false;
        if (pk.freq.num != 0 && P_.valuation(pk.freq) < -M) return false;
    }
    return true;
}

Scalar BruteMatrix::trace() const {
    Scalar t;
    for (std::size_t i = 0; i < dim; ++i) t += at(i, i);
    return t;
}

int chain_logq_power(const OracleChain& chain) {
    int k = 0;
    for (const auto& s : chain)
        if (s.op == OracleOp::Smear || s.op == OracleOp::ApplyA) ++k;
    return k;
}

PacketList apply_chain(const PacketCalculus& pc, const OracleChain& chain, PacketList v) {
    for (auto it = chain.rbegin(); it != chain.rend() && !v.empty(); ++it) {
        switch (it->op) {
            case OracleOp::Fourier: v = pc.fourier(v); break;
            case OracleOp::FourierInverse: v = pc.fourier_inverse(v); break;
            case OracleOp::Cutoff: v = pc.cutoff(v, it->n); break;
            case OracleOp::Smear: v = pc.smear(v, *it->f); break;
            case OracleOp::ApplyA: v = pc.apply_A(v); break;
        }
        v = pc.simplify(v);
    }
    return v;
}

namespace {

void check_grid(const LocalField& K, int M) {
    if (M < 0) throw std::invalid_argument("grid level must be non-negative");
    if (2 * M > static_cast<int>(K.ctx()->p_depth()))
        throw std::length_error("grid level exceeds the configured roots of unity");
    if (K.padic().pow(2 * M) > (std::int64_t(1) << 24))
        throw std::length_error("grid level exceeds the configured size limit");
}

}  // namespace

BruteMatrix brute_matrix(const LocalField& K, const OracleChain& chain, int M, bool parallel) {
    check_grid(K, M);
    PacketCalculus pc(K);
    const auto& P = K.padic();
    BruteMatrix out;
    out.M = M;
    out.dim = static_cast<std::size_t>(P.pow(2 * M));
    out.entries.assign(out.dim * out.dim, Scalar());
    out.logq_power = chain_logq_power(chain);
    Rational pM(mpz_class(P.pow(M)));
    const std::int64_t dim = static_cast<std::int64_t>(out.dim);
    bool leaks = false;
#pragma omp parallel for schedule(dynamic, 4) if (parallel) reduction(|| : leaks)
    for (std::int64_t j = 0; j < dim; ++j) {
        PacketList v = apply_chain(pc, chain, pc.grid_indicator(M, j));
        if (!pc.inside_grid(v, M)) leaks = true;
        for (std::int64_t i = 0; i < dim; ++i) {
            Scalar x = pc.inner(pc.grid_indicator(M, i), v);
            if (!x.is_zero())
                out.entries[static_cast<std::size_t>(i) * out.dim + static_cast<std::size_t>(j)] = x.scaled(pM);
        }
    }
    out.leaks = leaks;
    return out;
}

Scalar brute_trace(const LocalField& K, const OracleChain& chain, int M, bool parallel) {
    check_grid(K, M);
    PacketCalculus pc(K);
    const auto& P = K.padic();
    const std::int64_t dim = P.pow(2 * M);
    Rational pM(mpz_class(P.pow(M)));
    int threads = parallel ? omp_get_max_threads() : 1;
    std::vector<Scalar> partial(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
    {
        Scalar local;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t y = 0; y < dim; ++y) {
            PacketList e = pc.grid_indicator(M, y);
            PacketList v = apply_chain(pc, chain, e);
            if (v.empty()) continue;
            local += pc.inner(e, v);
        }
        partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
    }
    Scalar total;
    for (const auto& s : partial) total += s;
    return total.scaled(pM);
}

}  // namespace pscat
