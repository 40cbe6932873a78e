#include "pscat/connes.hpp"

#include "pscat/invariant.hpp"
#include "pscat/packets.hpp"

#include <algorithm>
#include <stdexcept>

namespace pscat {

SeparableKernel ConnesTrace::q_kernel(int n, const UnitCharacter& chi) const {
    if (n < 0) throw std::invalid_argument("cutoff exponent must be non-negative");
    const ScalarContext* ctx = K_.ctx();
    const int d = static_cast<int>(K_.delta());
    SeparableKernel k(ctx);
    auto mono = [ctx](const Scalar& c, int j) { return RationalSpectral::monomial(ctx, c, j); };
    if (!chi.is_trivial()) {
        for (int j = static_cast<int>(chi.e) + d - n; j <= n; ++j) k.add(mono(1, j), mono(1, j));
        return k;
    }
    Scalar poisson(1 - Rational(1, static_cast<unsigned long>(K_.q())));
    RationalSpectral inv_v = RationalSpectral::poles(ctx, 0, 1);
    if (2 * n >= d) {
        k.add(inv_v.shifted(d - n).scaled(poisson), inv_v.shifted(d - n));
        for (int j = 1; j <= 2 * n - d; ++j) k.add(mono(1, d - n + j), mono(1, d - n + j));
    } else {
        Scalar c = poisson * K_.sqrt_q_power(-(d - 2 * n));
        k.add(inv_v.shifted(d - n).scaled(c), inv_v.shifted(n));
    }
    return k;
}

Scalar ConnesTrace::trace_Qn_Uf(int n, const MultFunction& f) const {
    Scalar t;
    for (const auto& [chi, r] : mellin(K_, f)) t += (q_kernel(n, chi).diagonal() * r).circle_integral();
    return t;
}

MultFunction ConnesTrace::conductor_cutoff(const MultFunction& f, unsigned m) const {
    SpectralElement l = mellin(K_, f);
    for (auto it = l.begin(); it != l.end();) it = it->first.e > m ? l.erase(it) : std::next(it);
    MultFunction g = mellin_inverse(K_, l);
    if (g.level() < f.level()) g = g.refined(K_, f.level());
    return g;
}

Scalar ConnesTrace::closed_form_trace(int n, const MultFunction& f) const {
    const int d = static_cast<int>(K_.delta());
    if (2 * n < d) throw std::domain_error("closed form needs 2n >= delta");
    MultFunction g = conductor_cutoff(f, static_cast<unsigned>(2 * n - d));
    return Scalar(2 * n + 1) * g.at_one(K_) - S_.weil_local_term(g);
}

int ConnesTrace::default_grid_level(int n, const MultFunction& f) const {
    int r = f.is_zero() ? 0 : std::max(std::abs(f.min_m()), std::abs(f.max_m()));
    return n + r + static_cast<int>(f.level()) + 1;
}

Scalar ConnesTrace::brute_force_trace(int n, const MultFunction& f, int M, bool parallel) const {
    K_.require_concrete("grid oracle");
    if (n < 0) throw std::invalid_argument("cutoff exponent must be non-negative");
    if (M < n) throw std::invalid_argument("grid level must contain the cutoff");
    if (f.is_zero()) return Scalar();
    OracleChain chain{{OracleOp::Fourier},
                      {OracleOp::Cutoff, n},
                      {OracleOp::FourierInverse},
                      {OracleOp::Cutoff, n},
                      {OracleOp::Smear, 0, &f}};
    return brute_trace(K_, chain, M, parallel);
}

std::optional<std::map<int, Scalar>> ConnesTrace::sphere_values(const MultFunction& f) const {
    std::map<int, Scalar> out;
    if (f.is_zero()) return out;
    auto units = K_.unit_residues(f.level());
    for (int m = f.min_m(); m <= f.max_m(); ++m) {
        Scalar v = f.eval(K_, m, units.front());
        for (std::int64_t u : units)
            if (f.eval(K_, m, u) != v) return std::nullopt;
        if (!v.is_zero()) out.emplace(m, v);
    }
    return out;
}

Scalar ConnesTrace::sector_trace(int n, const MultFunction& f) const {
    auto values = sphere_values(f);
    if (!values) throw std::invalid_argument("sector oracle needs a unit-invariant function");
    return invariant_sector_trace(K_, n, *values);
}

}  // namespace pscat
