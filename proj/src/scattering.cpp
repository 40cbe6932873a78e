#include "pscat/scattering.hpp"

#include <stdexcept>

namespace pscat {

namespace {

Rational one_minus_inv_q(const LocalField& K) { return 1 - Rational(1, static_cast<unsigned long>(K.q())); }

// 1 / (1 - 1/(z sqrt q))
RationalSpectral omega_hat(const LocalField& K) { return RationalSpectral::poles(K.ctx(), 0, 1); }

}  // namespace

InteractingBlock::InteractingBlock(const LocalField& K, const UnitCharacter& chi) : chi_(chi) {
    const ScalarContext* ctx = K.ctx();
    const int d = static_cast<int>(K.delta());
    int top = d;
    if (chi.is_trivial()) {
        basis_.push_back(omega_hat(K));
        norms_.push_back(Scalar(1 / one_minus_inv_q(K)));
        grading_.push_back(-1);
    } else {
        top = d + static_cast<int>(chi.e) - 1;
    }
    for (int j = 1; j <= top; ++j) {
        basis_.push_back(RationalSpectral::monomial(ctx, Scalar(1), j));
        norms_.push_back(Scalar(1));
        grading_.push_back(1);
    }
    z_step_ = compress(RationalSpectral::monomial(ctx, Scalar(1), 1));
}

ScalarMatrix InteractingBlock::compress(const RationalSpectral& g) const {
    const std::size_t n = basis_.size();
    ScalarMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        RationalSpectral bi = basis_[i].conj();
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = (bi * g * basis_[j]).circle_integral().divided(norms_[i]);
    }
    return m;
}

RationalSpectral InteractingBlock::project(const RationalSpectral& g) const {
    RationalSpectral out(g.context());
    for (std::size_t i = 0; i < basis_.size(); ++i)
        out = out + basis_[i].scaled((basis_[i].conj() * g).circle_integral().divided(norms_[i]));
    return out;
}

SeparableKernel InteractingBlock::kernel() const {
    SeparableKernel k(basis_.empty() ? nullptr : basis_.front().context());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        auto inv = norms_[i].try_invert();
        k.add(basis_[i].scaled(*inv), basis_[i]);
    }
    return k;
}

Scattering::Scattering(const LocalField& K) : K_(K), calc_(K) {}

bool Scattering::in_D_minus(const BruhatFunction& phi) const {
    K_.require_concrete("incoming space membership");
    const auto& P = K_.padic();
    Ball unit_ball = P.ball(QpNum{0, 0}, 0);
    for (const auto& t : phi.normalized_terms(K_))
        if (!P.is_subset(t.ball, unit_ball)) return false;
    return integral(K_, phi).is_zero();
}

bool Scattering::in_D_plus(const BruhatFunction& phi) const { return in_D_minus(fourier_inverse(K_, phi)); }

bool Scattering::in_D_minus_spectral(const BruhatFunction& phi) const {
    SpectralElement l = spectral_transform(K_, phi);
    for (const auto& [chi, r] : l) {
        if (!in_exterior_hardy(r)) return false;
        if (chi.is_trivial() && !r.value_at_sqrt_q().is_zero()) return false;
    }
    return true;
}

const InteractingBlock& Scattering::block(const UnitCharacter& chi) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = blocks_.find(chi);
    if (it == blocks_.end()) it = blocks_.emplace(chi, std::make_unique<InteractingBlock>(K_, chi)).first;
    return *it->second;
}

std::size_t Scattering::expected_dimension(const UnitCharacter& chi) const {
    long d = static_cast<long>(K_.delta()) + static_cast<long>(chi.e) - 1 + (chi.is_trivial() ? 2 : 0);
    return static_cast<std::size_t>(d);
}

SeparableKernel Scattering::kernel_closed_form(const UnitCharacter& chi) const {
    const ScalarContext* ctx = K_.ctx();
    SeparableKernel k(ctx);
    const int d = static_cast<int>(K_.delta());
    int top = d + static_cast<int>(chi.e) - 1;
    if (chi.is_trivial()) {
        k.add(omega_hat(K_).scaled(Scalar(one_minus_inv_q(K_))), omega_hat(K_));
        top = d;
    }
    for (int j = 1; j <= top; ++j)
        k.add(RationalSpectral::monomial(ctx, Scalar(1), j), RationalSpectral::monomial(ctx, Scalar(1), j));
    return k;
}

Scalar Scattering::kernel_K(const SpectralPoint& a, const SpectralPoint& b) const {
    if (a.chi != b.chi) return Scalar();
    auto v = kernel_closed_form(a.chi).eval(a.z, b.z);
    if (!v) throw std::domain_error("kernel evaluated at a pole");
    return *v;
}

std::map<UnitCharacter, ScalarMatrix> Scattering::z_smear(const MultFunction& f) const {
    auto [outer, inner] = f.split_at_unit_circle();
    SpectralElement g = spectral_add(mellin(K_, outer), mellin(K_, inner.inverted(K_)));
    std::map<UnitCharacter, ScalarMatrix> out;
    for (const auto& [chi, r] : g) {
        const InteractingBlock& b = block(chi);
        if (b.dimension() == 0) continue;
        if (r.min_exponent() < 0) throw std::logic_error("semigroup smear needs |t| >= 1");
        ScalarMatrix acc(b.dimension());
        ScalarMatrix step = ScalarMatrix::identity(b.dimension());
        for (int m = 0; m <= r.max_exponent(); ++m) {
            Scalar c = r.coefficient(m);
            if (!c.is_zero()) acc = acc + step.scaled(c);
            step = step * b.z_step();
        }
        out.emplace(chi, std::move(acc));
    }
    return out;
}

Scalar Scattering::trace_Z(const MultFunction& f) const {
    Scalar t;
    for (const auto& [chi, m] : z_smear(f)) t += m.trace();
    return t;
}

Scalar Scattering::supertrace_Z(const MultFunction& f) const {
    Scalar t;
    for (const auto& [chi, m] : z_smear(f)) {
        const auto& grading = block(chi).grading();
        for (std::size_t i = 0; i < m.size(); ++i) t += m.at(i, i).scaled(grading[i]);
    }
    return t;
}

Scalar Scattering::trace_formula_rhs(const MultFunction& f) const {
    Scalar t;
    for (const auto& [chi, r] : mellin(K_, f)) t += (r * calc_.multiplier(MultiplierKind::T, chi)).circle_integral();
    return t;
}

Scalar Scattering::weil_local_term(const SpectralElement& fhat) const {
    Scalar t;
    for (const auto& [chi, r] : fhat) t += (r * calc_.multiplier(MultiplierKind::H, chi)).circle_integral();
    return t;
}

Scalar Scattering::weil_local_term(const MultFunction& f) const { return weil_local_term(mellin(K_, f)); }

Scalar Scattering::time_delay_partial_sum(const MultFunction& f, int J) const {
    SpectralElement fhat = mellin(K_, f);
    Scalar total;
    for (const auto& [chi, r] : fhat) {
        const InteractingBlock& b = block(chi);
        for (std::size_t i = 0; i < b.dimension(); ++i) {
            RationalSpectral bi = b.basis()[i].conj();
            Scalar norm_inv = *b.squared_norms()[i].try_invert();
            for (int j = -J; j <= J; ++j) {
                Scalar c = (bi * r.shifted(j)).circle_integral();
                if (!c.is_zero()) total += c * c.conj() * norm_inv;
            }
        }
    }
    return total;
}

Scalar Scattering::time_delay_exact(const MultFunction& f) const {
    Scalar t;
    for (const auto& [chi, r] : mellin(K_, f))
        t += (r.conj() * calc_.multiplier(MultiplierKind::T, chi) * r).circle_integral();
    return t;
}

bool in_exterior_hardy(const RationalSpectral& r) {
    return r.is_zero() || (r.u_exp() == 0 && r.max_exponent() <= 0);
}

}  // namespace pscat
