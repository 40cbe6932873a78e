#include "doctest.h"

#include "oracles.hpp"
#include "pscat/kernel.hpp"
#include "pscat/random.hpp"
#include "pscat/spectral.hpp"

#include <cmath>

using namespace pscat;

namespace {

std::vector<UnitCharacter> of_conductor(const LocalField& K, unsigned e) {
    std::vector<UnitCharacter> out;
    for (const auto& chi : K.enumerate_characters(e))
        if (chi.e == e) out.push_back(chi);
    return out;
}

RationalSpectral poisson(const LocalField& K) {
    // (1 - 1/q) / (u v)
    Scalar c(1 - Rational(1, static_cast<unsigned long>(K.q())));
    return RationalSpectral(K.ctx(), {{0, c}}, 1, 1);
}

}  // namespace

TEST_CASE("circle integrals by residues") {
    LocalField K({2, 1, 0}, 4, 2);
    const auto* ctx = K.ctx();
    for (int m = -3; m <= 3; ++m)
        CHECK(RationalSpectral::monomial(ctx, Scalar(1), m).circle_integral() == Scalar(m == 0 ? 1 : 0));
    CHECK(poisson(K).circle_integral() == Scalar(1));
    SpectralCalculus calc(K);
    RationalSpectral T = calc.multiplier(MultiplierKind::T, K.trivial());
    CHECK((T.shifted(1)).circle_integral() == K.sqrt_q_power(-1));
    CHECK(T.circle_integral() == Scalar(1));
}

TEST_CASE("property: residue integrals agree with quadrature") {
    LocalField K({3, 1, 1}, 4, 2);
    RandomSource rng(3);
    for (int t = 0; t < 20; ++t) {
        RationalSpectral r(K.ctx(), rng.laurent(K, -3, 3).numerator(), rng.uniform(0, 2), rng.uniform(0, 2));
        auto exact = r.circle_integral().embed();
        auto numeric = oracle::circle_mean([&](oracle::cd z) { return r.eval_numeric(z); });
        CHECK(std::abs(exact - numeric) < 1e-9);
    }
}

TEST_CASE("Poisson expansion: Fourier coefficients of H(1; z)") {
    for (auto [p, d] : {std::pair{2u, 0u}, {3u, 1u}, {5u, 2u}}) {
        LocalField K({p, 1, d}, 4, 2);
        SpectralCalculus calc(K);
        RationalSpectral H = calc.multiplier(MultiplierKind::H, K.trivial());
        for (int k = -4; k <= 4; ++k) {
            // k-th coefficient = int z^{-k} H
            Scalar c = H.shifted(-k).circle_integral();
            double expect = (k == 0 ? d + 1.0 : 0.0) - oracle::poisson_coefficient(static_cast<double>(p), k);
            CHECK(std::abs(c.embed().real() - expect) < 1e-12);
        }
    }
}

TEST_CASE("root numbers agree with the Gauss sum oracle") {
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
        LocalField K({p, 1, 0}, 5, 3);
        SpectralCalculus calc(K);
        for (unsigned e = 1; e <= (p == 7 ? 2u : 3u); ++e)
            for (const auto& chi : of_conductor(K, e)) {
                Scalar w = calc.root_number(chi);
                CHECK(w == oracle::root_number_exact(K, chi));
                CHECK(std::abs(w.embed() - oracle::root_number(K, chi)) < 1e-9);
                CHECK(w * w.conj() == Scalar(1));
            }
    }
    LocalField K3({3, 1, 0}, 5, 2);
    SpectralCalculus c3(K3);
    auto quad = of_conductor(K3, 1).front();
    CHECK(c3.root_number(quad) == -K3.root_of_unity(1, 4));
}

TEST_CASE("Gamma, S and alpha are unitary; T = S D(conj S); T and H signed identities") {
    for (auto [p, d] : {std::pair{2u, 0u}, {3u, 0u}, {2u, 1u}, {3u, 2u}}) {
        LocalField K({p, 1, d}, 5, 3);
        SpectralCalculus calc(K);
        for (unsigned e = 0; e <= 3; ++e)
            for (const auto& chi : of_conductor(K, e)) {
                for (auto kind : {MultiplierKind::S, MultiplierKind::Alpha}) {
                    RationalSpectral m = calc.multiplier(kind, chi);
                    CHECK(m * m.conj() == RationalSpectral::constant(K.ctx(), Scalar(1)));
                }
                if (calc.has_root_numbers() || chi.is_trivial()) {
                    RationalSpectral g = calc.multiplier(MultiplierKind::Gamma, chi);
                    CHECK(g * g.conj() == RationalSpectral::constant(K.ctx(), Scalar(1)));
                    // H is the logarithmic derivative of Gamma.
                    CHECK(g.derivative() == g * calc.multiplier(MultiplierKind::H, chi));
                }
                RationalSpectral S = calc.multiplier(MultiplierKind::S, chi);
                RationalSpectral T = calc.multiplier(MultiplierKind::T, chi);
                CHECK(T == S * S.conj().derivative());
                RationalSpectral H = calc.multiplier(MultiplierKind::H, chi);
                RationalSpectral dd = RationalSpectral::constant(K.ctx(), Scalar(static_cast<long>(d)));
                RationalSpectral d1 = RationalSpectral::constant(K.ctx(), Scalar(static_cast<long>(d) + 1));
                if (chi.is_trivial())
                    CHECK(T - dd == d1 - H);
                else
                    CHECK(T - dd == H - d1);
            }
    }
}

TEST_CASE("S vanishes at sqrt(q) on the trivial component") {
    LocalField K({3, 1, 1}, 4, 2);
    SpectralCalculus calc(K);
    CHECK(calc.multiplier(MultiplierKind::S, K.trivial()).value_at_sqrt_q().is_zero());
}

TEST_CASE("property: D is a derivation") {
    LocalField K({2, 1, 1}, 4, 2);
    RandomSource rng(8);
    for (int t = 0; t < 20; ++t) {
        RationalSpectral r(K.ctx(), rng.laurent(K, -2, 2).numerator(), rng.uniform(0, 1), rng.uniform(0, 2));
        RationalSpectral s(K.ctx(), rng.laurent(K, -2, 2).numerator(), rng.uniform(0, 2), rng.uniform(0, 1));
        CHECK((r * s).derivative() == r.derivative() * s + r * s.derivative());
    }
}

TEST_CASE("Mellin transform: dilation is multiplication by the character, inversion is an involution") {
    LocalField K({3, 1, 0}, 4, 2);
    RandomSource rng(12);
    for (int t = 0; t < 10; ++t) {
        MultFunction f = rng.mult_function(K, 2, -2, 2, 4);
        SpectralElement fh = mellin(K, f);
        // U(pi^{-1}) f (t) = f(t pi) shifts |t| by one step: multiplication by z.
        MultFunction g(f.level());
        for (const auto& [key, v] : f.entries()) g.add(K, key.first + 1, key.second, v);
        SpectralElement gh = mellin(K, g);
        SpectralElement zf;
        for (const auto& [chi, r] : fh) zf.emplace(chi, r.shifted(1));
        CHECK(spectral_equal(gh, zf));
        CHECK(spectral_equal(spectral_inversion(K, spectral_inversion(K, fh)), fh));
        CHECK(spectral_equal(mellin(K, f.inverted(K)), spectral_inversion(K, fh)));
        CHECK(mellin_inverse(K, fh).equals(K, f));
    }
}

TEST_CASE("kernel lemma examples") {
    LocalField K({2, 1, 0}, 4, 2);
    LaurentKernel one(K.ctx());
    one.add(0, 0, Scalar(1));
    CHECK(one.shifted_double_integral_sum() == Scalar(1));
    CHECK(one.diagonal_integral() == Scalar(1));
    LaurentKernel zw(K.ctx());
    zw.add(1, 1, Scalar(1));
    CHECK(zw.shifted_double_integral_sum() == Scalar(1));
    CHECK(zw.diagonal_integral() == Scalar(1));
    RandomSource rng(99);
    for (int t = 0; t < 20; ++t) {
        LaurentKernel A = rng.laurent_kernel(K, -4, 4, 8);
        CHECK(A.shifted_double_integral_sum() == A.diagonal_integral());
    }
}

TEST_CASE("separable kernels: equality is functional, not termwise") {
    LocalField K({3, 1, 0}, 4, 2);
    const auto* ctx = K.ctx();
    SeparableKernel a(ctx), b(ctx);
    auto z = RationalSpectral::monomial(ctx, Scalar(1), 1);
    auto one = RationalSpectral::constant(ctx, Scalar(1));
    a.add(z + one, z);
    b.add(z, z);
    b.add(one, z);
    CHECK(a.equals(b));
    b.add(one, one);
    CHECK_FALSE(a.equals(b));
    CHECK(a.adjoint().adjoint().equals(a));
}
