#include "doctest.h"

#include "oracles.hpp"
#include "pscat/random.hpp"
#include "pscat/scattering.hpp"

#include <cmath>

using namespace pscat;

namespace {

std::vector<UnitCharacter> of_conductor(const LocalField& K, unsigned e) {
    std::vector<UnitCharacter> out;
    for (const auto& chi : K.enumerate_characters(e))
        if (chi.e == e) out.push_back(chi);
    return out;
}

}  // namespace

TEST_CASE("incoming and outgoing membership") {
    LocalField K({2, 1, 0}, 5, 2);
    Scattering S(K);
    const auto& P = K.padic();
    BruhatFunction omega;
    omega.add_term(K, P.make(0, 0), 0, Scalar(1));
    CHECK_FALSE(S.in_D_minus(omega));
    BruhatFunction phi;
    phi.add_term(K, P.make(0, 0), 1, Scalar(1));
    phi.add_term(K, P.make(0, 0), 0, Scalar(Rational(-1, 2)));
    CHECK(S.in_D_minus(phi));
    CHECK(S.in_D_minus_spectral(phi));
    CHECK_FALSE(S.in_D_minus_spectral(omega));
    CHECK(S.in_D_plus(fourier(K, phi)));
    BruhatFunction wide;
    wide.add_term(K, P.make(1, 1), 0, Scalar(1));
    CHECK_FALSE(S.in_D_minus(wide));
    RandomSource rng(31);
    for (int t = 0; t < 20; ++t) {
        BruhatFunction a = rng.d_minus_function(K), b = rng.d_minus_function(K);
        CHECK(S.in_D_minus(a));
        CHECK(S.in_D_minus_spectral(a));
        CHECK(inner_product(K, fourier(K, a), b).is_zero());
    }
}

TEST_CASE("interacting blocks: pinned shapes") {
    LocalField K2({2, 1, 0}, 5, 2);
    Scattering S2(K2);
    const InteractingBlock& b = S2.block(K2.trivial());
    REQUIRE(b.dimension() == 1);
    CHECK(b.basis()[0] == RationalSpectral::poles(K2.ctx(), 0, 1));
    CHECK(b.squared_norms()[0] == Scalar(2));
    CHECK(b.grading()[0] == -1);

    LocalField K3({3, 1, 0}, 5, 2);
    Scattering S3(K3);
    CHECK(S3.block(of_conductor(K3, 1).front()).dimension() == 0);

    LocalField K31({3, 1, 1}, 5, 2);
    Scattering S31(K31);
    const InteractingBlock& r = S31.block(of_conductor(K31, 2).front());
    REQUIRE(r.dimension() == 2);
    CHECK(r.basis()[0] == RationalSpectral::monomial(K31.ctx(), Scalar(1), 1));
    CHECK(r.basis()[1] == RationalSpectral::monomial(K31.ctx(), Scalar(1), 2));
}

TEST_CASE("kernel of K: closed form, basis form, diagonal, projector") {
    for (auto [p, d] : {std::pair{2u, 0u}, {3u, 1u}, {2u, 2u}}) {
        LocalField K({p, 1, d}, 5, 3);
        Scattering S(K);
        RandomSource rng(50 + p + d);
        for (unsigned e = 0; e <= 3; ++e)
            for (const auto& chi : of_conductor(K, e)) {
                const InteractingBlock& b = S.block(chi);
                CHECK(b.dimension() == S.expected_dimension(chi));
                SeparableKernel k = S.kernel_closed_form(chi);
                CHECK(k.equals(b.kernel()));
                CHECK(k.diagonal() == S.calculus().multiplier(MultiplierKind::T, chi));
                RationalSpectral g = rng.laurent(K, -3, 5);
                RationalSpectral once = k.apply(g);
                CHECK(k.apply(once) == once);
            }
    }
    LocalField K({2, 1, 0}, 5, 2);
    Scattering S(K);
    Scalar v = S.kernel_K({K.trivial(), Scalar(1)}, {K.trivial(), Scalar(1)});
    CHECK(v == Scalar(3) + Scalar(2) * K.s());
    CHECK(std::abs(v.embed().real() - (3 + 2 * std::sqrt(2.0))) < 1e-12);
    LocalField K3({3, 1, 0}, 5, 2);
    Scattering S3(K3);
    auto chi = of_conductor(K3, 2).front();
    Scalar z = K3.root_of_unity(2, 9);
    CHECK(S3.kernel_K({chi, z}, {chi, z}) == Scalar(1));
    CHECK(S3.kernel_K({chi, z}, {K3.trivial(), z}) == Scalar());
}

TEST_CASE("semigroup: smeared operators, spectra and nilpotency") {
    LocalField K({2, 1, 0}, 5, 2);
    Scattering S(K);
    auto units = S.z_smear(MultFunction::sphere(0));
    for (const auto& [chi, m] : units) CHECK(m == ScalarMatrix::identity(m.size()));
    auto step = S.z_smear(MultFunction::sphere(1));
    REQUIRE(step.count(K.trivial()) == 1);
    CHECK(step.at(K.trivial()).at(0, 0) == K.sqrt_q_power(-1));

    LocalField K2({3, 1, 2}, 5, 3);
    Scattering S2(K2);
    for (unsigned e = 0; e <= 3; ++e)
        for (const auto& chi : of_conductor(K2, e)) {
            const InteractingBlock& b = S2.block(chi);
            auto cp = b.z_step().characteristic_polynomial();
            // Only the trivial block carries the eigenvalue 1/sqrt(q).
            Scalar at = Scalar();
            Scalar x = K2.sqrt_q_power(-1);
            Scalar xp = Scalar(1);
            for (const auto& c : cp) {
                at += c * xp;
                xp = xp * x;
            }
            CHECK(at.is_zero() == chi.is_trivial());
            if (!chi.is_trivial()) CHECK(b.z_step().power(static_cast<unsigned>(b.dimension())).is_zero());
        }
}

TEST_CASE("trace formula and Weil term: pinned values") {
    for (auto [p, d] : {std::pair{2u, 0u}, {3u, 0u}, {2u, 1u}, {3u, 2u}}) {
        LocalField K({p, 1, d}, 5, 3);
        Scattering S(K);
        MultFunction units = MultFunction::sphere(0);
        CHECK(S.trace_Z(units) == Scalar(static_cast<long>(d) + 1));
        CHECK(S.trace_formula_rhs(units) == Scalar(static_cast<long>(d) + 1));
        CHECK(S.weil_local_term(units) == Scalar(static_cast<long>(d)));
        CHECK(S.supertrace_Z(units) + units.at_one(K) == S.weil_local_term(units));
        for (unsigned e = 1; e <= 2; ++e) {
            auto chars = of_conductor(K, e);
            if (chars.empty()) continue;
            MultFunction f = MultFunction::character_on_units(K, chars.front());
            CHECK(S.trace_Z(f) == Scalar(static_cast<long>(d + e - 1)));
            CHECK(S.weil_local_term(f) == Scalar(static_cast<long>(d + e)));
            CHECK(S.supertrace_Z(f) + f.at_one(K) == S.weil_local_term(f));
        }
    }
    LocalField K({2, 1, 0}, 5, 2);
    Scattering S(K);
    MultFunction sphere = MultFunction::sphere(1);
    CHECK(S.trace_Z(sphere) == K.sqrt_q_power(-1));
    CHECK(S.weil_local_term(sphere) == -K.sqrt_q_power(-1));
}

TEST_CASE("property: trace formula and Weil identity on random functions, including |t| < 1") {
    for (auto [p, d] : {std::pair{2u, 0u}, {3u, 1u}, {5u, 2u}}) {
        LocalField K({p, 1, d}, 5, 2);
        Scattering S(K);
        RandomSource rng(70 + p);
        for (int t = 0; t < 15; ++t) {
            MultFunction f = rng.mult_function(K, static_cast<unsigned>(rng.uniform(0, 2)), -3, 3, 4);
            CHECK(S.trace_Z(f) == S.trace_formula_rhs(f));
            CHECK(S.supertrace_Z(f) + f.at_one(K) == S.weil_local_term(f));
            // Z(f) = Z(I f) for f supported in |t| < 1.
            MultFunction inner = f.split_at_unit_circle().second;
            CHECK(S.trace_Z(inner) == S.trace_Z(inner.inverted(K)));
        }
    }
}

TEST_CASE("time delay sums converge to <Tf|f>") {
    LocalField K({2, 1, 0}, 5, 2);
    Scattering S(K);
    CHECK(S.time_delay_partial_sum(MultFunction(0), 10).is_zero());
    MultFunction units = MultFunction::sphere(0);
    CHECK(S.time_delay_exact(units) == Scalar(1));
    double prev = 0;
    for (int J : {5, 10, 20, 40}) {
        double v = S.time_delay_partial_sum(units, J).embed().real();
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(std::abs(prev - 1) < 1e-8);
    LocalField K3({3, 1, 0}, 5, 2);
    Scattering S3(K3);
    auto chi = of_conductor(K3, 2).front();
    MultFunction f = MultFunction::character_on_units(K3, chi);
    CHECK(S3.time_delay_partial_sum(f, 3) == Scalar(1));
    CHECK(S3.time_delay_exact(f) == Scalar(1));
}

TEST_CASE("alpha maps the spectral incoming space into the exterior Hardy model") {
    LocalField K({3, 1, 0}, 5, 2);
    Scattering S(K);
    RandomSource rng(4);
    for (int t = 0; t < 10; ++t) {
        SpectralElement l = spectral_transform(K, rng.d_minus_function(K));
        for (const auto& [chi, r] : S.calculus().apply_multiplier(MultiplierKind::Alpha, l)) CHECK(in_exterior_hardy(r));
    }
}
