#include "doctest.h"

#include "pscat/connes.hpp"
#include "pscat/random.hpp"

using namespace pscat;

namespace {

std::vector<UnitCharacter> of_conductor(const LocalField& K, unsigned e) {
    std::vector<UnitCharacter> out;
    for (const auto& chi : K.enumerate_characters(e))
        if (chi.e == e) out.push_back(chi);
    return out;
}

}  // namespace

TEST_CASE("cutoff kernels: printed cases") {
    LocalField K({3, 1, 0}, 5, 3);
    Scattering S(K);
    ConnesTrace C(S);
    CHECK(C.q_kernel(0, of_conductor(K, 2).front()).is_zero());
    // Q_0 at delta = 0 is the projection onto omega^.
    SeparableKernel q0 = C.q_kernel(0, K.trivial());
    SeparableKernel expect(K.ctx());
    auto inv_v = RationalSpectral::poles(K.ctx(), 0, 1);
    expect.add(inv_v.scaled(Scalar(Rational(2, 3))), inv_v);
    CHECK(q0.equals(expect));
    CHECK(q0.equals(S.block(K.trivial()).kernel()));

    LocalField K2({3, 1, 2}, 5, 3);
    Scattering S2(K2);
    ConnesTrace C2(S2);
    SeparableKernel k = C2.q_kernel(0, K2.trivial());
    SeparableKernel e2(K2.ctx());
    auto iv = RationalSpectral::poles(K2.ctx(), 0, 1);
    e2.add(iv.shifted(2).scaled(Scalar(Rational(2, 9))), iv);
    CHECK(k.equals(e2));
    // A product of two projections that do not commute: not hermitian.
    CHECK_FALSE(k.is_hermitian());
    CHECK(C2.q_kernel(1, K2.trivial()).is_hermitian());
}

TEST_CASE("spectral cutoff traces: pinned values") {
    for (std::uint64_t p : {2u, 3u}) {
        LocalField K({p, 1, 0}, 5, 3);
        Scattering S(K);
        ConnesTrace C(S);
        for (int n = 0; n <= 3; ++n) {
            CHECK(C.trace_Qn_Uf(n, MultFunction::sphere(0)) == Scalar(2 * n + 1));
            CHECK(C.trace_Qn_Uf(n, MultFunction::sphere(1)) == K.sqrt_q_power(-1));
            CHECK(C.closed_form_trace(n, MultFunction::sphere(1)) == K.sqrt_q_power(-1));
        }
    }
    LocalField K({3, 1, 0}, 5, 3);
    Scattering S(K);
    ConnesTrace C(S);
    MultFunction f = MultFunction::character_on_units(K, of_conductor(K, 2).front());
    CHECK(C.trace_Qn_Uf(0, f).is_zero());
    CHECK(C.trace_Qn_Uf(1, f) == Scalar(1));  // 2n + 1 - (delta + e) with f(1) = 1
    CHECK(C.closed_form_trace(1, f) == Scalar(1));
    CHECK(C.brute_force_trace(0, MultFunction(0), 2).is_zero());
}

TEST_CASE("conductor cutoff") {
    LocalField K({3, 1, 0}, 5, 3);
    Scattering S(K);
    ConnesTrace C(S);
    MultFunction units = MultFunction::sphere(0);
    CHECK(C.conductor_cutoff(units, 0).equals(K, units));
    MultFunction ram = MultFunction::character_on_units(K, of_conductor(K, 2).front());
    MultFunction mixed = units.refined(K, 2) + ram;
    CHECK(C.conductor_cutoff(mixed, 1).equals(K, units.refined(K, 2)));
    CHECK(C.conductor_cutoff(mixed, 2).equals(K, mixed));
    MultFunction once = C.conductor_cutoff(mixed, 1);
    CHECK(C.conductor_cutoff(once, 1).equals(K, once));
}

TEST_CASE("grid oracle agrees with the spectral trace") {
    LocalField K({2, 1, 0}, 5, 3);
    Scattering S(K);
    ConnesTrace C(S);
    CHECK(C.brute_force_trace(1, MultFunction::sphere(0), 3) == Scalar(3));
    RandomSource rng(21);
    for (int t = 0; t < 3; ++t) {
        MultFunction f = rng.mult_function(K, static_cast<unsigned>(rng.uniform(0, 2)), -1, 1, 3);
        int n = rng.uniform(0, 1);
        CHECK(C.brute_force_trace(n, f, C.default_grid_level(n, f)) == C.trace_Qn_Uf(n, f));
    }
    CHECK_THROWS(C.brute_force_trace(1, MultFunction::sphere(0), 0));
}

TEST_CASE("sector oracle on an abstract field") {
    LocalField K({3, 1, 2}, 5, 3);
    Scattering S(K);
    ConnesTrace C(S);
    for (int n = 0; n <= 2; ++n) {
        CHECK(C.sector_trace(n, MultFunction::sphere(0)) == C.trace_Qn_Uf(n, MultFunction::sphere(0)));
        CHECK(C.sector_trace(n, MultFunction::sphere(-1)) == C.trace_Qn_Uf(n, MultFunction::sphere(-1)));
    }
    CHECK_THROWS(C.closed_form_trace(0, MultFunction::sphere(0)));
    MultFunction ram = MultFunction::character_on_units(K, of_conductor(K, 1).front());
    CHECK_THROWS(C.sector_trace(1, ram));
}

TEST_CASE("stabilization: trace minus (2n+1) f(1) is minus the Weil term for large n") {
    LocalField K({3, 1, 0}, 5, 2);
    Scattering S(K);
    ConnesTrace C(S);
    RandomSource rng(13);
    for (int t = 0; t < 6; ++t) {
        MultFunction f = rng.mult_function(K, 2, -2, 2, 4);
        for (int n = 2; n <= 4; ++n)
            CHECK(C.trace_Qn_Uf(n, f) - Scalar(2 * n + 1) * f.at_one(K) == -S.weil_local_term(f));
    }
}
