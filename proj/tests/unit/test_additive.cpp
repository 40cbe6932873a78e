#include "doctest.h"

#include "oracles.hpp"
#include "pscat/bruhat.hpp"
#include "pscat/packets.hpp"
#include "pscat/random.hpp"

using namespace pscat;

namespace {

BruhatFunction ball(const LocalField& K, std::int64_t num, int k, int r, const Scalar& c = Scalar(1)) {
    BruhatFunction phi;
    phi.add_term(K, K.padic().make(num, k), r, c);
    return phi;
}

}  // namespace

TEST_CASE("Fourier transform of ball indicators") {
    for (std::uint64_t p : {2u, 3u}) {
        LocalField K({p, 1, 0}, 5, 2);
        BruhatFunction zp = ball(K, 0, 0, 0);
        CHECK(fourier(K, zp).equals(K, zp));
        for (int r = -2; r <= 2; ++r) {
            Rational vol = rational_pow(Rational(static_cast<long>(p)), -r);
            CHECK(fourier(K, ball(K, 0, 0, r)).equals(K, ball(K, 0, 0, -r, Scalar(vol))));
        }
    }
}

TEST_CASE("Fourier transform matches the direct character sum") {
    for (std::uint64_t p : {2u, 3u, 5u}) {
        LocalField K({p, 1, 0}, 5, 2);
        RandomSource rng(40 + p);
        for (int t = 0; t < 4; ++t) {
            BruhatFunction phi = rng.s0_function(K, 2);
            BruhatFunction F = fourier(K, phi);
            const auto& P = K.padic();
            for (std::int64_t x : {0, 1, 2, 7, 11})
                for (int k : {0, 1, 2}) {
                    QpNum pt = P.make(x, k);
                    CHECK(std::abs(F.eval(K, pt).embed() - oracle::fourier_value(K, phi, pt, 1, 3)) < 1e-9);
                }
        }
    }
}

TEST_CASE("property: Fourier inversion, F^2 = parity, Plancherel") {
    LocalField K({3, 1, 0}, 5, 2);
    RandomSource rng(77);
    for (int t = 0; t < 10; ++t) {
        BruhatFunction phi = rng.s0_function(K, 2);
        BruhatFunction psi = rng.d_minus_function(K);
        BruhatFunction F = fourier(K, phi);
        CHECK(fourier_inverse(K, F).equals(K, phi));
        CHECK(fourier(K, F).equals(K, parity(K, phi)));
        CHECK(inner_product(K, F, fourier(K, psi)) == inner_product(K, phi, psi));
        CHECK(integral(K, phi) == F.value_at_zero(K));
    }
}

TEST_CASE("serial and parallel grid transforms agree") {
    LocalField K({2, 1, 0}, 5, 3);
    RandomSource rng(5);
    for (int t = 0; t < 5; ++t) {
        BruhatFunction phi = rng.s0_function(K, 3);
        GridForm g = phi.to_grid(K);
        GridForm a = fourier_grid_serial(K, g);
        GridForm b = fourier_grid_parallel(K, g);
        CHECK(a.a == b.a);
        CHECK(a.b == b.b);
        CHECK(a.values == b.values);
    }
}

TEST_CASE("dilations, inversion and log|x|") {
    LocalField K({3, 1, 0}, 5, 2);
    const auto& P = K.padic();
    RandomSource rng(9);
    for (int t = 0; t < 6; ++t) {
        BruhatFunction phi = rng.s0_function(K, 2);
        // F U(t) = U(1/t) F for t = p^{-1} * 2.
        BruhatFunction lhs = fourier(K, dilate(K, 1, 2, phi));
        BruhatFunction rhs = dilate(K, -1, P.unit_inverse(2, 4), fourier(K, phi));
        CHECK(lhs.equals(K, rhs));
        CHECK(invert_variable(K, invert_variable(K, phi)).equals(K, phi));
        CHECK(from_mult(K, to_mult(K, phi)).equals(K, phi));
    }
    // log|x| on the sphere |x| = 3^2 is 2 log 3.
    BruhatFunction sphere = ball(K, 1, 2, -1) + ball(K, 2, 2, -1);
    CHECK(apply_A(K, sphere).equals(K, sphere.scaled(Scalar(2))));
    CHECK_THROWS(apply_A(K, ball(K, 0, 0, 0)));
}

TEST_CASE("wave packets: the grid matrix of F matches the Schwartz-Bruhat transform") {
    LocalField K({2, 1, 0}, 5, 2);
    const auto& P = K.padic();
    const int M = 1;
    BruteMatrix B = brute_matrix(K, {{OracleOp::Fourier}}, M, false);
    CHECK_FALSE(B.leaks);
    Rational pM(static_cast<long>(P.pow(M)));
    for (std::size_t j = 0; j < B.dim; ++j)
        for (std::size_t i = 0; i < B.dim; ++i) {
            BruhatFunction ei = ball(K, static_cast<std::int64_t>(i), M, M);
            BruhatFunction ej = ball(K, static_cast<std::int64_t>(j), M, M);
            CHECK(B.at(i, j) == inner_product(K, ei, fourier(K, ej)).scaled(pM));
        }
    BruteMatrix I = brute_matrix(K, {{OracleOp::Fourier}, {OracleOp::FourierInverse}}, 2, false);
    for (std::size_t i = 0; i < I.dim; ++i)
        for (std::size_t j = 0; j < I.dim; ++j) CHECK(I.at(i, j) == Scalar(i == j ? 1 : 0));
    CHECK(brute_trace(K, {{OracleOp::Fourier}, {OracleOp::FourierInverse}}, 2, true) == Scalar(16));
}
