#include "doctest.h"

#include "oracles.hpp"
#include "pscat/cyclotomic.hpp"
#include "pscat/local_field.hpp"
#include "pscat/random.hpp"
#include "pscat/scalar.hpp"

#include <cmath>

using namespace pscat;

TEST_CASE("rationals parse and print") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK(to_string(parse_rational("-2/4")) == "-1/2");
    CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("cyclotomic roots multiply like exponents") {
    for (std::uint64_t n : {8ull, 12ull, 36ull, 72ull, 100ull}) {
        CycloField F(n);
        for (std::int64_t a = 0; a < static_cast<std::int64_t>(n); a += 5)
            for (std::int64_t b = 1; b < static_cast<std::int64_t>(n); b += 7)
                CHECK(F.mul(F.root(a), F.root(b)) == F.root(a + b));
        CHECK(F.root(static_cast<std::int64_t>(n)) == CycloNumber(Rational(1)));
    }
}

TEST_CASE("cyclotomic sums of all roots vanish and embeddings match exp") {
    CycloField F(36);
    CycloNumber sum;
    for (std::int64_t a = 0; a < 36; ++a) sum = sum + F.root(a);
    CHECK(sum.is_zero());
    for (std::int64_t a = 0; a < 36; ++a) {
        auto z = F.embed(F.root(a));
        CHECK(std::abs(z - oracle::zeta(static_cast<double>(a), 36)) < 1e-12);
    }
}

TEST_CASE("cyclotomic conjugation, automorphisms and inverses") {
    CycloField F(72);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 30; ++t) {
        CycloNumber x;
        for (int k = 0; k < 4; ++k)
        {
            Rational c(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3);
            c.canonicalize();
            x = x + F.root(static_cast<std::int64_t>(rng() % 72)).scaled(c);
        }
        if (x.is_zero()) continue;
        auto inv = F.inverse(x);
        REQUIRE(inv.has_value());
        CHECK(F.mul(x, *inv) == CycloNumber(Rational(1)));
        CHECK(std::abs(F.embed(F.conj(x)) - std::conj(F.embed(x))) < 1e-9);
        // zeta -> zeta^5 is a field automorphism.
        CycloNumber y = F.root(static_cast<std::int64_t>(rng() % 72));
        CHECK(F.automorphism(F.mul(x, y), 5) == F.mul(F.automorphism(x, 5), F.automorphism(y, 5)));
    }
}

TEST_CASE("square roots in the scalar tower") {
    for (auto [p, d] : {std::pair{2u, 0u}, {3u, 0u}, {2u, 1u}, {3u, 2u}, {5u, 1u}}) {
        LocalField K({p, 1, d}, 4, 2);
        Scalar s = K.s();
        CHECK(s * s == Scalar(static_cast<long>(p)));
        Scalar a = K.a();
        Rational q(static_cast<long>(p));
        Scalar expected = K.sqrt_q_power(-static_cast<long>(d)) * Scalar(1 - 1 / q);
        CHECK(a * a == expected);
        CHECK(std::abs(a.embed().real() - std::sqrt(std::pow(static_cast<double>(p), -static_cast<double>(d) / 2.0) * (1 - 1.0 / p))) <
              1e-12);
        CHECK(K.sqrt_q_power(3) * K.sqrt_q_power(-3) == Scalar(1));
    }
}

TEST_CASE("property: scalar field operations agree with the embedding") {
    LocalField K({3, 1, 1}, 4, 2);
    RandomSource rng(2024);
    for (int t = 0; t < 40; ++t) {
        Scalar x = rng.scalar(K) + rng.scalar(K) * K.s() + rng.scalar(K) * K.a() + K.root_of_unity(rng.uniform(0, 8), 9);
        Scalar y = rng.scalar(K) * K.a() * K.s() + K.root_of_unity(1, 4);
        CHECK(std::abs((x * y).embed() - x.embed() * y.embed()) < 1e-9);
        CHECK(std::abs((x + y).embed() - (x.embed() + y.embed())) < 1e-9);
        CHECK(std::abs(x.conj().embed() - std::conj(x.embed())) < 1e-9);
        if (!x.is_zero()) {
            auto inv = x.try_invert();
            REQUIRE(inv.has_value());
            CHECK(x * *inv == Scalar(1));
        }
        CHECK((x * y).conj() == x.conj() * y.conj());
    }
}

TEST_CASE("division by zero is reported") {
    LocalField K({2, 1, 0}, 4, 2);
    CHECK_THROWS_AS(Scalar(1).divided(Scalar()), std::domain_error);
}

TEST_CASE("values are compared, not coordinates: sqrt(p) and a inside Q(zeta_N)") {
    // The quadratic Gauss sum of p = 3 is i sqrt(3).
    LocalField K3({3, 1, 0}, 4, 2);
    Scalar g = K3.root_of_unity(1, 3) - K3.root_of_unity(2, 3);
    CHECK(g == K3.root_of_unity(1, 4) * K3.s());
    CHECK((g - K3.root_of_unity(1, 4) * K3.s()).is_zero());
    // q = 5, delta = 0: a = sqrt(4/5) = 2 / sqrt(5).
    LocalField K5({5, 1, 0}, 4, 2);
    Scalar two_over_s = K5.sqrt_q_power(-1).scaled(Rational(2));
    CHECK(K5.a() == two_over_s);
    CHECK(K5.a() != -two_over_s);
    CHECK((K5.a() - two_over_s).is_zero());
    CHECK_FALSE((K5.a() + two_over_s).is_zero());
    CHECK((K5.a() + two_over_s).divided(K5.a()) == Scalar(2));
    // q = 2, delta = 2: a = 1/2 is rational.
    LocalField K2({2, 1, 2}, 4, 2);
    CHECK(K2.a() == Scalar(Rational(1, 2)));
    CHECK(Scalar(1).divided(K2.a()) == Scalar(2));
}
