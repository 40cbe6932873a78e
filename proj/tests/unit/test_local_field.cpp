#include "doctest.h"

#include "pscat/local_field.hpp"
#include "pscat/qp.hpp"

using namespace pscat;

TEST_CASE("p-adic numbers: canonical form, valuation, balls") {
    PadicOps P(3);
    CHECK(P.make(9, 2) == QpNum{1, 0});
    CHECK(P.make(6, 1) == QpNum{2, 0});
    CHECK(P.valuation(P.make(18, 0)) == 2);
    CHECK(P.valuation(P.make(2, 3)) == -3);
    CHECK(P.valuation(QpNum{0, 0}) == kInfiniteValuation);
    CHECK(P.add(P.make(1, 1), P.make(2, 1)) == QpNum{1, 0});
    CHECK(P.to_rational(P.from_rational(Rational(5, 27))) == Rational(5, 27));
    Ball zp = P.ball(QpNum{0, 0}, 0);
    Ball b = P.ball(P.make(4, 0), 1);  // 1 + 3 Z_3
    CHECK(P.is_subset(b, zp));
    CHECK_FALSE(P.is_subset(zp, b));
    CHECK(P.contains(b, P.make(7, 0)));
    CHECK_FALSE(P.contains(b, P.make(2, 0)));
    CHECK_FALSE(P.intersect(b, P.ball(P.make(2, 0), 1)).has_value());
    CHECK(P.intersect(b, zp) == b);
    CHECK(P.unit_inverse(2, 2) == 5);
}

TEST_CASE("p-adic arithmetic overflow is detected") {
    PadicOps P(5);
    CHECK_THROWS(P.pow(40));
}

TEST_CASE("unit characters: counts, orthogonality and multiplicativity") {
    for (std::uint64_t p : {2u, 3u, 5u}) {
        LocalField K({p, 1, 0}, 4, 3);
        for (unsigned e = 0; e <= 3; ++e) {
            auto chars = K.enumerate_characters(e);
            CHECK(static_cast<std::int64_t>(chars.size()) == K.phi(e));
            auto units = K.unit_residues(e);
            for (const auto& chi : chars) {
                Scalar sum;
                for (auto u : units) sum += K.char_eval(chi, u);
                CHECK(sum == (chi.is_trivial() ? Scalar(K.phi(e)) : Scalar()));
                CHECK(chi.e <= e);
                for (std::size_t i = 0; i + 1 < units.size() && i < 4; ++i) {
                    std::int64_t u = units[i], v = units[i + 1];
                    CHECK(K.char_eval(chi, u * v) == K.char_eval(chi, u) * K.char_eval(chi, v));
                }
                CHECK(K.char_eval(K.conj(chi), units.back()) == K.char_eval(chi, units.back()).conj());
            }
        }
    }
}

TEST_CASE("conductor is exact: a character of conductor e is nontrivial on 1 + p^{e-1}") {
    LocalField K({3, 1, 0}, 4, 3);
    for (const auto& chi : K.enumerate_characters(3)) {
        if (chi.e < 2) continue;
        std::int64_t step = K.padic().pow(static_cast<int>(chi.e) - 1);
        bool nontrivial = false;
        for (std::int64_t k = 1; k < 3; ++k) nontrivial = nontrivial || K.char_eval(chi, 1 + k * step) != Scalar(1);
        CHECK(nontrivial);
    }
}

TEST_CASE("additive character: lambda(x + y) = lambda(x) lambda(y), trivial on Z_p") {
    LocalField K({2, 1, 0}, 4, 2);
    const auto& P = K.padic();
    CHECK(K.additive_character(P.make(5, 0)) == Scalar(1));
    CHECK(K.additive_character(P.make(1, 1)) == Scalar(-1));
    QpNum x = P.make(3, 3), y = P.make(5, 2);
    CHECK(K.additive_character(P.add(x, y)) == K.additive_character(x) * K.additive_character(y));
}

TEST_CASE("abstract fields reject additive features") {
    LocalField K({3, 1, 2}, 4, 2);
    CHECK_FALSE(K.params().concrete());
    CHECK_THROWS_AS(K.require_concrete("test"), std::invalid_argument);
    CHECK(K.q() == 3);
    LocalField K2({2, 2, 0}, 4, 2);
    CHECK(K2.q() == 4);
}
