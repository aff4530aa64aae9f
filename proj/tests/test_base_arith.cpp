#include <gtest/gtest.h>

#include <random>

#include "treecochain/cyclo.hpp"
#include "treecochain/laurent.hpp"
#include "treecochain/poly.hpp"

using namespace tc;

namespace {

Poly P(const Field& F, const char* s) { return poly::parse(F, s); }

Poly random_poly(const Field& F, std::mt19937_64& rng, int maxdeg) {
    std::uniform_int_distribution<int> d(0, maxdeg), c(0, F.q() - 1);
    int n = d(rng);
    std::vector<int> v(n + 1);
    for (auto& x : v) x = c(rng);
    return Poly(v);
}

LaurentPoly random_laurent(const Field& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> lo(-4, 3), len(0, 8), c(0, F.q() - 1);
    std::vector<int> v(len(rng));
    for (auto& x : v) x = c(rng);
    return LaurentPoly(lo(rng), v);
}

}  // namespace

TEST(Field, ExtensionGroupOrder) {
    auto F = Field::extension(2, {1, 1, 1});
    EXPECT_EQ(F->q(), 4);
    for (int a = 1; a < 4; ++a) EXPECT_EQ(F->pow(a, 3), 1);
    EXPECT_THROW(Field::extension(2, {1, 0, 1}), std::invalid_argument);
    EXPECT_THROW(Field::prime(4), std::invalid_argument);
    EXPECT_EQ(F->parse(F->str(3)), 3);
}

TEST(Poly, XgcdExamples) {
    auto F3 = Field::prime(3);
    auto r = poly::xgcd(*F3, P(*F3, "T"), P(*F3, "T+1"));
    EXPECT_TRUE(r.g.is_one());
    EXPECT_EQ(poly::add(*F3, poly::mul(*F3, r.s, P(*F3, "T")), poly::mul(*F3, r.t, P(*F3, "T+1"))), poly::one());

    auto r2 = poly::xgcd(*F3, P(*F3, "T^2"), P(*F3, "T^2"));
    EXPECT_EQ(r2.g, P(*F3, "T^2"));

    auto F2 = Field::prime(2);
    auto r3 = poly::xgcd(*F2, P(*F2, "T^2+1"), P(*F2, "T"));
    EXPECT_TRUE(r3.g.is_one());
    EXPECT_EQ(r3.s, poly::one());
    EXPECT_EQ(r3.t, P(*F2, "T"));

    EXPECT_THROW(poly::xgcd(*F3, Poly(), Poly()), std::domain_error);
}

TEST(Poly, CrtExamples) {
    auto F = Field::prime(3);
    Poly r = poly::crt(*F, {{P(*F, "T"), poly::one()}, {P(*F, "T+1"), Poly()}});
    EXPECT_EQ(r, P(*F, "T+1"));
    EXPECT_EQ(poly::eval(*F, r, 0), 1);
    EXPECT_EQ(poly::eval(*F, r, 2), 0);
    EXPECT_EQ(poly::crt(*F, {{P(*F, "T"), poly::constant(2)}}), poly::constant(2));
    EXPECT_EQ(poly::crt(*F, {{P(*F, "T"), Poly()}, {P(*F, "T+1"), Poly()}}), Poly());
    EXPECT_THROW(poly::crt(*F, {{P(*F, "T"), Poly()}, {P(*F, "T^2"), Poly()}}), std::domain_error);
}

TEST(Poly, Irreducible) {
    auto F2 = Field::prime(2);
    auto F3 = Field::prime(3);
    EXPECT_TRUE(poly::is_irreducible(*F2, P(*F2, "T^2+T+1")));
    EXPECT_FALSE(poly::is_irreducible(*F2, P(*F2, "T^2")));
    EXPECT_FALSE(poly::is_irreducible(*F3, P(*F3, "T^2")));
    EXPECT_TRUE(poly::is_irreducible(*F3, P(*F3, "T^2+1")));
    EXPECT_THROW(poly::is_irreducible(*F3, poly::constant(2)), std::invalid_argument);
    // brute force count of monic irreducible quadratics over F_3: (9-3)/2
    int count = 0;
    for (const auto& m : poly::monics_of_degree(*F3, 2)) count += poly::is_irreducible(*F3, m);
    EXPECT_EQ(count, 3);
}

TEST(Poly, Sigma) {
    auto F2 = Field::prime(2);
    auto F3 = Field::prime(3);
    EXPECT_EQ(poly::sigma(*F3, poly::one()), 1);
    EXPECT_EQ(poly::sigma(*F3, P(*F3, "T")), 4);
    EXPECT_EQ(poly::sigma(*F2, P(*F2, "T^2+T+1")), 5);
    EXPECT_THROW(poly::sigma(*F3, Poly()), std::domain_error);

    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 100) {
        Poly a = poly::monic(*F3, random_poly(*F3, rng, 4)), b = poly::monic(*F3, random_poly(*F3, rng, 4));
        if (a.is_zero() || b.is_zero() || !poly::gcd(*F3, a, b).is_one()) continue;
        EXPECT_EQ(poly::sigma(*F3, poly::mul(*F3, a, b)), poly::sigma(*F3, a) * poly::sigma(*F3, b));
        ++done;
    }
}

TEST(Poly, SigmaTableMatchesDirect) {
    for (int q : {2, 3, 4}) {
        auto F = q == 4 ? Field::extension(2, {1, 1, 1}) : Field::prime(q);
        MonicIndex idx(q, 4);
        auto tab = sigma_table(*F, idx);
        for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(tab[i], poly::sigma(*F, idx.poly(i)));
    }
}

TEST(Poly, TextRoundTrip) {
    auto F = Field::prime(3);
    EXPECT_EQ(poly::str(*F, P(*F, "T^3+2*T+1")), "T^3+2*T+1");
    EXPECT_THROW(P(*F, "T^3+3*T"), std::invalid_argument);
    EXPECT_THROW(P(*F, "1+T"), std::invalid_argument);
    auto F4 = Field::extension(2, {1, 1, 1});
    EXPECT_EQ(poly::str(*F4, P(*F4, "g*T+1")), "g*T+1");
}

TEST(Laurent, ExpansionResum) {
    auto F = Field::prime(3);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        Poly a = random_poly(*F, rng, 5), b = random_poly(*F, rng, 5);
        if (b.is_zero()) continue;
        RatFunc x(*F, a, b);
        int below = 6;
        LaurentPoly w = laurent::from_ratfunc(*F, x, below);
        RatFunc rem = rf::sub(*F, x, laurent::to_ratfunc(*F, w));
        EXPECT_GE(rf::ord_inf(rem), below);
    }
    EXPECT_EQ(rf::ord_inf(RatFunc(*F, P(*F, "T"), P(*F, "T^3+1"))), 2);
}

TEST(Eta, Examples) {
    auto F3 = Field::prime(3);
    auto R = ScalarRing::exact_ring(3);
    EXPECT_EQ(eta(*F3, R, laurent::from_poly(P(*F3, "T")), 1), CycloRat::from_int(R, 1));
    EXPECT_EQ(eta(*F3, R, LaurentPoly(1, {1})), CycloRat::zeta_pow(R, 1));
    EXPECT_EQ(eta(*F3, R, LaurentPoly(1, {2})), CycloRat::zeta_pow(R, 2));
}

TEST(Eta, Additive) {
    for (int q : {2, 3, 4, 5}) {
        auto F = q == 4 ? Field::extension(2, {1, 1, 1}) : Field::prime(q);
        auto R = ScalarRing::exact_ring(F->p());
        std::mt19937_64 rng(q);
        for (int it = 0; it < 1000; ++it) {
            auto x = random_laurent(*F, rng), y = random_laurent(*F, rng);
            EXPECT_EQ(eta(*F, R, laurent::add(*F, x, y)), eta(*F, R, x) * eta(*F, R, y));
        }
        for (int it = 0; it < 100; ++it)
            EXPECT_EQ(eta(*F, R, laurent::from_poly(random_poly(*F, rng, 6))), CycloRat::from_int(R, 1));
    }
}

TEST(Cyclo, ZetaSumVanishes) {
    for (int p : {2, 3, 5, 7}) {
        for (auto R : {ScalarRing::exact_ring(p), ScalarRing::mod_ring(p, p == 2 ? 81 : 16)}) {
            CycloRat s(R);
            for (int t = 0; t < p; ++t) s += CycloRat::zeta_pow(R, t);
            EXPECT_TRUE(s.is_zero());
        }
    }
}

TEST(Cyclo, RingAxioms) {
    std::mt19937_64 rng(3);
    for (int p : {3, 5}) {
        for (auto R : {ScalarRing::exact_ring(p), ScalarRing::mod_ring(p, 64)}) {
            std::uniform_int_distribution<int> c(-20, 20), v(0, 3);
            auto rnd = [&] {
                std::vector<i128> co(p - 1);
                for (auto& x : co) x = c(rng);
                return CycloRat::from_coords(R, co, R.exact() ? v(rng) : 0);
            };
            for (int it = 0; it < 200; ++it) {
                auto a = rnd(), b = rnd(), d = rnd();
                EXPECT_EQ((a * b) * d, a * (b * d));
                EXPECT_EQ(a * (b + d), a * b + a * d);
                EXPECT_EQ(a + b - b, a);
            }
        }
    }
}

TEST(Cyclo, RationalsAndReduction) {
    auto R = ScalarRing::exact_ring(3);
    auto x = CycloRat::rational(R, -8, 1);
    EXPECT_EQ(x.str(), "-8/3");
    EXPECT_EQ(x.mul_int(3), CycloRat::from_int(R, -8));
    auto m = x.reduce_mod(4);
    EXPECT_EQ(m.mul_int(3), CycloRat::from_int(ScalarRing::mod_ring(3, 4), 0));
    EXPECT_THROW(CycloRat::from_int(R, 5).div_exact(2), std::domain_error);
    EXPECT_THROW(ScalarRing::mod_ring(3, 9), std::invalid_argument);
}
