#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mlie/field.hpp"

#include <random>

using namespace mlie;

TEST_CASE("field construction")
{
    Field f4(2, 0x7);
    CHECK(f4.order() == 4);
    CHECK_THROWS_AS(Field(2, 0x5), FieldError);
    Field f2 = Field::gf2();
    CHECK(f2.add(1, 1) == 0);
    CHECK(Field::parse("gf4") == f4);
    CHECK(Field::parse("gf2k:3").degree() == 3);
    CHECK_THROWS(f4.inv(0));
}

TEST_CASE("default moduli are irreducible")
{
    for (int k = 1; k <= 16; ++k)
        CHECK(is_irreducible(default_modulus(k)));
}

TEST_CASE("square roots")
{
    Field f4(2);
    Elt t = f4.gen();
    CHECK(f4.sqrt(1) == 1);
    CHECK(f4.sqrt(0) == 0);
    CHECK(f4.sqrt(t) == f4.sqr(t));
    for (Elt a = 0; a < 4; ++a)
        CHECK(f4.sqr(f4.sqrt(a)) == a);
}

TEST_CASE("inverse and frobenius exhaustive for k <= 8")
{
    for (int k = 1; k <= 8; ++k) {
        Field F(k);
        std::vector<char> seen(F.order(), 0);
        for (Elt a = 0; a < F.order(); ++a) {
            if (a)
                CHECK(F.mul(a, F.inv(a)) == 1);
            Elt s = F.sqr(a);
            CHECK(!seen[s]);
            seen[s] = 1;
            CHECK(F.sqrt(s) == a);
        }
    }
}

TEST_CASE("multiplication against reference clmul")
{
    std::mt19937_64 rng(0);
    for (int k : {3, 5, 11, 16}) {
        Field F(k);
        for (int it = 0; it < 200; ++it) {
            Elt a = Elt(rng() % F.order()), b = Elt(rng() % F.order()), c = Elt(rng() % F.order());
            CHECK(F.mul(a, b) == F.mul(b, a));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        }
    }
}

TEST_CASE("polynomial evaluation")
{
    Field f4(2);
    Elt t = f4.gen();
    Poly h = Poly::monomial(1);
    CHECK((h * h + h).eval(f4, 1) == 0);
    CHECK(Poly::constant(true).eval(f4, t) == 1);
    CHECK(h.eval(f4, t) == t);
    std::mt19937_64 rng(1);
    for (int it = 0; it < 100; ++it) {
        std::vector<int> a(6), b(4);
        for (auto& x : a)
            x = int(rng() & 1);
        for (auto& x : b)
            x = int(rng() & 1);
        Poly p = Poly::from_coeffs(a), q = Poly::from_coeffs(b);
        Elt r = Elt(rng() % 4);
        CHECK((p + q).eval(f4, r) == f4.add(p.eval(f4, r), q.eval(f4, r)));
        CHECK((p * q).eval(f4, r) == f4.mul(p.eval(f4, r), q.eval(f4, r)));
    }
    CHECK(Poly::parse("[0,1,1]") == h * h + h);
    CHECK(Poly::parse((h * h + h).format()) == h * h + h);
}
