#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mlie/divpow.hpp"

#include <random>

using namespace mlie;

namespace {

using u128 = unsigned __int128;

/// Exact binomials by Pascal's rule, large enough for n < 128.
u128 binom_exact(int n, int k)
{
    static std::vector<std::vector<u128>> T;
    if (T.empty()) {
        T.assign(128, std::vector<u128>(128, 0));
        for (int a = 0; a < 128; ++a) {
            T[std::size_t(a)][0] = 1;
            for (int b = 1; b <= a; ++b)
                T[std::size_t(a)][std::size_t(b)] = T[std::size_t(a - 1)][std::size_t(b - 1)] + (b <= a - 1 ? T[std::size_t(a - 1)][std::size_t(b)] : 0);
        }
    }
    return T[std::size_t(n)][std::size_t(k)];
}

DPoly random_poly(const Field& F, const ShapePtr& S, std::mt19937_64& rng, int terms)
{
    DPoly f(F, S);
    for (int i = 0; i < terms; ++i)
        f.add_term(Mono(rng() % S->dim()), Elt(rng() % F.order()));
    return f;
}

}

TEST_CASE("Lucas rule against exact binomials")
{
    auto S = std::make_shared<Shape>(std::vector<int>{6}, std::vector<std::string>{"x"});
    Field F;
    for (int r = 0; r < 64; ++r)
        for (int s = 0; s < 64; ++s) {
            DPoly p = DPoly::mono(F, S, Mono(r)) * DPoly::mono(F, S, Mono(s));
            bool odd = r + s < 128 && (binom_exact(r + s, r) & 1);
            if (r + s > 63)
                odd = false;
            CHECK(p.coeff(Mono(r + s <= 63 ? r + s : 0)) == Elt(odd ? 1 : 0));
            CHECK(int(p.terms().size()) == (odd ? 1 : 0));
        }
}

TEST_CASE("monomial multiplication examples")
{
    Field F;
    auto S = std::make_shared<Shape>(std::vector<int>{3}, std::vector<std::string>{"x"});
    auto x = [&](int r) { return DPoly::mono(F, S, Mono(r)); };
    CHECK(x(1) * x(2) == x(3));
    CHECK((x(1) * x(1)).is_zero());
    CHECK(x(3) * x(4) == x(7));
    auto T = std::make_shared<Shape>(std::vector<int>{2});
    CHECK_THROWS_AS(x(1) * DPoly::mono(F, T, 1), DivPowError);
}

TEST_CASE("shape basis order and text form")
{
    Shape S({2, 2}, {"p", "q"});
    auto B = S.basis();
    REQUIRE(B.size() == 16);
    std::vector<std::string> first;
    for (int i = 0; i < 6; ++i)
        first.push_back(S.format(B[std::size_t(i)]));
    CHECK(first == std::vector<std::string>{"1", "p", "q", "p^(2)", "p*q", "q^(2)"});
    for (Mono m : B)
        CHECK(S.parse(S.format(m)) == m);
    CHECK(S.parse("p^(3) q^(2)") == S.pack({3, 2}));
    CHECK_THROWS_AS(S.parse("p^(9)"), DivPowError);
    CHECK_THROWS_AS(S.parse("r"), DivPowError);
}

TEST_CASE("derivatives and scaling maps")
{
    Field F(2);
    Elt t = F.gen();
    auto S = std::make_shared<Shape>(std::vector<int>{3, 2});
    auto x = [&](int a, int b) { return DPoly::mono(F, S, S->pack({a, b})); };
    CHECK(x(3, 0).partial(0) == x(2, 0));
    CHECK(x(0, 0).partial(0).is_zero());
    CHECK(x(5, 0).f_alpha(t) == x(5, 0).scaled(F.sqr(t)));
    CHECK(x(1, 0).f_alpha(t) == x(1, 0));
    CHECK((x(2, 0) * x(3, 0)).f_alpha(t) == x(2, 0).f_alpha(t) * x(3, 0).f_alpha(t));
    CHECK(x(2, 0).d_alpha(0, t) == x(1, 0).scaled(t));
    CHECK(x(3, 0).d_alpha(0, t) == x(2, 0));
    CHECK(x(2, 0).d_alpha(0, 0).is_zero());
}

TEST_CASE("divided power identities, randomized")
{
    Field F(2);
    auto S = std::make_shared<Shape>(std::vector<int>{2, 3, 1});
    std::mt19937_64 rng(5);
    for (int it = 0; it < 100; ++it) {
        DPoly f = random_poly(F, S, rng, 6), g = random_poly(F, S, rng, 6);
        DPoly sq = f * f;
        for (auto& [m, c] : sq.terms())
            CHECK(m == 0);
        for (int i = 0; i < 3; ++i)
            CHECK((f * g).partial(i) == f.partial(i) * g + f * g.partial(i));
        CHECK(f.partial(0).partial(1) == f.partial(1).partial(0));
        Elt a = Elt(1 + rng() % 3), b = Elt(1 + rng() % 3);
        CHECK(f.f_alpha(a).f_alpha(b) == f.f_alpha(F.mul(a, b)));
        CHECK(f.f_alpha(1) == f);
        for (int i = 0; i < 3; ++i)
            CHECK(f.d_alpha(i, a) == f.f_alpha(a).partial(i).f_alpha(F.inv(a)));
    }
}

TEST_CASE("squares of functions are constants, exhaustive for small shapes")
{
    Field F;
    auto S = std::make_shared<Shape>(std::vector<int>{2, 1});
    for (std::uint64_t mask = 0; mask < (1u << S->dim()); ++mask) {
        DPoly f(F, S);
        for (Mono m = 0; m < S->dim(); ++m)
            if (mask >> m & 1)
                f.add_term(m, 1);
        DPoly sq = f * f;
        CHECK((sq.is_zero() || (sq.terms().size() == 1 && sq.terms().begin()->first == 0)));
    }
}

TEST_CASE("reindexing")
{
    Field F(2);
    auto S = std::make_shared<Shape>(std::vector<int>{3});
    Reindex R(S);
    CHECK(R.target->N() == std::vector<int>{1, 2});
    CHECK(R.map(Mono(5)) == R.target->pack({1, 2}));
    CHECK(R.map(Mono(0)) == 0);

    auto S2 = std::make_shared<Shape>(std::vector<int>{2, 2});
    Reindex R2(S2);
    std::mt19937_64 rng(9);
    for (int it = 0; it < 100; ++it) {
        DPoly f = random_poly(F, S2, rng, 5), g = random_poly(F, S2, rng, 5);
        CHECK(R2.map(f * g) == R2.map(f) * R2.map(g));
        for (int i = 0; i < 2; ++i)
            CHECK(R2.map(f.d_alpha(i, 0)) == R2.map(f).partial(i));
    }
}
