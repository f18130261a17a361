#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mlie/gf2.hpp"
#include "mlie/linalg.hpp"

#include <random>

using namespace mlie;

static BitVec random_bits(std::mt19937_64& rng, int n, int density = 2)
{
    BitVec v(n);
    for (int i = 0; i < n; ++i)
        if (rng() % std::uint64_t(density) == 0)
            v.set(i);
    return v;
}

TEST_CASE("bitvec basics")
{
    BitVec v(130);
    v.set(0);
    v.set(64);
    v.set(129);
    CHECK(v.popcount() == 3);
    CHECK(v.next(1) == 64);
    CHECK(v.next(65) == 129);
    CHECK(v.next(130) == -1);
    v.flip(64);
    CHECK(v.support() == std::vector<int>{0, 129});
}

TEST_CASE("rank-nullity and kernel correctness")
{
    std::mt19937_64 rng(7);
    for (int it = 0; it < 30; ++it) {
        int r = 5 + int(rng() % 80), c = 5 + int(rng() % 150);
        BitMatrix M(r, c);
        for (auto& row : M.rows)
            row = random_bits(rng, c, 3);
        auto ker = M.nullspace();
        CHECK(int(ker.size()) + M.rank() == c);
        for (auto& x : ker)
            CHECK(M.apply(x).is_zero());
        CHECK(M.transpose().rank() == M.rank());
    }
}

TEST_CASE("tracked elimination solves and records dependencies")
{
    std::mt19937_64 rng(11);
    int n = 70, m = 90;
    std::vector<BitVec> imgs;
    for (int i = 0; i < m; ++i)
        imgs.push_back(random_bits(rng, n));
    auto ker = kernel_of_images(imgs, n);
    for (auto& k : ker) {
        BitVec s(n);
        for (int i : k.support())
            s ^= imgs[std::size_t(i)];
        CHECK(s.is_zero());
    }
    BitEchelon e(n, m);
    for (int i = 0; i < m; ++i)
        e.insert(imgs[std::size_t(i)], i);
    CHECK(int(ker.size()) == m - e.rank());
    BitVec target = imgs[3];
    target ^= imgs[17];
    BitVec combo;
    REQUIRE(e.solve(target, combo));
    BitVec s(n);
    for (int i : combo.support())
        s ^= imgs[std::size_t(i)];
    CHECK(s == target);
}

TEST_CASE("generic echelon over GF(16)")
{
    Field F(4);
    std::mt19937_64 rng(3);
    Mat A(F, 6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            A.at(i, j) = Elt(rng() % 16);
    auto inv = A.inverse();
    if (inv)
        CHECK(A.mul(*inv) == Mat::identity(F, 6));
    Mat B(F, 4, 7);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 7; ++j)
            B.at(i, j) = Elt(rng() % 16);
    auto ns = B.nullspace();
    CHECK(int(ns.size()) + B.rank() == 7);
    for (auto& x : ns)
        CHECK(is_zero(B.apply(x)));
}
