#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mlie/superize.hpp"

#include <random>

using namespace mlie;

TEST_CASE("restricted closures")
{
    ClosureAlgebra c = restricted_closure(KapSpec{KapFamily::K2, 4, 0});
    CHECK(c.algebra.dim() == 19);
    std::string why;
    CHECK_MESSAGE(check_restricted(c, &why), why);

    // e_u^[2] evaluated on v is B(u, v)
    int n = c.J.B.n;
    for (int x = 0; x < c.base_dim; ++x) {
        std::uint64_t u = c.J.gamma[std::size_t(x)];
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            int val = 0;
            for (int i = 0; i < n; ++i)
                if ((v >> i) & 1)
                    val ^= int(c.squares[std::size_t(x)][std::size_t(c.functional_index(i))]);
            CHECK(val == c.J.B(u, v));
        }
    }

    for (int m = 1; m <= 3; ++m)
        for (int A = 0; A <= 1; ++A) {
            if (m == 1 && A == 0) {
                CHECK_THROWS_AS(restricted_closure(KapSpec{KapFamily::K4A, 2, 0}), AlgebraError);
                continue;
            }
            KapSpec s{KapFamily::K4A, 2 * m, A};
            ClosureAlgebra k = restricted_closure(s);
            CHECK(k.algebra.dim() - build_kaplansky(s).dim() == 2 * m);
            CHECK(check_restricted(k));
        }
    CHECK_THROWS_AS(restricted_closure(KapSpec{KapFamily::K1, 4, 0}), AlgebraError);
    CHECK_THROWS_AS(restricted_closure(kaplansky_jsystem(KapSpec{KapFamily::K1, 4, 0})), AlgebraError);
}

TEST_CASE("all seven families pass the super axioms")
{
    for (int m = 1; m <= 3; ++m) {
        auto specs = superization_families(m);
        CHECK(specs.size() == (m == 1 ? 4u : 7u));
        for (const auto& s : specs) {
            SuperAlgebra S = build_superization(s);
            CAPTURE(S.name);
            SuperCheck r = check_super(S);
            CHECK(r.ok);
            CHECK(r.parity_rules);
            CHECK(r.jacobi);
            CHECK(r.squaring);
            // the even part is a subalgebra containing V*
            CHECK(S.dim_even() >= 2 * m);
        }
    }
}

TEST_CASE("non-linear superization of Kap2(4)")
{
    SuperAlgebra S = build_superization({SuperKind::S2, 2, 0, 0, 1});
    CHECK(S.dim_even() == 6 + 4);
    CHECK(S.dim_odd() == 15 - 6);
    for (int A = 0; A <= 1; ++A)
        for (int m = 1; m <= 3; ++m) {
            // in dimension 2 distinct nonzero vectors always pair to 1
            auto w = nonlinearity_witness(QuadraticForm::standard(m, A));
            CHECK(w.has_value() == (m >= 2));
        }
    ClosureAlgebra k2 = restricted_closure(KapSpec{KapFamily::K2, 4, 0});
    QuadraticForm bad = QuadraticForm::standard(2, 0);
    bad.B = BilinearForm::I(4);
    CHECK_THROWS_AS(superize_nonlinear(k2, bad), AlgebraError);
    CHECK_THROWS_AS(superize_linear(k2, 0), AlgebraError);
}

TEST_CASE("squaring on odd vectors over GF(4)")
{
    Field F4 = Field::parse("gf4");
    std::mt19937_64 rng(1);
    for (const auto& s : superization_families(2)) {
        SuperAlgebra S = build_superization(s, F4);
        CAPTURE(S.name);
        const Algebra& g = S.algebra;
        for (int rep = 0; rep < 20; ++rep) {
            Vec x = zero_vec(g.dim());
            for (int i = 0; i < g.dim(); ++i)
                if (S.parity[std::size_t(i)])
                    x[std::size_t(i)] = Elt(rng() % 4);
            Elt a = Elt(rng() % 4);
            Vec ax = x;
            for (auto& e : ax)
                e = F4.mul(a, e);
            Vec sq = S.square(x);
            Vec lhs = S.square(ax), rhs = zero_vec(g.dim());
            axpy(F4, rhs, F4.sqr(a), sq);
            CHECK(lhs == rhs);
            for (int y = 0; y < g.dim(); ++y)
                CHECK(g.bracket(sq, g.unit(y)) == g.bracket(x, g.bracket(x, g.unit(y))));
        }
    }
}

TEST_CASE("equivalence of linear superizations")
{
    for (int m = 1; m <= 2; ++m) {
        int n = 2 * m;
        std::uint64_t N = std::uint64_t{1} << n;
        ClosureAlgebra k2 = restricted_closure(KapSpec{KapFamily::K2, n, 0});
        for (std::uint64_t v = 1; v < N; ++v)
            for (std::uint64_t w = 1; w < N; ++w) {
                SuperEquivalence e = superization_equivalence(k2, std::nullopt, v, w);
                CHECK(e.found);
            }
        for (int A = 0; A <= 1; ++A) {
            if (m == 1 && A == 0)
                continue;
            ClosureAlgebra k4 = restricted_closure(KapSpec{KapFamily::K4A, n, A});
            QuadraticForm Q = QuadraticForm::standard(m, A);
            for (std::uint64_t v = 1; v < N; ++v)
                for (std::uint64_t w = 1; w < N; ++w) {
                    SuperEquivalence e = superization_equivalence(k4, Q, v, w);
                    CHECK(e.exhaustive);
                    CHECK(e.found == (Q(v) == Q(w)));
                }
        }
    }
    // the induced map really is a super-isomorphism
    ClosureAlgebra k2 = restricted_closure(KapSpec{KapFamily::K2, 4, 0});
    SuperEquivalence e = superization_equivalence(k2, std::nullopt, 0b0001, 0b0010);
    REQUIRE(e.found);
    CHECK(is_super_isomorphism(superize_linear(k2, 0b0001), superize_linear(k2, 0b0010), e.map));
}

TEST_CASE("Q + Q' is linear")
{
    for (int m = 1; m <= 2; ++m)
        for (int A = 0; A <= 1; ++A) {
            QuadraticForm Q = QuadraticForm::standard(m, A);
            for (std::uint64_t d = 0; d < (std::uint64_t{1} << (2 * m)); ++d) {
                QuadraticForm Q2 = Q;
                Q2.diag = d;
                NonlinearReduction r = nonlinear_reduction_check(m, Q, Q2);
                CHECK(r.additive);
                CHECK(r.subalgebra);
                CHECK(r.parities_match);
                CHECK(r.trivial == (d == Q.diag));
            }
        }
    NonlinearReduction r = nonlinear_reduction_check(2, QuadraticForm::standard(2, 0), QuadraticForm::standard(2, 1));
    CHECK(r.v == 0b0101);
    QuadraticForm other = QuadraticForm::standard(2, 0);
    other.B = BilinearForm::I(4);
    CHECK_THROWS_AS(nonlinear_reduction_check(2, QuadraticForm::standard(2, 0), other), AlgebraError);
}

TEST_CASE("superalgebra JSON carries parity and squaring")
{
    SuperAlgebra S = build_superization({SuperKind::S2, 2, 0, 0, 1});
    auto j = S.to_json();
    CHECK(j["parity"].size() == std::size_t(S.algebra.dim()));
    CHECK(j["squaring"].size() == std::size_t(S.dim_odd()));
    CHECK(j.dump() == build_superization({SuperKind::S2, 2, 0, 0, 1}).to_json().dump());
}
