#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mlie/constructions.hpp"
#include "mlie/liealg.hpp"

#include <map>

using namespace mlie;

namespace {

Vec bracket_of(const Algebra& g, const std::string& a, const std::string& b)
{
    int i = g.index_of(a), j = g.index_of(b);
    REQUIRE(i >= 0);
    REQUIRE(j >= 0);
    return g.bracket_vec(i, j);
}

Vec unit_of(const Algebra& g, const std::string& a)
{
    int i = g.index_of(a);
    REQUIRE_MESSAGE(i >= 0, a);
    return g.unit(i);
}

std::uint64_t pow2(int e)
{
    return std::uint64_t{1} << e;
}

}

TEST_CASE("Poisson algebra")
{
    Algebra po = build_poisson(BilinearForm::Pi(2), {1, 1});
    CHECK(po.dim() == 4);
    CHECK(validate(po).ok);
    CHECK(bracket_of(po, "p", "q") == unit_of(po, "1"));
    Algebra po22 = build_poisson(BilinearForm::Pi(2), {2, 2});
    CHECK(bracket_of(po22, "p^(2)", "q") == unit_of(po22, "p"));
    for (int i = 0; i < po22.dim(); ++i)
        CHECK(po22.bracket(po22.index_of("1"), i).empty());
    CHECK(validate(po22).ok);
    CHECK_THROWS_AS(build_poisson(BilinearForm::I(2), {1, 1}), AlgebraError);
}

TEST_CASE("Hamiltonian algebras")
{
    Algebra h = build_hamiltonian(BilinearForm::Pi(2), {2, 2});
    CHECK(h.dim() == 15);
    Algebra hd = build_hamiltonian(BilinearForm::Pi(2), {2, 2}, Variant::derived);
    CHECK(hd.dim() == 14);
    CHECK(hd.index_of("p^(3)*q^(3)") < 0);
    // standard grading deg - 2
    std::map<int, int> by_degree;
    for (int i = 0; i < hd.dim(); ++i)
        ++by_degree[hd.weight(i)[0] + hd.weight(i)[1]];
    std::vector<int> dims;
    for (auto& [d, c] : by_degree)
        dims.push_back(c);
    CHECK(dims == std::vector<int>{2, 3, 4, 3, 2});

    Algebra hI = build_hamiltonian(BilinearForm::I(2), {2, 2});
    CHECK(hI.dim() == 15);
    CHECK(validate(hI).ok);
    CHECK(hI.grading().moduli == std::vector<int>{2, 2, 0});

    Algebra h4 = build_hamiltonian(BilinearForm::Pi(4), {1, 1, 1, 1});
    CHECK(validate(h4).ok);
}

TEST_CASE("divergence-free h_I")
{
    Algebra lh = build_div_free_hI(4, {1, 1, 1, 1}, Variant::derived);
    CHECK(lh.dim() == 14);
    CHECK(validate(lh).ok);
    Algebra k1 = build_kaplansky({KapFamily::K1, 4, 0});
    auto r = search_isomorphism(lh, k1);
    REQUIRE(r.status == IsoStatus::found);
    CHECK(is_isomorphism(lh, k1, r.map));

    // with N = (2,2) the cut is proper and every basis element is divergence free
    Algebra lh22 = build_div_free_hI(2, {2, 2});
    CHECK(lh22.dim() < 15);
    CHECK(validate(lh22).ok);
    ShapePtr S = poisson_shape({2, 2}, false);
    Algebra hI = build_hamiltonian(BilinearForm::I(2), {2, 2});
    for (int i = 0; i < lh22.dim(); ++i) {
        // labels of lh22 are written in terms of hI monomials
        DPoly f(Field::gf2(), S);
        std::string lab = lh22.label(i);
        std::size_t pos = 0;
        while (pos <= lab.size()) {
            std::size_t next = lab.find(" + ", pos);
            std::string mono = lab.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            f.add_term(S->parse(mono), 1);
            if (next == std::string::npos)
                break;
            pos = next + 3;
        }
        CHECK((f.partial_pow(0, 2) + f.partial_pow(1, 2)).is_zero());
    }
}

TEST_CASE("Jurman algebras")
{
    for (int g = 2; g <= 4; ++g)
        for (int h = 1; g + h <= 5; ++h) {
            Algebra j = build_jurman(g, h);
            CHECK(j.dim() == int(pow2(g + h + 1)) - 2);
            CHECK(validate(j).ok);
        }
    // s = t = 1 for (2,1): the Example's binomials
    for (int i = -1; i <= 5; ++i) {
        CHECK(jurman_coefficient(2, 1, i, 1, -1, 1) == (i >= 2 ? 1 : 0));
        CHECK(jurman_coefficient(2, 1, i, 1, 0, 1) == (i > 1 ? (i - 1) % 2 : 0));
        CHECK(jurman_coefficient(2, 1, i, 1, 1, 1) == binom2(i, 2));
    }
    Algebra j = build_jurman(2, 1);
    int y = j.index_of("Y-1(1)");
    CHECK(j.bracket(y, y).empty());
    CHECK_THROWS_AS(build_jurman(1, 1), AlgebraError);
}

TEST_CASE("a(2;g,h)")
{
    Algebra a = build_a2gh(2, 1);
    CHECK(a.dim() == 16);
    CHECK(validate(a).ok);
    Algebra ad = build_a2gh(2, 1, Variant::derived);
    CHECK(ad.dim() == 15);
    CHECK(ad.index_of("x^(7)*y") < 0);
    Algebra q = build_a2gh(2, 1, Variant::derived_mod_center);
    CHECK(q.dim() == 14);

    for (auto [g, h] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}}) {
        Algebra quo = build_a2gh(g, h, Variant::derived_mod_center);
        Algebra jur = build_jurman(g, h);
        CHECK(quo.dim() == int(pow2(g + h + 1)) - 2);
        int k = int(pow2(g + h));
        LinearMap m;
        m.images.resize(std::size_t(jur.dim()));
        ShapePtr S = std::make_shared<Shape>(std::vector<int>{g + h, 1}, std::vector<std::string>{"x", "y"});
        for (int i = -1; i <= k - 3; ++i) {
            m.images[std::size_t(jurman_index(g, h, i, 0))] = unit_of(quo, S->format(S->pack({i + 1, 1})));
            m.images[std::size_t(jurman_index(g, h, i, 1))] = unit_of(quo, S->format(S->pack({i + 2, 0})));
        }
        std::string why;
        CHECK_MESSAGE(is_isomorphism(jur, quo, m, &why), why);
    }
}

TEST_CASE("multi-pair algebras")
{
    Algebra one = build_multipair(PairKind::Pi, {{2, 1}});
    CHECK(one.same_structure(build_a2gh(2, 1)));
    Algebra two = build_multipair(PairKind::I, {{2, 1}, {2, 1}});
    CHECK(two.dim() == 255);
    CHECK(validate(two).ok);
}

TEST_CASE("bilinear and quadratic forms")
{
    CHECK(BilinearForm::Pi(4).alternate());
    CHECK(BilinearForm::Pi(4).nondegenerate());
    CHECK_FALSE(BilinearForm::I(3).alternate());
    for (int m = 1; m <= 3; ++m)
        for (int A = 0; A < 2; ++A) {
            QuadraticForm Q = QuadraticForm::standard(m, A);
            CHECK(Q.polar_consistent());
            CHECK(arf_invariant(Q) == A);
        }
    QuadraticForm bad;
    bad.B = BilinearForm::Pi(2);
    bad.B.rows = {0, 0};
    CHECK_THROWS_AS(arf_invariant(bad), AlgebraError);
}

TEST_CASE("Arf invariant is invariant under symplectic changes of basis")
{
    // transvections u -> u + B(a,u) a generate Sp(2m, 2)
    for (int m = 1; m <= 3; ++m)
        for (int A = 0; A < 2; ++A) {
            QuadraticForm Q = QuadraticForm::standard(m, A);
            std::uint64_t N = pow2(2 * m);
            for (std::uint64_t a = 1; a < N; ++a) {
                // Q o T_a has the same polar form; compute its diagonal
                QuadraticForm R;
                R.B = Q.B;
                for (int i = 0; i < 2 * m; ++i) {
                    std::uint64_t e = pow2(i);
                    std::uint64_t te = Q.B(a, e) ? (e ^ a) : e;
                    if (Q(te))
                        R.diag |= e;
                }
                CHECK(arf_invariant(R) == A);
            }
        }
}

TEST_CASE("Kaplansky algebras")
{
    for (int m = 1; m <= 3; ++m) {
        int n = 2 * m;
        Algebra k2 = build_kaplansky({KapFamily::K2, n, 0});
        CHECK(k2.dim() == int(pow2(n)) - 1);
        CHECK(validate(k2).ok);
        for (int A = 0; A < 2; ++A) {
            Algebra k4 = build_kaplansky({KapFamily::K4A, n, A});
            int expect = int(pow2(m - 1)) * (int(pow2(m)) + (A ? 1 : -1));
            CHECK(k4.dim() == expect);
            CHECK(validate(k4).ok);
            CHECK(kaplansky_jsystem({KapFamily::K4A, n, A}).closed());
        }
        Algebra k4b = build_kaplansky({KapFamily::K4B, n, 0});
        CHECK(k4b.dim() == int(pow2(n)));
        CHECK(validate(k4b).ok);
    }
    CHECK(build_kaplansky({KapFamily::K1, 4, 0}).dim() == 14);
    CHECK(validate(build_kaplansky({KapFamily::K1, 5, 0})).ok);
    CHECK(build_kaplansky({KapFamily::K3, 5, 0}).dim() == 10);
    CHECK_THROWS_AS(build_kaplansky({KapFamily::K3, 6, 0}), AlgebraError);
    CHECK_THROWS_AS(build_kaplansky({KapFamily::K1, 3, 0}), AlgebraError);

    JSystem broken = kaplansky_jsystem({KapFamily::K2, 4, 0});
    broken.gamma.pop_back();
    std::string why;
    CHECK_FALSE(broken.closed(&why));
    CHECK_THROWS_AS(build_jsystem_algebra(broken), AlgebraError);
}

TEST_CASE("small Kaplansky identifications")
{
    Algebra k40_2 = build_kaplansky({KapFamily::K4A, 2, 0});
    CHECK(k40_2.dim() == 1);
    Algebra o3 = build_classical(ClassicalKind::oPi, 3, Variant::derived);
    CHECK(o3.dim() == 3);
    Algebra k41_2 = build_kaplansky({KapFamily::K4A, 2, 1});
    auto r = search_isomorphism(k41_2, o3);
    REQUIRE(r.status == IsoStatus::found);
    CHECK(is_isomorphism(k41_2, o3, r.map));

    Algebra k40_4 = build_kaplansky({KapFamily::K4A, 4, 0});
    auto r2 = search_isomorphism(k40_4, direct_sum(o3, o3));
    REQUIRE(r2.status == IsoStatus::found);
    CHECK(is_isomorphism(k40_4, direct_sum(o3, o3), r2.map));

    // Kap_{4,B}(2) = o'(3) + trivial center
    auto r3 = search_isomorphism(build_kap4b(1), direct_sum(o3, build_abelian(1)));
    REQUIRE(r3.status == IsoStatus::found);
}

TEST_CASE("Kap4B modulo its center is Kap2 through f_u")
{
    for (int m = 1; m <= 3; ++m) {
        Algebra k4b = build_kap4b(m);
        Subspace c = center(k4b);
        CHECK(c.dim() == 1);
        Quotient q = quotient(k4b, c);
        Algebra k2 = build_kaplansky({KapFamily::K2, 2 * m, 0});
        JSystem J = kaplansky_jsystem({KapFamily::K2, 2 * m, 0});
        LinearMap M;
        for (auto u : J.gamma)
            M.images.push_back(q.project(kap4b_fu(m, u)));
        std::string why;
        CHECK_MESSAGE(is_isomorphism(k2, q.algebra, M, &why), why);
    }
}

TEST_CASE("Kap4A subalgebras inside Kap4B")
{
    for (int m = 1; m <= 3; ++m)
        for (int A = 0; A < 2; ++A) {
            Algebra k4b = build_kap4b(m);
            Subspace s = build_kap4_subalgebra(m, A);
            int expect = int(pow2(m - 1)) * (int(pow2(m)) + (A ? 1 : -1));
            CHECK(s.dim() == expect);
            CHECK(is_subalgebra(k4b, s));
            // the basis f_u with Q_A(u) = 1 realizes the J-system algebra
            Algebra sub = restrict_to(k4b, s);
            Algebra k4a = build_kaplansky({KapFamily::K4A, 2 * m, A});
            JSystem J = kaplansky_jsystem({KapFamily::K4A, 2 * m, A});
            LinearMap M;
            for (auto u : J.gamma)
                M.images.push_back(*s.coords(kap4b_fu(m, u)));
            CHECK(is_isomorphism(k4a, sub, M));
        }
    Algebra k4b = build_kap4b(1);
    Subspace s = build_kap4_subalgebra(1, 0);
    // x1 y1 = (1+p)(1+q)
    CHECK(s.contains(kap4b_fu(1, 3)));
}

TEST_CASE("tensor example")
{
    Algebra g = build_tensor_example(0, false);
    CHECK(g.dim() == 4);
    CHECK(validate(g).ok);
    CHECK(g.same_structure(build_tensor_example(0, true)));
    Field F4 = Field::parse("gf4");
    for (Elt h = 0; h < 4; ++h)
        CHECK(validate(build_tensor_example(h, true, F4)).ok);
}

TEST_CASE("classical algebras")
{
    CHECK(build_classical(ClassicalKind::gl, 3).dim() == 9);
    CHECK(build_classical(ClassicalKind::sl, 4).dim() == 15);
    Algebra psl4 = build_classical(ClassicalKind::psl, 4);
    CHECK(psl4.dim() == 14);
    CHECK(validate(psl4).ok);
    CHECK(build_classical(ClassicalKind::psl, 3).dim() == 8);
    // in characteristic 2 the derived of gl(n) is sl(n)
    for (int n = 2; n <= 4; ++n)
        CHECK(derived_subalgebra(build_classical(ClassicalKind::gl, n)).dim() == n * n - 1);
    CHECK(build_classical(ClassicalKind::oI, 5).dim() == 15);
    CHECK(build_classical(ClassicalKind::oI, 5, Variant::derived).dim() == 10);
    CHECK(validate(build_classical(ClassicalKind::oPi, 4)).ok);
}

TEST_CASE("tensor with O")
{
    Algebra L = build_poisson(BilinearForm::Pi(2), {1, 1});
    Algebra T = tensor_with_O(L, 2, {"y3", "y4"});
    CHECK(T.dim() == 16);
    CHECK(validate(T).ok);
}

TEST_CASE("Kaplansky algebras carry the parity grading")
{
    for (int m = 1; m <= 3; ++m)
        for (int A = 0; A < 2; ++A) {
            Algebra k = build_kaplansky({KapFamily::K4A, 2 * m, A});
            CHECK(k.grading().arity() == 2 * m);
            CHECK(validate(k).grading);
        }
}
