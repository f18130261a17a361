#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mlie/constructions.hpp"
#include "mlie/liealg.hpp"

#include <random>

using namespace mlie;

namespace {

Algebra po11()
{
    return build_poisson(BilinearForm::Pi(2), {1, 1});
}

/// Same algebra in a random basis: e'_i = sum P_ki e_k.
Algebra random_basis_change(const Algebra& g, std::mt19937_64& rng, Mat& P)
{
    const Field& F = g.field();
    int n = g.dim();
    while (true) {
        P = Mat(F, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                P.at(i, j) = Elt(rng() & 1);
        if (P.rank() == n)
            break;
    }
    Mat Pinv = *P.inverse();
    Algebra h(F, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            h.set_bracket(i, j, Pinv.apply(g.bracket(P.col(i), P.col(j))));
    return h;
}

}

TEST_CASE("validate accepts Lie algebras and reports broken Jacobi")
{
    CHECK(validate(po11()).ok);
    CHECK(validate(build_tensor_example(0, false)).ok);

    Algebra bad = po11();
    // flip one structure constant: [p, p*q] = p becomes 0
    int p = bad.index_of("p"), pq = bad.index_of("p*q");
    REQUIRE(!bad.bracket(p, pq).empty());
    bad.set_bracket(p, pq, Terms{});
    auto rep = validate(bad);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.jacobi);
    CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("grading violations are reported")
{
    Algebra g = build_tensor_example(0, false);
    Grading gr = g.grading();
    gr.weights[1] = {5};
    g.set_grading(gr);
    auto rep = validate(g);
    CHECK_FALSE(rep.grading);
}

TEST_CASE("derived subalgebra and center")
{
    CHECK(derived_subalgebra(build_abelian(5)).dim() == 0);
    Algebra h = build_hamiltonian(BilinearForm::Pi(2), {2, 2});
    CHECK(h.dim() == 15);
    CHECK(derived_subalgebra(h).dim() == 14);

    Algebra oI5 = build_classical(ClassicalKind::oI, 5);
    Algebra k3 = build_kaplansky({KapFamily::K3, 5, 0});
    CHECK(derived_subalgebra(oI5).dim() == k3.dim());

    CHECK(center(po11()).dim() == 1);
    CHECK(center(po11()).contains(po11().unit(po11().index_of("1"))));
    CHECK(center(build_kaplansky({KapFamily::K2, 4, 0})).dim() == 0);
    Algebra k4b = build_kap4b(1);
    CHECK(center(k4b).contains(k4b.unit(k4b.index_of("1"))));
}

TEST_CASE("quotients")
{
    Algebra po22 = build_poisson(BilinearForm::Pi(2), {2, 2});
    Quotient q = quotient(po22, center(po22));
    CHECK(q.algebra.dim() == 15);
    CHECK(validate(q.algebra).ok);

    Algebra g = build_jurman(2, 1);
    Quotient same = quotient(g, Subspace(g.field(), g.dim()));
    CHECK(same.algebra.same_structure(g));

    Algebra a = build_a2gh(2, 1, Variant::derived);
    CHECK(quotient(a, center(a)).algebra.dim() == 14);

    Subspace notideal(po22.field(), po22.dim());
    notideal.add(po22.unit(po22.index_of("p")));
    CHECK_THROWS_AS(quotient(po22, notideal), AlgebraError);

    Algebra h = build_hamiltonian(BilinearForm::Pi(2), {2, 2});
    Algebra ab = quotient(h, derived_subalgebra(h)).algebra;
    CHECK(derived_subalgebra(ab).dim() == 0);
}

TEST_CASE("ideal spinning")
{
    Algebra j = build_jurman(2, 1);
    CHECK(ideal_generated(j, j.unit(3)).dim() == j.dim());
    Algebra po = po11();
    CHECK(ideal_generated(po, po.unit(po.index_of("1"))).dim() == 1);
    Algebra po22 = build_poisson(BilinearForm::Pi(2), {2, 2});
    Subspace I = ideal_generated(po22, po22.unit(po22.index_of("p")));
    CHECK(I.dim() == derived_subalgebra(po22).dim());
    CHECK(I.dim() < po22.dim());
    CHECK(ideal_generated(po22, po22.unit(po22.index_of("p^(3)*q^(3)"))).dim() == po22.dim());
    CHECK(I.contains(po22.unit(po22.index_of("1"))));
    CHECK(is_ideal(po22, I));
}

TEST_CASE("simplicity verdicts")
{
    auto r = simplicity_check(build_jurman(2, 1));
    CHECK(r.verdict == Simplicity::simple);
    auto s = simplicity_check(po11());
    CHECK(s.verdict == Simplicity::ideal_witness);
    Algebra k40 = build_kaplansky({KapFamily::K4A, 4, 0});
    auto t = simplicity_check(k40);
    REQUIRE(t.verdict == Simplicity::ideal_witness);
    CHECK(is_ideal(k40, t.witness));
    CHECK(t.witness.dim() > 0);
    CHECK(t.witness.dim() < k40.dim());
}

TEST_CASE("morphism checks")
{
    Algebra g = build_jurman(2, 1);
    LinearMap id;
    for (int i = 0; i < g.dim(); ++i)
        id.images.push_back(g.unit(i));
    CHECK(is_isomorphism(g, g, id));
    LinearMap broken = id;
    broken.images[0] = zero_vec(g.dim());
    CHECK_FALSE(is_isomorphism(g, g, broken));

    // M(e_{i,1}) = e_{i,1} + s e_{i,0} with s^2 = hbar
    Field F4 = Field::parse("gf4");
    Elt hbar = F4.gen();
    Elt s = F4.sqrt(hbar);
    CHECK(F4.sqr(s) == hbar);
    Algebra def = build_tensor_example(hbar, true, F4);
    Algebra base = build_tensor_example(0, false, F4);
    LinearMap M;
    M.images = {base.unit(0), base.unit(1), base.unit(2), base.unit(3)};
    M.images[1][0] = s;
    M.images[3][2] = s;
    std::string why;
    CHECK_MESSAGE(is_isomorphism(def, base, M, &why), why);
}

TEST_CASE("isomorphism search")
{
    std::mt19937_64 rng(0);
    Algebra j = build_jurman(2, 1);
    auto self = search_isomorphism(j, j);
    REQUIRE(self.status == IsoStatus::found);
    CHECK(is_isomorphism(j, j, self.map));

    Mat P;
    Algebra jj = random_basis_change(j, rng, P);
    auto r = search_isomorphism(j, jj);
    REQUIRE(r.status == IsoStatus::found);
    CHECK(is_isomorphism(j, jj, r.map));
    CHECK(fingerprint(j) == fingerprint(jj));

    auto k41 = build_kaplansky({KapFamily::K4A, 4, 1});
    auto o5 = build_classical(ClassicalKind::oPi, 5, Variant::derived);
    auto r2 = search_isomorphism(k41, o5);
    REQUIRE(r2.status == IsoStatus::found);
    CHECK(is_isomorphism(k41, o5, r2.map));

    auto r3 = search_isomorphism(build_kap4b(1), po11());
    CHECK(r3.status == IsoStatus::distinguished);
}

TEST_CASE("derivations")
{
    CHECK(derivation_dim(build_abelian(1)) == 1);
    CHECK(derivation_dim(build_abelian(3)) == 9);
    Algebra j = build_jurman(2, 1);
    int dj = derivation_dim(j);
    CHECK(dj >= j.dim());
    CHECK(derivation_dim(direct_sum(j, j)) >= 2 * dj);
}

TEST_CASE("invariant forms")
{
    Algebra k2 = build_kaplansky({KapFamily::K2, 4, 0});
    Mat K = Mat::identity(k2.field(), k2.dim());
    auto rep = check_invariant_form(k2, K);
    CHECK(rep.symmetric);
    CHECK(rep.invariant);
    CHECK(rep.nondegenerate());

    auto zero = check_invariant_form(k2, Mat(k2.field(), k2.dim(), k2.dim()));
    CHECK(zero.invariant);
    CHECK_FALSE(zero.nondegenerate());

    // integral of fg: coefficient of the top monomial
    for (int m : {1, 2}) {
        Algebra po = build_poisson(BilinearForm::Pi(2 * m), std::vector<int>(std::size_t(2 * m), 1));
        ShapePtr S = poisson_shape(std::vector<int>(std::size_t(2 * m), 1), true);
        auto basis = S->basis();
        Mono top = basis.back();
        Mat B(po.field(), po.dim(), po.dim());
        for (int a = 0; a < po.dim(); ++a)
            for (int b = 0; b < po.dim(); ++b) {
                Mono prod;
                if (mono_mul(basis[std::size_t(a)], basis[std::size_t(b)], prod) && prod == top)
                    B.at(a, b) = 1;
            }
        auto r = check_invariant_form(po, B);
        CHECK(r.symmetric);
        CHECK(r.invariant);
    }
}

TEST_CASE("json round trip")
{
    Field F4 = Field::parse("gf4");
    Algebra g = build_tensor_example(F4.gen(), true, F4);
    auto j = g.to_json();
    Algebra h = Algebra::from_json(nlohmann::json::parse(j.dump()));
    CHECK(h.same_structure(g));
    CHECK(h.labels() == g.labels());
    Algebra jur = build_jurman(2, 1);
    Algebra jur2 = Algebra::from_json(nlohmann::json::parse(jur.to_json().dump()));
    CHECK(jur2.grading() == jur.grading());
    CHECK(jur2.to_json().dump() == jur.to_json().dump());

    auto bad = nlohmann::json::parse(R"({"dim":2,"field":"gf2","sc":[[1,0,[[0,"1"]]]]})");
    CHECK_THROWS_AS(Algebra::from_json(bad), AlgebraError);
}

TEST_CASE("dimension zero is legal")
{
    Algebra z = build_abelian(0);
    CHECK(validate(z).ok);
    CHECK(center(z).dim() == 0);
    CHECK(derivation_dim(z) == 0);
}
