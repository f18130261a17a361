#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mlie/catalog.hpp"
#include "mlie/deform.hpp"

#include <functional>
#include <random>

using namespace mlie;

namespace {

Cochain2 printed_or_completed(const Algebra& g, const std::string& table, const std::string& name)
{
    Cochain2 c = parse_cochain(g, catalog_entry(table, name).text);
    if (c.partial)
        c = *complete_printed(g, c).example;
    return c;
}

Cochain2 bilinear(const Algebra& g, const std::function<Vec(int, int)>& f)
{
    Cochain2 c(g.dim());
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j) {
            Vec v = f(i, j);
            if (!is_zero(v))
                c.add(i, j, v, g.field());
        }
    return c;
}

/// Homogeneous 1-cochain of nonzero weight w (hence nilpotent) with random entries.
Mat random_weighted_map(const Algebra& g, const std::vector<int>& w, std::mt19937_64& rng)
{
    Mat b(g.field(), g.dim(), g.dim());
    for (int i = 0; i < g.dim(); ++i)
        for (int k = 0; k < g.dim(); ++k)
            if (g.grading().add(g.weight(i), w) == g.weight(k))
                b.at(k, i) = Elt(rng() & 1);
    return b;
}

}

TEST_CASE("obstruction polynomial invariants")
{
    Algebra g = catalog_algebra("gh21");
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 6; ++rep) {
        Cochain2 c(g.dim());
        for (int t = 0; t < 6; ++t) {
            int i = int(rng() % 14), j = int(rng() % 14), k = int(rng() % 14);
            if (i < j)
                c.add_term(k, i, j, 1, g.field());
        }
        DeformFamily f;
        f.base = g;
        f.params = {"h"};
        f.pieces.push_back({{1}, c});
        ObstructionReport ob = obstruction_poly(f);
        CHECK(ob.coefficients.count({0}) == 0);
        CHECK((ob.coefficients.count({1}) == 0) == is_cocycle(g, c));
        if (!is_cocycle(g, c)) {
            CHECK(ob.verdict == DeformVerdict::not_cocycle);
            CHECK_THROWS_AS(deform_bracket(g, c), AlgebraError);
        }
    }
}

TEST_CASE("verdicts for the printed cocycles of h'_Pi(2;2,2)")
{
    Algebra g = catalog_algebra("gh21");
    for (auto name : {"c_{4,-2}", "c_{0,-4}", "c_{2,0}", "c_{-2,-2}"}) {
        CAPTURE(name);
        CHECK(obstruction_poly(deform_bracket(g, printed_or_completed(g, "gh21", name))).verdict ==
              DeformVerdict::linear_global);
    }
    Cochain2 c = printed_or_completed(g, "gh21", "c_{0,-2}");
    ObstructionReport ob = obstruction_poly(deform_bracket(g, c));
    CHECK(ob.verdict == DeformVerdict::needs_correction);
    CHECK(ob.first_nonzero == std::vector<int>{2});
    CHECK_FALSE(ob.class_nonzero);
    CHECK(square_class_vanishes(g, c));

    Integration in = integrate(g, c);
    REQUIRE(in.integrated);
    CHECK(in.series.size() > 1);
    CHECK(obstruction_poly(deform_series(g, in.series)).verdict == DeformVerdict::linear_global);
    auto lin = linear_representative(g, c);
    REQUIRE(lin.has_value());
    CHECK(is_coboundary(g, lin->plus(c, g.field())));
    CHECK(integrate(g, *lin).linear());
}

TEST_CASE("cohomologous cocycles stay in the class")
{
    Algebra g = catalog_algebra("gh21");
    Cochain2 c = printed_or_completed(g, "gh21", "c_{-2,-2}");
    auto all = cohomologous_cocycles(g, c, 6);
    CHECK(all.size() >= 2);
    for (const auto& x : all) {
        CHECK(is_cocycle(g, x));
        CHECK(is_coboundary(g, x.plus(c, g.field())));
    }
}

TEST_CASE("specialization at zero is the base")
{
    Algebra g = catalog_algebra("gh21");
    DeformFamily f = deform_bracket(g, printed_or_completed(g, "gh21", "c_{4,-2}"));
    CHECK(f.specialize(g.field(), 0).same_structure(g));
    Field F4 = Field::parse("gf4");
    CHECK(f.specialize(F4, 0).same_structure(lift_field(g, F4)));
    CHECK_FALSE(f.specialize(g.field(), 1).same_structure(g));
}

TEST_CASE("a coboundary deform is conjugate to the base by id + h b")
{
    Algebra g = catalog_algebra("gh21");
    const Field& F = g.field();
    std::mt19937_64 rng(17);
    for (auto w : std::vector<std::vector<int>>{{2, 0}, {0, -2}, {2, 2}}) {
        Mat b = random_weighted_map(g, w, rng);
        // F^{-1}[Fx,Fy] with F = id + h b, F^{-1} = sum h^k b^k
        std::vector<Cochain2> pieces;
        for (int n = 1; n <= 2 * g.dim(); ++n) {
            Cochain2 c = bilinear(g, [&](int i, int j) {
                Vec acc = zero_vec(g.dim());
                auto power = [&](Vec v, int k) {
                    for (int s = 0; s < k; ++s)
                        v = b.apply(v);
                    return v;
                };
                auto addv = [&](const Vec& v) {
                    for (int k = 0; k < g.dim(); ++k)
                        acc[std::size_t(k)] = F.add(acc[std::size_t(k)], v[std::size_t(k)]);
                };
                addv(power(g.bracket_vec(i, j), n));
                Vec mid = g.bracket(b.col(i), g.unit(j));
                Vec mid2 = g.bracket(g.unit(i), b.col(j));
                for (int k = 0; k < g.dim(); ++k)
                    mid[std::size_t(k)] = F.add(mid[std::size_t(k)], mid2[std::size_t(k)]);
                addv(power(mid, n - 1));
                if (n >= 2)
                    addv(power(g.bracket(b.col(i), b.col(j)), n - 2));
                return acc;
            });
            pieces.push_back(c);
        }
        while (!pieces.empty() && pieces.back().is_zero())
            pieces.pop_back();
        if (pieces.empty())
            continue;
        CHECK(pieces.front() == d1(g, b));
        DeformFamily fam = deform_series(g, pieces);
        CHECK(obstruction_poly(fam).verdict == DeformVerdict::linear_global);
        Mat M = Mat::identity(F, g.dim());
        for (int i = 0; i < g.dim(); ++i)
            for (int j = 0; j < g.dim(); ++j)
                M.at(i, j) ^= b.at(i, j);
        LinearMap m;
        for (int i = 0; i < g.dim(); ++i)
            m.images.push_back(M.col(i));
        CHECK(is_isomorphism(fam.specialize(F, 1), g, m));
    }
}

TEST_CASE("semi-triviality certificates")
{
    Algebra g = catalog_algebra("gh21");
    Field F4 = Field::parse("gf4");
    auto ops = derivative_operators(g, poisson_shape({2, 2}, true));
    REQUIRE(ops.size() == 4);

    Cochain2 c04 = printed_or_completed(g, "gh21", "c_{0,-4}");
    CHECK_FALSE(is_coboundary(g, c04));
    Certificate cert = semitrivial_certificate(deform_bracket(g, c04), F4, F4.gen(), ops);
    CHECK(cert.found);
    CHECK(cert.strategy == "F=id+sD");
    CHECK(is_isomorphism(deform_bracket(g, c04).specialize(F4, F4.gen()), lift_field(g, F4), cert.map));

    Cochain2 c02 = printed_or_completed(g, "gh21", "c_{0,-2}");
    CHECK_FALSE(is_coboundary(g, c02));
    bool certified = false;
    for (const auto& op : ops) {
        ConjugatedFamily r = conjugated_family_certificate(g, op, c02, F4, F4.gen());
        CHECK(r.derivation);
        CHECK(r.nilpotent);
        CHECK(r.cert.found);
        if (op.name == "d_q") {
            CHECK(r.leading_in_class);
            CHECK_FALSE(r.polynomial_in_h);
            CHECK(obstruction_poly(r.family).verdict == DeformVerdict::linear_global);
            certified = true;
        }
    }
    CHECK(certified);

    Certificate te = tensor_example_certificate(F4, F4.gen());
    CHECK(te.found);
    CHECK(te.detail == "deformed -> undeformed");
}

TEST_CASE("Jurman deforms")
{
    for (auto [G, H] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        CAPTURE(G);
        CAPTURE(H);
        JurmanDeformReport r = jurman_deform_check(G, H);
        CHECK(r.cocycle);
        CHECK(r.non_coboundary);
        CHECK(r.linear);
        CHECK(r.isomorphic);
        CHECK(int(r.map.images.size()) == build_jurman(G, H).dim());
    }
    for (int K = 3; K <= 4; ++K) {
        DeformFamily f = jurman_multi_family(K);
        CHECK(obstruction_poly(f).verdict == DeformVerdict::linear_global);
        for (std::size_t p = 0; p < f.params.size(); ++p) {
            std::vector<Elt> v(f.params.size(), 0);
            v[p] = 1;
            int gg = f.params[p][1] - '0', hh = f.params[p][2] - '0';
            CHECK(f.specialize(Field::gf2(), v).same_structure(build_jurman(gg, hh)));
        }
    }
}

TEST_CASE("Poisson family")
{
    Field F4 = Field::parse("gf4");
    Algebra fam = poisson_family(BilinearForm::Pi(2), {2, 2}, F4.gen(), F4);
    CHECK(validate(fam).ok);
    Algebra po = build_poisson(BilinearForm::Pi(2), {2, 2}, F4);
    CHECK(is_isomorphism(fam, po, f_alpha_map(fam, poisson_shape({2, 2}, true), F4.gen())));

    ReindexResult ri = reindex_iso(BilinearForm::Pi(2), {2, 2}, Field::gf2());
    CHECK(ri.isomorphism);
    CHECK(ri.target.dim() == 16);
    CHECK(validate(poisson_family(BilinearForm::Pi(2), {2, 2}, 0, Field::gf2())).ok);
}

TEST_CASE("Kap4B as a deform")
{
    for (int m : {1, 2}) {
        Kap4bDeformReport r = kap4b_as_deform(m);
        CHECK(r.family_valid);
        CHECK(r.linear_coboundary);
        CHECK(r.quadratic_cocycle);
        CHECK(r.quadratic_non_coboundary);
        CHECK(r.family_at_one_matches);
    }
}

TEST_CASE("integrability of the h_I(2;2,2) table")
{
    auto rows = catalog_integrability("hI22");
    CHECK(rows.size() == 13);
    for (const auto& r : rows) {
        CAPTURE(r.name);
        CHECK(r.consistent);
        CHECK(r.classes >= 1);
        CHECK(r.full_weight.size() == 3);
    }
}
