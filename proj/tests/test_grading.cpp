#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mlie/catalog.hpp"
#include "mlie/constructions.hpp"
#include "mlie/grading.hpp"

using namespace mlie;

namespace {

std::vector<int> layer_codims(const Filtration& f)
{
    auto d = f.dims();
    std::vector<int> out;
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        out.push_back(d[i] - d[i + 1]);
    return out;
}

}

TEST_CASE("Weisfeiler filtration of j(g,h) and its associated graded")
{
    for (auto [g, h] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        CAPTURE(g);
        CAPTURE(h);
        Algebra j = build_jurman(g, h);
        Filtration f = weisfeiler_filtration(j, jurman_L0(j, g, h));
        std::string why;
        CHECK(check_filtration(j, f, &why));
        CHECK(f.depth == 1);
        CHECK(f.maximality_checked);
        CHECK(f.l0_maximal);
        CHECK(f.dims().front() == j.dim());
        CHECK(f.dims().back() == 0);

        Graded gr = associated_graded(j, f);
        CHECK(validate(gr.algebra).ok);
        Algebra hp = build_hamiltonian(BilinearForm::Pi(2), {g, h + 1}, Variant::derived);
        LinearMap m = jurman_graded_map(gr, hp, g, h);
        CHECK_MESSAGE(is_isomorphism(gr.algebra, hp, m, &why), why);
    }
    Algebra j = build_jurman(2, 1);
    Filtration f = weisfeiler_filtration(j, jurman_L0(j, 2, 1));
    CHECK(layer_codims(f) == std::vector<int>{2, 3, 4, 3, 2});
}

TEST_CASE("graded pieces bracket into the right layer")
{
    Algebra j = build_jurman(2, 1);
    Graded gr = associated_graded(j, weisfeiler_filtration(j, jurman_L0(j, 2, 1)));
    const Algebra& a = gr.algebra;
    for (int x = 0; x < a.dim(); ++x)
        for (int y = x + 1; y < a.dim(); ++y)
            for (auto& [k, c] : a.bracket(x, y)) {
                (void)c;
                CHECK(gr.degree[std::size_t(k)] == gr.degree[std::size_t(x)] + gr.degree[std::size_t(y)]);
            }
}

TEST_CASE("weight modes")
{
    for (auto m : {WeightMode::z, WeightMode::mod2, WeightMode::outer})
        CHECK(parse_weight_mode(weight_mode_name(m)) == m);
    CHECK_THROWS(parse_weight_mode("sideways"));
}

TEST_CASE("cochain weights")
{
    Algebra g = catalog_algebra("gh21");
    Cochain2 c = parse_cochain(g, catalog_entry("gh21", "c_{4,-2}").text);
    CHECK(cochain_weight(g, c, WeightMode::z) == std::vector<int>{4, -2});

    // a single term: wt(x) - wt(y) - wt(z)
    int x = g.index_of("p^(3)*q^(2)"), y = g.index_of("p"), z = g.index_of("q");
    REQUIRE(x >= 0);
    REQUIRE(y >= 0);
    REQUIRE(z >= 0);
    std::vector<int> w = term_weight(g, x, y, z);
    std::vector<int> expect;
    for (std::size_t i = 0; i < w.size(); ++i)
        expect.push_back(g.weight(x)[i] - g.weight(y)[i] - g.weight(z)[i]);
    CHECK(w == expect);

    // zero cochain has the zero weight
    CHECK(cochain_weight(g, Cochain2(g.dim()), WeightMode::z) == std::vector<int>{0, 0});

    // two terms of different weights
    Cochain2 mixed = parse_cochain(g, "p (x) d(q)^d(p*q) + p^(3)*q^(2) (x) d(p)^d(q)");
    CHECK_THROWS(cochain_weight(g, mixed, WeightMode::z));
}

TEST_CASE("catalog weights in the table's mode")
{
    for (const auto& e : catalog_cocycles()) {
        CAPTURE(e.name);
        Algebra g = catalog_algebra(e.table);
        Cochain2 c = parse_cochain(g, e.text);
        CHECK(cochain_weight(g, c, catalog_mode(e.table)) == e.weight);
    }
}
