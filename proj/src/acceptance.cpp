#include "mlie/acceptance.hpp"

#include "mlie/catalog.hpp"
#include "mlie/deform.hpp"
#include "mlie/grading.hpp"
#include "mlie/superize.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <chrono>
#include <random>

namespace mlie {

namespace {

using u128 = unsigned __int128;

struct Tally {
    int checks = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok)
            failures.push_back(what);
    }
    bool pass() const { return failures.empty(); }
    std::string summary() const
    {
        if (failures.empty())
            return fmt::format("{} checks", checks);
        std::string s = fmt::format("{} of {} checks failed: ", failures.size(), checks);
        for (std::size_t i = 0; i < failures.size() && i < 4; ++i)
            s += (i ? "; " : "") + failures[i];
        return s;
    }
};

bool verified_iso(const Algebra& a, const Algebra& b, std::string* why = nullptr)
{
    IsoResult r = search_isomorphism(a, b);
    if (r.status != IsoStatus::found) {
        if (why)
            *why = r.status_name() + ": " + r.reason;
        return false;
    }
    return is_isomorphism(a, b, r.map, why);
}

CriterionResult c1()
{
    Tally t;
    std::vector<std::pair<std::string, std::function<Algebra()>>> all = {
        {"po_Pi(2;1,1)", [] { return build_poisson(BilinearForm::Pi(2), {1, 1}); }},
        {"po_Pi(2;2,2)", [] { return build_poisson(BilinearForm::Pi(2), {2, 2}); }},
        {"po_Pi(4;1_s)", [] { return build_poisson(BilinearForm::Pi(4), {1, 1, 1, 1}); }},
        {"h_Pi(2;2,2)", [] { return build_hamiltonian(BilinearForm::Pi(2), {2, 2}); }},
        {"h'_Pi(2;2,2)", [] { return build_hamiltonian(BilinearForm::Pi(2), {2, 2}, Variant::derived); }},
        {"h'_Pi(2;2,3)", [] { return build_hamiltonian(BilinearForm::Pi(2), {2, 3}, Variant::derived); }},
        {"h_I(2;2,2)", [] { return build_hamiltonian(BilinearForm::I(2), {2, 2}); }},
        {"lh_I(4;1_s)'", [] { return build_div_free_hI(4, {1, 1, 1, 1}, Variant::derived); }},
        {"a_Pi multipair (2,1)^2", [] { return build_multipair(PairKind::Pi, {{2, 1}, {2, 1}}); }},
        {"a_I multipair (2,1)^2", [] { return build_multipair(PairKind::I, {{2, 1}, {2, 1}}); }},
        {"Kap3(5)", [] { return build_kaplansky({KapFamily::K3, 5, 0}); }},
        {"example", [] { return build_tensor_example(0, false); }},
        {"example deformed", [] { return build_tensor_example(1, true); }},
    };
    for (int g = 2; g <= 4; ++g)
        for (int h = 1; g + h <= 5; ++h) {
            all.push_back({fmt::format("j({},{})", g, h), [g, h] { return build_jurman(g, h); }});
            all.push_back({fmt::format("a(2;{},{})", g, h), [g, h] { return build_a2gh(g, h); }});
        }
    for (int n = 4; n <= 6; ++n)
        all.push_back({fmt::format("Kap1({})", n), [n] { return build_kaplansky({KapFamily::K1, n, 0}); }});
    for (int n = 2; n <= 6; n += 2) {
        all.push_back({fmt::format("Kap2({})", n), [n] { return build_kaplansky({KapFamily::K2, n, 0}); }});
        for (int A = 0; A <= 1; ++A)
            all.push_back({fmt::format("Kap4,{}({})", A, n), [n, A] { return build_kaplansky({KapFamily::K4A, n, A}); }});
        all.push_back({fmt::format("Kap4B({})", n), [n] { return build_kap4b(n / 2); }});
    }
    for (auto& [name, make] : all) {
        ValidationReport r = validate(make());
        t.expect(r.ok && r.alternation && r.jacobi, name);
    }
    return {1, "validation sweep", t.pass(), t.summary() + fmt::format(" over {} algebras", all.size())};
}

CriterionResult c2()
{
    Tally t;
    for (int g = 2; g <= 4; ++g)
        for (int h = 1; g + h <= 5; ++h)
            t.expect(build_jurman(g, h).dim() == (1 << (g + h + 1)) - 2, fmt::format("dim j({},{})", g, h));
    t.expect(build_kaplansky({KapFamily::K1, 4, 0}).dim() == 14, "dim Kap1(4)");
    for (int m = 1; m <= 3; ++m) {
        for (int A = 0; A <= 1; ++A) {
            int expect = (1 << (m - 1)) * ((1 << m) - (A ? -1 : 1));
            t.expect(build_kaplansky({KapFamily::K4A, 2 * m, A}).dim() == expect, fmt::format("dim Kap4,{}({})", A, 2 * m));
        }
        t.expect(build_kaplansky({KapFamily::K2, 2 * m, 0}).dim() == (1 << (2 * m)) - 1, fmt::format("dim Kap2({})", 2 * m));
    }
    return {2, "dimension table", t.pass(), t.summary()};
}

CriterionResult c3()
{
    Tally t;
    std::string why;
    Algebra o3 = build_classical(ClassicalKind::oPi, 3, Variant::derived);
    t.expect(build_kaplansky({KapFamily::K4A, 2, 0}).dim() == 1, "Kap4,0(2) is 1-dim");
    t.expect(verified_iso(build_kaplansky({KapFamily::K4A, 2, 1}), o3, &why), "Kap4,1(2) = o'_Pi(3) " + why);
    t.expect(verified_iso(build_kaplansky({KapFamily::K4A, 4, 0}), direct_sum(o3, o3), &why), "Kap4,0(4) = 2 o'_Pi(3) " + why);
    Algebra o5 = build_classical(ClassicalKind::oPi, 5, Variant::derived);
    Algebra k41 = build_kaplansky({KapFamily::K4A, 4, 1});
    t.expect(verified_iso(k41, o5, &why), "Kap4,1(4) = o'_Pi(5) " + why);
    t.expect(verified_iso(k41, build_kaplansky({KapFamily::K3, 5, 0}), &why), "Kap4,1(4) = Kap3(5) " + why);
    t.expect(verified_iso(build_kaplansky({KapFamily::K1, 4, 0}), build_div_free_hI(4, {1, 1, 1, 1}, Variant::derived), &why),
             "Kap1(4) = lh_I(4;1_s)' " + why);
    return {3, "Kaplansky identifications", t.pass(), t.summary()};
}

CriterionResult c4()
{
    Tally t;
    for (auto [g, h] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        Algebra j = build_jurman(g, h);
        Filtration f = weisfeiler_filtration(j, jurman_L0(j, g, h));
        std::string why;
        t.expect(check_filtration(j, f, &why), fmt::format("filtration of j({},{}) {}", g, h, why));
        Graded gr = associated_graded(j, f);
        Algebra hp = build_hamiltonian(BilinearForm::Pi(2), {g, h + 1}, Variant::derived);
        t.expect(is_isomorphism(gr.algebra, hp, jurman_graded_map(gr, hp, g, h), &why),
                 fmt::format("gr j({},{}) = h'_Pi(2;{},{}) {}", g, h, g, h + 1, why));
        if (g == 2 && h == 1) {
            auto d = f.dims();
            std::vector<int> codims;
            for (std::size_t i = 0; i + 1 < d.size(); ++i)
                codims.push_back(d[i] - d[i + 1]);
            t.expect(codims == std::vector<int>{2, 3, 4, 3, 2}, fmt::format("layer codims {}", codims));
        }
    }
    return {4, "graded Jurman algebras", t.pass(), t.summary()};
}

CriterionResult c5()
{
    Tally t;
    std::map<std::string, int> counts;
    std::vector<int> outer;
    int full = 0, partial = 0;
    for (const auto& e : catalog_cocycles()) {
        Algebra g = catalog_algebra(e.table);
        Cochain2 c = parse_cochain(g, e.text);
        ++counts[e.table];
        std::string tag = e.table + " " + e.name;
        t.expect(cochain_weight(g, c, catalog_mode(e.table)) == e.weight, tag + " weight");
        if (e.table == "hI22")
            outer.push_back(e.weight.at(0));
        if (!c.partial) {
            ++full;
            t.expect(is_cocycle(g, c), tag + " cocycle");
            t.expect(!is_coboundary(g, c), tag + " non-coboundary");
        } else {
            ++partial;
            Completion comp = complete_printed(g, c);
            t.expect(comp.consistent && comp.non_coboundary, tag + " completion");
        }
    }
    std::sort(outer.begin(), outer.end());
    t.expect(counts["gh31"] == 19, "19 weights of the (3,1) table");
    t.expect(outer == std::vector<int>{-4, -4, -4, -2, -2, -2, -2, 0, 2, 2, 2, 2, 6}, "13 outer degrees");
    return {5, "cocycle ingestion", t.pass(),
            t.summary() + fmt::format(" ({} printed in full, {} elided and completed)", full, partial)};
}

CriterionResult c6()
{
    Tally t;
    std::string methods;
    for (auto [g, h] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        JurmanDeformReport r = jurman_deform_check(g, h);
        std::string tag = fmt::format("({},{}) via {}", g, h, r.cocycle_name);
        t.expect(r.cocycle && r.non_coboundary, tag + " cocycle");
        t.expect(r.isomorphic, tag + " isomorphism");
        methods += fmt::format(" {}: {};", tag, r.method);
    }
    return {6, "Jurman deforms", t.pass(), t.summary() + methods};
}

CriterionResult c7()
{
    Tally t;
    Algebra g = catalog_algebra("gh21");
    Field F4 = Field::parse("gf4");
    auto ops = derivative_operators(g, poisson_shape({2, 2}, true));

    Cochain2 c04 = parse_cochain(g, catalog_entry("gh21", "c_{0,-4}").text);
    t.expect(is_cocycle(g, c04) && !is_coboundary(g, c04), "c_{0,-4} non-coboundary");
    Certificate a = semitrivial_certificate(deform_bracket(g, c04), F4, F4.gen(), ops);
    t.expect(a.found, "c_{0,-4} certificate");

    Cochain2 c02 = *complete_printed(g, parse_cochain(g, catalog_entry("gh21", "c_{0,-2}").text)).example;
    t.expect(is_cocycle(g, c02) && !is_coboundary(g, c02), "c_{0,-2} non-coboundary");
    bool found = false;
    for (const auto& op : ops)
        if (op.name == "d_q") {
            ConjugatedFamily r = conjugated_family_certificate(g, op, c02, F4, F4.gen());
            found = r.derivation && r.nilpotent && r.leading_in_class && r.cert.found;
        }
    t.expect(found, "c_{0,-2} certificate");

    Algebra base = build_tensor_example(0, false), def = build_tensor_example(1, true);
    Cochain2 c(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Vec v = def.bracket_vec(i, j);
            Vec w = base.bracket_vec(i, j);
            for (int k = 0; k < 4; ++k)
                v[std::size_t(k)] ^= w[std::size_t(k)];
            if (!is_zero(v))
                c.add(i, j, v, base.field());
        }
    t.expect(is_cocycle(base, c) && !is_coboundary(base, c), "example cocycle non-coboundary");
    t.expect(tensor_example_certificate(F4, F4.gen()).found, "example certificate");
    return {7, "semi-triviality certificates", t.pass(),
            t.summary() + fmt::format("; c_{{0,-4}}: {}; c_{{0,-2}}: conjugated family by d_q", a.detail)};
}

CriterionResult c8()
{
    Tally t;
    std::string rows;
    for (const auto& r : catalog_integrability("hI22")) {
        bool bad = r.obstructed > 0 || r.not_integrated > 0;
        bool want_bad = r.name == "c_{-2}^3";
        t.expect(r.consistent, r.name + " consistent");
        t.expect(bad == want_bad, fmt::format("{}: {} of {} compatible classes obstructed, {} not integrated", r.name,
                                              r.obstructed, r.classes, r.not_integrated));
        if (bad)
            rows += " " + r.name;
    }
    return {8, "integrability lemma", t.pass(), t.summary() + (rows.empty() ? "; every class integrates" : "; obstructed:" + rows)};
}

CriterionResult c9()
{
    QuantizationReport q = quantization_deform_check(2);
    bool ok = q.cocycle && q.non_coboundary && q.iso.status == IsoStatus::found;
    std::string detail = fmt::format("cocycle {}, non-coboundary {}, linear {}, fingerprints: {}, search: {} ({})", q.cocycle,
                                     q.non_coboundary, q.linear, q.fingerprint_note, q.iso.status_name(), q.iso.reason);
    return {9, "quantization deform", ok, detail};
}

CriterionResult c10()
{
    Tally t;
    Field F4 = Field::parse("gf4");
    Algebra fam = poisson_family(BilinearForm::Pi(2), {2, 2}, F4.gen(), F4);
    Algebra po = build_poisson(BilinearForm::Pi(2), {2, 2}, F4);
    std::string why;
    t.expect(validate(fam).ok, "family at alpha = t");
    t.expect(is_isomorphism(fam, po, f_alpha_map(fam, poisson_shape({2, 2}, true), F4.gen()), &why), "F_alpha " + why);
    ReindexResult r = reindex_iso(BilinearForm::Pi(2), {2, 2}, Field::gf2());
    t.expect(r.isomorphism, "reindexing at alpha = 0");
    return {10, "Poisson family", t.pass(), t.summary()};
}

CriterionResult c11()
{
    Tally t;
    Kap4bDeformReport r = kap4b_as_deform(2);
    t.expect(r.family_valid, "family valid");
    t.expect(r.linear_coboundary, "linear part is a coboundary");
    t.expect(r.quadratic_cocycle && r.quadratic_non_coboundary, "quadratic part is a non-coboundary cocycle");
    t.expect(r.family_at_one_matches, "family at 1 is Kap4B(4)");
    Algebra k4b = build_kap4b(2);
    Quotient q = quotient(k4b, center(k4b));
    JSystem J = kaplansky_jsystem({KapFamily::K2, 4, 0});
    LinearMap M;
    for (auto u : J.gamma)
        M.images.push_back(q.project(kap4b_fu(2, u)));
    std::string why;
    t.expect(is_isomorphism(build_kaplansky({KapFamily::K2, 4, 0}), q.algebra, M, &why), "Kap4B(4)/c = Kap2(4) " + why);
    return {11, "Kap4B deformation structure", t.pass(), t.summary()};
}

CriterionResult c12()
{
    Tally t;
    int built = 0;
    for (int m = 1; m <= 3; ++m)
        for (const auto& s : superization_families(m)) {
            SuperAlgebra S = build_superization(s);
            ++built;
            SuperCheck r = check_super(S);
            t.expect(r.ok, S.name + (r.violations.empty() ? "" : ": " + r.violations.front()));
        }
    for (int m = 1; m <= 2; ++m) {
        int n = 2 * m;
        std::uint64_t N = std::uint64_t{1} << n;
        ClosureAlgebra k2 = restricted_closure(KapSpec{KapFamily::K2, n, 0});
        for (std::uint64_t v = 1; v < N; ++v)
            for (std::uint64_t w = 1; w < N; ++w)
                t.expect(superization_equivalence(k2, std::nullopt, v, w).found, fmt::format("Kap2({}) {} ~ {}", n, v, w));
        for (int A = 0; A <= 1; ++A) {
            if (m == 1 && A == 0)
                continue;
            ClosureAlgebra k4 = restricted_closure(KapSpec{KapFamily::K4A, n, A});
            QuadraticForm Q = QuadraticForm::standard(m, A);
            for (std::uint64_t v = 1; v < N; ++v)
                for (std::uint64_t w = 1; w < N; ++w) {
                    SuperEquivalence e = superization_equivalence(k4, Q, v, w);
                    t.expect(e.exhaustive && e.found == (Q(v) == Q(w)), fmt::format("Kap4,{}({}) {} vs {}", A, n, v, w));
                }
        }
        for (int A = 0; A <= 1; ++A) {
            QuadraticForm Q = QuadraticForm::standard(m, A);
            for (std::uint64_t d = 0; d < N; ++d) {
                QuadraticForm Q2 = Q;
                Q2.diag = d;
                NonlinearReduction r = nonlinear_reduction_check(m, Q, Q2);
                t.expect(r.additive && r.subalgebra && r.parities_match, fmt::format("Q+Q' for m={} A={} diag {}", m, A, d));
            }
        }
    }
    return {12, "superization suite", t.pass(), t.summary() + fmt::format(" ({} superalgebras)", built)};
}

CriterionResult c13()
{
    Tally t;
    // Lucas rule against Pascal's triangle in 128-bit integers
    std::vector<std::vector<u128>> pascal(128, std::vector<u128>(128, 0));
    for (int n = 0; n < 128; ++n) {
        pascal[std::size_t(n)][0] = 1;
        for (int k = 1; k <= n; ++k)
            pascal[std::size_t(n)][std::size_t(k)] =
                pascal[std::size_t(n - 1)][std::size_t(k - 1)] + (k < n ? pascal[std::size_t(n - 1)][std::size_t(k)] : 0);
    }
    auto S = std::make_shared<Shape>(std::vector<int>{7}, std::vector<std::string>{"x"});
    Field F;
    int lucas_bad = 0;
    for (int r = 0; r < 64; ++r)
        for (int s = 0; s < 64; ++s) {
            DPoly p = DPoly::mono(F, S, Mono(r)) * DPoly::mono(F, S, Mono(s));
            Elt expect = Elt(pascal[std::size_t(r + s)][std::size_t(r)] & 1);
            if (p.coeff(Mono(r + s)) != expect)
                ++lucas_bad;
        }
    t.expect(lucas_bad == 0, fmt::format("{} Lucas mismatches", lucas_bad));

    std::mt19937_64 rng(0);
    for (const Algebra& g : {build_jurman(2, 1), catalog_algebra("gh21"), build_kaplansky({KapFamily::K2, 4, 0})}) {
        for (int rep = 0; rep < 3; ++rep) {
            Mat b(g.field(), g.dim(), g.dim());
            for (int i = 0; i < g.dim(); ++i)
                for (int j = 0; j < g.dim(); ++j)
                    b.at(i, j) = Elt(rng() & 1);
            t.expect(d2(g, d1(g, b)).is_zero(), "d2 d1 = 0");
        }
    }

    std::vector<std::pair<Algebra, Algebra>> pairs = {
        {build_kaplansky({KapFamily::K4A, 4, 1}), build_classical(ClassicalKind::oPi, 5, Variant::derived)},
        {build_kaplansky({KapFamily::K1, 4, 0}), build_div_free_hI(4, {1, 1, 1, 1}, Variant::derived)},
    };
    for (auto& [a, b] : pairs) {
        IsoResult r = search_isomorphism(a, b);
        t.expect(r.status == IsoStatus::found && is_isomorphism(a, b, r.map), "returned isomorphism re-verified");
    }

    for (auto& [name, g] : std::vector<std::pair<std::string, Algebra>>{
             {"j(2,1)", build_jurman(2, 1)},
             {"Kap1(4)", build_kaplansky({KapFamily::K1, 4, 0})},
             {"Kap4,1(4)", build_kaplansky({KapFamily::K4A, 4, 1})}}) {
        SimplicityResult r = simplicity_check(g);
        t.expect(r.verdict == Simplicity::simple, name + " simple: " + r.to_string());
    }
    return {13, "property suites", t.pass(), t.summary()};
}

}

CriterionResult run_criterion(int id)
{
    static const std::vector<std::function<CriterionResult()>> table = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13};
    static const std::vector<std::string> names = {"validation sweep", "dimension table", "Kaplansky identifications",
                                                   "graded Jurman algebras", "cocycle ingestion", "Jurman deforms",
                                                   "semi-triviality certificates", "integrability lemma", "quantization deform",
                                                   "Poisson family", "Kap4B deformation structure", "superization suite",
                                                   "property suites"};
    if (id < 1 || id > kCriteria)
        throw AlgebraError(fmt::format("no acceptance criterion {}", id));
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = table[std::size_t(id - 1)]();
    } catch (const std::exception& e) {
        r = {id, names[std::size_t(id - 1)], false, std::string("exception: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& progress)
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriteria; ++id) {
        out.push_back(run_criterion(id));
        if (progress)
            progress(out.back());
    }
    return out;
}

}
