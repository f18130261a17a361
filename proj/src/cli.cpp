#include "mlie/cli.hpp"

#include "mlie/acceptance.hpp"
#include "mlie/catalog.hpp"
#include "mlie/cohomology.hpp"
#include "mlie/deform.hpp"
#include "mlie/grading.hpp"
#include "mlie/superize.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace mlie::cli {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kCommands = {"build", "validate", "derived", "center", "simple", "h1", "h2",
                                            "deform", "iso", "grade", "super", "closure", "experiment"};

struct Opts {
    std::uint64_t seed = 0;
    std::string field = "gf2";
    std::string out;

    std::string kind, target;
    std::string algebra, a, b, subalgebra, cocycle, hbar;
    std::string form = "pi", variant = "full", family = "2", classical = "sl", table = "hI22";
    std::string mode, base = "kap2", alpha = "0", pairs = "2,1;2,1";
    std::vector<int> N = {2, 2}, weight, range;
    int g = 2, h = 1, m = 2, n = 4, arf = 0, eps = 0, dim = 1, a_exp = 2;
    std::uint64_t v = 1, v2 = 0;
    bool deformed = false;
    std::int64_t budget = 2'000'000;
};

json plain(const nlohmann::ordered_json& o)
{
    return json::parse(o.dump());
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path)
{
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    }
}

Field parse_field(const std::string& s)
{
    try {
        return Field::parse(s);
    } catch (const std::exception& e) {
        throw UsageError("bad --field '" + s + "' (expected gf2, gf4 or gf2k:<k>): " + e.what());
    }
}

Algebra algebra_from(const json& j, const std::string& what)
{
    if (j.is_object() && j.contains("sc"))
        return Algebra::from_json(j);
    if (j.is_object() && j.contains("algebra"))
        return algebra_from(j.at("algebra"), what);
    throw UsageError(what + " does not hold an algebra");
}

/// "catalog:<table>", "@<step>" or a JSON file in the algebra schema.
Algebra resolve_algebra(const std::string& spec, const Artifacts& art, const std::string& flag)
{
    if (spec.empty())
        throw UsageError(flag + " is required");
    if (spec.rfind("catalog:", 0) == 0)
        return catalog_algebra(spec.substr(8));
    if (spec[0] == '@') {
        auto it = art.find(spec.substr(1));
        if (it == art.end())
            throw UsageError("unknown artifact '" + spec + "'");
        return algebra_from(it->second, spec);
    }
    return algebra_from(read_json(spec), "'" + spec + "'");
}

/// "catalog:<table>:<name>", a file (raw text or JSON with "cocycle"), or inline text.
std::pair<Cochain2, bool> resolve_cocycle(const Algebra& g, const std::string& spec)
{
    if (spec.empty())
        throw UsageError("--cocycle is required");
    std::string text = spec;
    if (spec.rfind("catalog:", 0) == 0) {
        auto colon = spec.find(':', 8);
        if (colon == std::string::npos)
            throw UsageError("expected catalog:<table>:<name>");
        text = catalog_entry(spec.substr(8, colon - 8), spec.substr(colon + 1)).text;
    } else if (std::filesystem::is_regular_file(spec)) {
        text = read_file(spec);
        try {
            json j = json::parse(text);
            if (j.is_object() && j.contains("cocycle"))
                text = j.at("cocycle").get<std::string>();
        } catch (const json::exception&) {
        }
    }
    Cochain2 c = parse_cochain(g, text);
    if (!c.partial)
        return {c, false};
    Completion comp = complete_printed(g, c);
    if (!comp.example)
        throw UsageError("no cocycle matches the printed terms");
    return {*comp.example, true};
}

Variant parse_variant(const std::string& s)
{
    if (s == "full")
        return Variant::full;
    if (s == "derived")
        return Variant::derived;
    if (s == "derived_mod_center")
        return Variant::derived_mod_center;
    throw UsageError("bad --variant '" + s + "' (expected full, derived or derived_mod_center)");
}

BilinearForm parse_form(const std::string& s, int n)
{
    if (s == "pi")
        return BilinearForm::Pi(n);
    if (s == "i")
        return BilinearForm::I(n);
    throw UsageError("bad --form '" + s + "' (expected pi or i)");
}

ClassicalKind parse_classical(const std::string& s)
{
    static const std::map<std::string, ClassicalKind> kinds = {
        {"gl", ClassicalKind::gl}, {"sl", ClassicalKind::sl}, {"psl", ClassicalKind::psl},
        {"oI", ClassicalKind::oI}, {"oPi", ClassicalKind::oPi}};
    auto it = kinds.find(s);
    if (it == kinds.end())
        throw UsageError("bad --kind '" + s + "' (expected gl, sl, psl, oI or oPi)");
    return it->second;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& s)
{
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        int x = 0, y = 0;
        char comma = 0;
        std::stringstream is(item);
        if (!(is >> x >> comma >> y) || comma != ',')
            throw UsageError("bad --pairs '" + s + "' (expected g,h;g,h;...)");
        out.push_back({x, y});
    }
    return out;
}

json vec_list(const Algebra& g, const std::vector<Vec>& vs)
{
    json out = json::array();
    for (const auto& v : vs)
        out.push_back(g.format_vec(v));
    return out;
}

/// Rows of a subspace: each row is a coefficient list or a sum of labels "a+b".
Subspace parse_rows(const Algebra& g, const json& rows)
{
    const Field& F = g.field();
    std::vector<Vec> vecs;
    for (const auto& r : rows) {
        Vec v = zero_vec(g.dim());
        if (r.is_string()) {
            std::stringstream ss(r.get<std::string>());
            std::string lab;
            while (std::getline(ss, lab, '+')) {
                lab.erase(0, lab.find_first_not_of(' '));
                lab.erase(lab.find_last_not_of(' ') + 1);
                int i = g.index_of(lab);
                if (i < 0)
                    throw UsageError("unknown basis label '" + lab + "'");
                v[std::size_t(i)] = F.add(v[std::size_t(i)], 1);
            }
        } else if (r.is_array() && int(r.size()) == g.dim()) {
            for (int i = 0; i < g.dim(); ++i)
                v[std::size_t(i)] = r[std::size_t(i)].is_string() ? F.parse_elt(r[std::size_t(i)].get<std::string>())
                                                                    : r[std::size_t(i)].get<Elt>();
        } else {
            throw UsageError("subspace rows must be label sums or coefficient lists of length dim");
        }
        vecs.push_back(v);
    }
    return Subspace::span(F, g.dim(), vecs);
}

Outcome cmd_build(const Opts& o, const Field& F)
{
    const std::string& k = o.kind;
    Algebra g;
    if (k == "po")
        g = build_poisson(parse_form(o.form, int(o.N.size())), o.N, F);
    else if (k == "h")
        g = build_hamiltonian(parse_form(o.form, int(o.N.size())), o.N, parse_variant(o.variant), F);
    else if (k == "lh")
        g = build_div_free_hI(int(o.N.size()), o.N, parse_variant(o.variant), F);
    else if (k == "jurman")
        g = build_jurman(o.g, o.h, F);
    else if (k == "a2gh")
        g = build_a2gh(o.g, o.h, parse_variant(o.variant), F);
    else if (k == "multipair")
        g = build_multipair(o.form == "i" ? PairKind::I : PairKind::Pi, parse_pairs(o.pairs), parse_variant(o.variant), F);
    else if (k == "kap") {
        KapSpec s = parse_kap_family(o.family, 0, o.arf);
        s.n = (s.family == KapFamily::K1 || s.family == KapFamily::K3) ? o.n : 2 * o.m;
        g = build_kaplansky(s, F);
    } else if (k == "classical")
        g = build_classical(parse_classical(o.classical), o.n, parse_variant(o.variant), F);
    else if (k == "harmonic") {
        std::vector<int> range = o.range;
        if (range.empty())
            for (int i = 1; i <= o.m; ++i)
                range.push_back(i);
        g = build_harmonic_po(o.m, range, F);
    } else if (k == "example")
        g = build_tensor_example(o.hbar.empty() ? 0 : F.parse_elt(o.hbar), o.deformed, F);
    else if (k == "abelian")
        g = build_abelian(o.dim, F);
    else if (k == "catalog")
        g = catalog_algebra(o.table);
    else {
        static const std::vector<std::string> kinds = {"po", "h", "lh", "jurman", "a2gh", "multipair", "kap",
                                                       "classical", "harmonic", "example", "abelian", "catalog"};
        std::string s = suggest(k, kinds);
        throw UsageError("unknown algebra kind '" + k + "'" + (s.empty() ? "" : ", did you mean '" + s + "'?"));
    }
    return {plain(g.to_json()), ok};
}

Outcome cmd_validate(const Algebra& g)
{
    ValidationReport r = validate(g);
    json j{{"dim", g.dim()},         {"ok", r.ok},         {"alternation", r.alternation}, {"jacobi", r.jacobi},
           {"grading", r.grading},   {"violations", r.violations}, {"triples_checked", r.triples_checked}};
    return {j, r.ok ? ok : check_failure};
}

Outcome cmd_derived(const Algebra& g)
{
    Subspace d = derived_subalgebra(g);
    json j{{"dim", g.dim()}, {"derived_dim", d.dim()}, {"perfect", d.dim() == g.dim()},
           {"algebra", plain(restrict_to(g, d).to_json())}};
    return {j, ok};
}

Outcome cmd_center(const Algebra& g)
{
    Subspace z = center(g);
    json j{{"dim", g.dim()}, {"center_dim", z.dim()}, {"center", vec_list(g, z.basis())}};
    if (z.dim() > 0 && z.dim() < g.dim())
        j["quotient"] = plain(quotient(g, z).algebra.to_json());
    return {j, ok};
}

Outcome cmd_simple(const Algebra& g, std::uint64_t seed)
{
    SimplicityResult r = simplicity_check(g, 1000, seed);
    json j{{"dim", g.dim()}, {"verdict", r.to_string()}, {"seeds", r.seeds}};
    if (r.verdict == Simplicity::ideal_witness)
        j["ideal"] = vec_list(g, r.witness.basis());
    return {j, r.verdict == Simplicity::ideal_witness ? check_failure : ok};
}

Outcome cmd_h1(const Algebra& g)
{
    H1Dims d = compute_h1_dim(g);
    return {json{{"dim", g.dim()}, {"z", d.z}, {"b", d.b}, {"h", d.h}}, ok};
}

Outcome cmd_h2(const Algebra& g, const Opts& o)
{
    H2Options opt;
    opt.mode = o.mode.empty() ? WeightMode::z : parse_weight_mode(o.mode);
    if (!o.weight.empty())
        opt.weight = o.weight;
    opt.budget = std::max<std::int64_t>(o.budget, 20'000'000);
    H2Basis b = compute_h2(g, opt);
    json blocks = json::array();
    for (const auto& blk : b.blocks) {
        json reps = json::array();
        for (const auto& c : blk.representatives)
            reps.push_back(format_cochain(g, c));
        blocks.push_back({{"weight", blk.weight}, {"dim_c1", blk.dim_c1}, {"dim_c2", blk.dim_c2}, {"dim_z", blk.dim_z},
                          {"dim_b", blk.dim_b}, {"dim_h", blk.dim_h}, {"representatives", reps}});
    }
    json reps = json::array();
    for (std::size_t i = 0; i < b.representatives.size(); ++i)
        reps.push_back({{"weight", b.weights[i]}, {"cocycle", format_cochain(g, b.representatives[i])}});
    json j{{"mode", weight_mode_name(b.mode)}, {"dim_z", b.dim_z}, {"dim_b", b.dim_b}, {"dim_h", b.dim_h},
           {"blocks", blocks}, {"classes", reps}};
    if (opt.weight)
        j["weight"] = *opt.weight;
    return {j, ok};
}

json certificate_json(const Certificate& c, const Algebra& src)
{
    json j{{"found", c.found}, {"strategy", c.strategy}, {"detail", c.detail}, {"tried", c.tried}};
    if (c.found)
        j["map"] = vec_list(src, c.map.images);
    return j;
}

Outcome cmd_deform(const Opts& o, const Field& F, const Artifacts& art)
{
    const std::string& t = o.target;
    if (t == "jurman") {
        JurmanDeformReport r = jurman_deform_check(o.g, o.h, o.budget);
        json j{{"g", r.g}, {"h", r.h}, {"cocycle_name", r.cocycle_name}, {"cocycle", r.cocycle},
               {"non_coboundary", r.non_coboundary}, {"linear", r.linear}, {"isomorphic", r.isomorphic},
               {"method", r.method}, {"template_map_ok", r.template_map_ok}, {"template_note", r.template_note},
               {"verdict", r.isomorphic ? "deform of h' isomorphic to j(g,h)" : "no isomorphism found"}};
        return {j, r.cocycle && r.non_coboundary && r.isomorphic ? ok : check_failure};
    }
    if (t == "poisson-family") {
        Elt alpha = F.parse_elt(o.alpha);
        BilinearForm B = parse_form(o.form, int(o.N.size()));
        json j{{"alpha", F.format(alpha)}, {"N", o.N}, {"field", F.name()}};
        bool pass;
        if (alpha == 0) {
            ReindexResult r = reindex_iso(B, o.N, F);
            j["target_dim"] = r.target.dim();
            j["isomorphism"] = r.isomorphism;
            j["verdict"] = r.isomorphism ? "reindexing isomorphism verified" : "reindexing failed";
            pass = r.isomorphism;
        } else {
            Algebra fam = poisson_family(B, o.N, alpha, F);
            Algebra po = build_poisson(B, o.N, F);
            bool valid = validate(fam).ok;
            std::string why;
            bool iso = valid && is_isomorphism(fam, po, f_alpha_map(fam, poisson_shape(o.N, o.form == "pi"), alpha), &why);
            j["valid"] = valid;
            j["isomorphism"] = iso;
            j["verdict"] = iso ? "F_alpha isomorphism verified" : "F_alpha failed: " + why;
            pass = iso;
        }
        return {j, pass ? ok : check_failure};
    }
    if (t == "quantization") {
        QuantizationReport r = quantization_deform_check(o.a_exp, o.budget);
        json j{{"cocycle", r.cocycle}, {"non_coboundary", r.non_coboundary}, {"linear", r.linear},
               {"fingerprints_agree", r.fingerprints_agree}, {"fingerprint_note", r.fingerprint_note},
               {"iso_status", r.iso.status_name()}, {"iso_reason", r.iso.reason},
               {"verdict", r.iso.status == IsoStatus::found ? "isomorphic" : "not shown isomorphic"}};
        return {j, r.iso.status == IsoStatus::found ? ok : check_failure};
    }
    if (t == "kap4b") {
        Kap4bDeformReport r = kap4b_as_deform(o.m);
        bool pass = r.family_valid && r.linear_coboundary && r.quadratic_cocycle && r.quadratic_non_coboundary &&
                    r.family_at_one_matches;
        json j{{"m", r.m}, {"family_valid", r.family_valid}, {"linear_coboundary", r.linear_coboundary},
               {"quadratic_cocycle", r.quadratic_cocycle}, {"quadratic_non_coboundary", r.quadratic_non_coboundary},
               {"family_at_one_matches", r.family_at_one_matches}, {"notes", r.notes},
               {"verdict", pass ? "deform with coboundary linear part" : "check failed"}};
        return {j, pass ? ok : check_failure};
    }
    if (t == "integrability") {
        json rows = json::array();
        for (const auto& r : catalog_integrability(o.table))
            rows.push_back({{"name", r.name}, {"full_weight", r.full_weight}, {"block_dim", r.block_dim},
                            {"classes", r.classes}, {"obstructed", r.obstructed}, {"not_integrated", r.not_integrated},
                            {"consistent", r.consistent}});
        return {json{{"table", o.table}, {"rows", rows}}, ok};
    }
    if (!t.empty() && t != "cocycle") {
        static const std::vector<std::string> targets = {"cocycle", "jurman", "poisson-family", "quantization", "kap4b",
                                                         "integrability"};
        std::string s = suggest(t, targets);
        throw UsageError("unknown deform target '" + t + "'" + (s.empty() ? "" : ", did you mean '" + s + "'?"));
    }

    Algebra g = resolve_algebra(o.algebra, art, "--algebra");
    auto [c, completed] = resolve_cocycle(g, o.cocycle);
    json j{{"cocycle", format_cochain(g, c)}, {"completed_from_printed", completed}, {"is_cocycle", is_cocycle(g, c)}};
    if (!is_cocycle(g, c)) {
        j["verdict"] = verdict_name(DeformVerdict::not_cocycle);
        return {j, check_failure};
    }
    j["non_coboundary"] = !is_coboundary(g, c);
    if (auto w = full_weight_of(g, c))
        j["weight"] = *w;
    DeformFamily fam = deform_bracket(g, c);
    ObstructionReport ob = obstruction_poly(fam);
    j["verdict"] = verdict_name(ob.verdict);
    j["first_nonzero"] = ob.first_nonzero;
    j["class_nonzero"] = ob.class_nonzero;
    if (ob.verdict != DeformVerdict::linear_global) {
        Integration in = integrate(g, c);
        j["integrated"] = in.integrated;
        j["failed_order"] = in.failed_order;
        json series = json::array();
        for (const auto& s : in.series)
            series.push_back(format_cochain(g, s));
        j["series"] = series;
        if (in.integrated && in.series.size() > 1)
            fam = deform_series(g, in.series);
    }
    if (!o.hbar.empty()) {
        Elt hb = F.parse_elt(o.hbar);
        Algebra sp = fam.specialize(F, hb);
        j["hbar"] = F.format(hb);
        j["specialized"] = plain(sp.to_json());
        std::vector<NamedOperator> ops;
        if (g.dim() > 0 && g.grading().arity() == 2)
            try {
                ops = derivative_operators(g, poisson_shape({2, 2}, true));
            } catch (const std::exception&) {
            }
        Certificate cert = semitrivial_certificate(fam, F, hb, ops, o.budget);
        j["certificate"] = certificate_json(cert, sp);
        if (!cert.found)
            for (const auto& op : ops) {
                ConjugatedFamily cf = conjugated_family_certificate(g, op, c, F, hb);
                if (cf.derivation && cf.nilpotent && cf.leading_in_class && cf.cert.found) {
                    j["conjugated_family"] = {{"operator", op.name},
                                              {"polynomial_in_h", cf.polynomial_in_h},
                                              {"certificate", certificate_json(cf.cert, cf.family.specialize(F, F.sqrt(hb)))}};
                    break;
                }
            }
    }
    return {j, ok};
}

Outcome cmd_iso(const Opts& o, const Artifacts& art)
{
    Algebra a = resolve_algebra(o.a, art, "--a"), b = resolve_algebra(o.b, art, "--b");
    IsoResult r = search_isomorphism(a, b, o.budget);
    json j{{"status", r.status_name()}, {"reason", r.reason}, {"nodes", r.nodes}};
    if (r.status == IsoStatus::found) {
        std::string why;
        j["verified"] = is_isomorphism(a, b, r.map, &why);
        json m = json::object();
        for (int i = 0; i < a.dim(); ++i)
            m[a.label(i)] = b.format_vec(r.map.images[std::size_t(i)]);
        j["map"] = m;
    }
    return {j, r.status == IsoStatus::found ? ok : check_failure};
}

json filtration_json(const Algebra& g, const Filtration& f, const Graded& gr)
{
    std::string why;
    bool okf = check_filtration(g, f, &why);
    json j{{"depth", f.depth}, {"layer_dims", f.dims()}, {"filtration_ok", okf},
           {"degrees", gr.degree}, {"graded", plain(gr.algebra.to_json())}};
    if (!okf)
        j["filtration_violation"] = why;
    if (f.maximality_checked)
        j["l0_maximal"] = f.l0_maximal;
    return j;
}

Outcome cmd_grade(const Opts& o, const Artifacts& art)
{
    if (o.target == "jurman") {
        Algebra j = build_jurman(o.g, o.h);
        Filtration f = weisfeiler_filtration(j, jurman_L0(j, o.g, o.h));
        Graded gr = associated_graded(j, f);
        Algebra hp = build_hamiltonian(BilinearForm::Pi(2), {o.g, o.h + 1}, Variant::derived);
        std::string why;
        bool iso = is_isomorphism(gr.algebra, hp, jurman_graded_map(gr, hp, o.g, o.h), &why);
        json out = filtration_json(j, f, gr);
        out["graded_iso_h_prime"] = iso;
        if (!iso)
            out["graded_iso_note"] = why;
        return {out, iso && out["filtration_ok"].get<bool>() ? ok : check_failure};
    }
    Algebra g = resolve_algebra(o.algebra, art, "--algebra");
    if (o.target == "weisfeiler") {
        if (o.subalgebra.empty())
            throw UsageError("--subalgebra is required");
        json rows = o.subalgebra[0] == '@' ? art.at(o.subalgebra.substr(1)) : read_json(o.subalgebra);
        Subspace L0 = parse_rows(g, rows);
        if (!is_subalgebra(g, L0))
            throw UsageError("the rows do not span a subalgebra");
        Filtration f = weisfeiler_filtration(g, L0);
        Outcome out{filtration_json(g, f, associated_graded(g, f)), ok};
        if (!out.report["filtration_ok"].get<bool>())
            out.code = check_failure;
        return out;
    }
    if (o.target == "weights" || o.target.empty()) {
        WeightMode mode = o.mode.empty() ? WeightMode::z : parse_weight_mode(o.mode);
        json w = json::object();
        if (!g.grading().empty())
            for (int i = 0; i < g.dim(); ++i)
                w[g.label(i)] = project_weight(g.grading(), g.weight(i), mode);
        return {json{{"mode", weight_mode_name(mode)}, {"graded", !g.grading().empty()}, {"weights", w}}, ok};
    }
    std::string s = suggest(o.target, {"weisfeiler", "jurman", "weights"});
    throw UsageError("unknown grade target '" + o.target + "'" + (s.empty() ? "" : ", did you mean '" + s + "'?"));
}

json super_check_json(const SuperCheck& r)
{
    return {{"ok", r.ok}, {"parity_rules", r.parity_rules}, {"jacobi", r.jacobi}, {"squaring", r.squaring},
            {"violations", r.violations}};
}

ClosureAlgebra closure_of(const std::string& base, int m, int arf, const Field& F)
{
    if (base == "kap2" || base == "2")
        return restricted_closure(KapSpec{KapFamily::K2, 2 * m, 0}, F);
    if (base == "kap4" || base == "4A")
        return restricted_closure(KapSpec{KapFamily::K4A, 2 * m, arf}, F);
    throw UsageError("bad base '" + base + "' (expected kap2 or kap4)");
}

Outcome cmd_super(const Opts& o, const Field& F)
{
    bool kap4 = o.base == "kap4" || o.base == "4A";
    if (o.v2 != 0) {
        ClosureAlgebra c = closure_of(o.base, o.m, o.arf, Field::gf2());
        std::optional<QuadraticForm> Q;
        if (kap4)
            Q = QuadraticForm::standard(o.m, o.arf);
        SuperEquivalence e = superization_equivalence(c, Q, o.v, o.v2, o.budget);
        json j{{"base", o.base}, {"m", o.m}, {"v", o.v}, {"v2", o.v2}, {"found", e.found}, {"exhaustive", e.exhaustive},
               {"M", e.M}, {"nodes", e.nodes}, {"note", e.note}};
        return {j, e.found ? ok : check_failure};
    }
    SuperSpec s;
    s.m = o.m;
    s.A = o.arf;
    s.eps = o.eps;
    s.v = o.v;
    std::string mode = o.mode.empty() ? "linear" : o.mode;
    if (kap4)
        s.kind = SuperKind::S4;
    else if (mode == "linear")
        s.kind = SuperKind::LS2;
    else if (mode == "nonlinear")
        s.kind = SuperKind::S2;
    else
        throw UsageError("bad --mode '" + mode + "' (expected linear or nonlinear)");
    SuperAlgebra S = build_superization(s, F);
    SuperCheck r = check_super(S);
    json j = plain(S.to_json());
    j["dim_even"] = S.dim_even();
    j["dim_odd"] = S.dim_odd();
    j["check"] = super_check_json(r);
    Fingerprint fp = fingerprint(S.algebra);
    j["fingerprint"] = {{"dim", fp.dim},           {"derived_series", fp.derived_series}, {"lower_central", fp.lower_central},
                        {"center", fp.center},     {"derivations", fp.derivations}};
    return {j, r.ok ? ok : check_failure};
}

Outcome cmd_closure(const Opts& o, const Field& F)
{
    std::string base = o.family == "2" ? "kap2" : o.family == "4A" ? "kap4" : o.family;
    ClosureAlgebra c = closure_of(base, o.m, o.arf, F);
    std::string why;
    bool restricted = check_restricted(c, &why);
    json j{{"base_dim", c.base_dim}, {"algebra", plain(c.algebra.to_json())}, {"squares", vec_list(c.algebra, c.squares)},
           {"restricted", restricted}};
    if (!restricted)
        j["violation"] = why;
    return {j, restricted ? ok : check_failure};
}

Outcome cmd_paper_suite()
{
    json rows = json::array();
    int passed = 0;
    run_acceptance([&](const CriterionResult& r) {
        std::cerr << fmt::format("criterion {:2} {} {} [{:.2f}s]\n", r.id, r.pass ? "PASS" : "FAIL", r.name, r.seconds);
        rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        passed += r.pass ? 1 : 0;
    });
    json j{{"name", "paper-suite"}, {"criteria", rows}, {"passed", passed}, {"total", kCriteria},
           {"pass", passed == kCriteria}};
    return {j, passed == kCriteria ? ok : check_failure};
}

void add_algebra(CLI::App* sub, Opts& o)
{
    sub->add_option("--algebra", o.algebra, "Algebra JSON file, catalog:<table> or @<step>");
}

/// Long option names of the subcommand that was selected, or of the app.
std::vector<std::string> option_names(const CLI::App& app)
{
    std::vector<std::string> names;
    const CLI::App* scope = &app;
    for (const CLI::App* s : app.get_subcommands())
        scope = s;
    for (const CLI::Option* opt : scope->get_options())
        for (const auto& l : opt->get_lnames())
            names.push_back("--" + l);
    if (scope != &app)
        for (const CLI::Option* opt : app.get_options())
            for (const auto& l : opt->get_lnames())
                names.push_back("--" + l);
    return names;
}

std::string usage_message(const CLI::App& app, const CLI::ParseError& e, const std::vector<std::string>& args)
{
    std::string msg = dynamic_cast<const CLI::ExtrasError*>(&e) ? "unrecognized arguments" : e.what();
    if (app.get_subcommands().empty()) {
        for (const auto& a : args)
            if (!a.empty() && a[0] != '-') {
                std::string s = suggest(a, kCommands);
                if (!s.empty() && s != a)
                    msg += fmt::format("; unknown command '{}', did you mean '{}'?", a, s);
                break;
            }
        return msg;
    }
    auto names = option_names(app);
    for (const auto& a : args) {
        if (a.rfind("--", 0) != 0)
            continue;
        std::string flag = a.substr(0, a.find('='));
        if (std::find(names.begin(), names.end(), flag) != names.end())
            continue;
        std::string s = suggest(flag, names);
        msg += fmt::format("; unknown flag '{}'{}", flag, s.empty() ? "" : ", did you mean '" + s + "'?");
    }
    return msg;
}

struct Parsed {
    std::unique_ptr<CLI::App> app;
    Opts opts;
    std::string command;
};

std::unique_ptr<CLI::App> make_app(Opts& o)
{
    auto app = std::make_unique<CLI::App>("Modular Lie algebras over GF(2^k): builders, cohomology, deforms, superizations",
                                          "mlie");
    // --h is the Jurman parameter, so help is --help only
    app->set_help_flag("--help", "Print this help message and exit");
    app->require_subcommand(1, 1);
    app->fallthrough();
    app->add_option("--seed", o.seed, "Random seed (default 0)");
    app->add_option("--field", o.field, "gf2, gf4 or gf2k:<k>");
    app->add_option("--out", o.out, "Also write the report to this file");

    auto* build = app->add_subcommand("build", "Build an algebra and print it in the algebra JSON schema");
    build->add_option("what", o.kind, "po, h, lh, jurman, a2gh, multipair, kap, classical, harmonic, example, abelian, catalog")
        ->required();
    build->add_option("--form", o.form, "pi or i");
    build->add_option("--N", o.N, "Heights, e.g. 2,2")->delimiter(',');
    build->add_option("--variant", o.variant, "full, derived or derived_mod_center");
    build->add_option("--g", o.g);
    build->add_option("--h", o.h);
    build->add_option("--pairs", o.pairs, "g,h;g,h;...");
    build->add_option("--family", o.family, "Kaplansky family: 1, 2, 3, 4A, 4B");
    build->add_option("--m", o.m);
    build->add_option("--n", o.n);
    build->add_option("--arf", o.arf);
    build->add_option("--kind", o.classical, "gl, sl, psl, oI, oPi");
    build->add_option("--range", o.range, "Summation range of the harmonic condition (default 1..m)")->delimiter(',');
    build->add_option("--hbar", o.hbar);
    build->add_flag("--deformed", o.deformed);
    build->add_option("--dim", o.dim);
    build->add_option("--table", o.table, "gh21, gh31 or hI22");

    for (auto [name, help] : std::vector<std::pair<const char*, const char*>>{
             {"validate", "Check anticommutativity, Jacobi and the grading"},
             {"derived", "Derived subalgebra"},
             {"center", "Center and quotient by it"},
             {"simple", "Simplicity check"},
             {"h1", "Dimensions of Z1, B1, H1"}}) {
        add_algebra(app->add_subcommand(name, help), o);
    }

    auto* h2 = app->add_subcommand("h2", "Second cohomology by weight blocks");
    add_algebra(h2, o);
    h2->add_option("--weight", o.weight, "Weight of the block, e.g. 4,-2 (use --weight=-4,2 for a leading minus)")
        ->delimiter(',');
    h2->add_option("--mode", o.mode, "z, mod2 or outer");
    h2->add_option("--budget", o.budget);

    auto* deform = app->add_subcommand("deform", "Deformation checks");
    deform->add_option("target", o.target, "cocycle (default), jurman, poisson-family, quantization, kap4b, integrability");
    add_algebra(deform, o);
    deform->add_option("--cocycle", o.cocycle, "Cocycle text, file or catalog:<table>:<name>");
    deform->add_option("--hbar", o.hbar, "Specialize at this field element");
    deform->add_option("--g", o.g);
    deform->add_option("--h", o.h);
    deform->add_option("--m", o.m);
    deform->add_option("--a", o.a_exp, "Exponent of the quantization example");
    deform->add_option("--alpha", o.alpha);
    deform->add_option("--N", o.N)->delimiter(',');
    deform->add_option("--form", o.form);
    deform->add_option("--table", o.table);
    deform->add_option("--budget", o.budget);

    auto* iso = app->add_subcommand("iso", "Isomorphism search with verification");
    iso->add_option("--a", o.a, "First algebra")->required();
    iso->add_option("--b", o.b, "Second algebra")->required();
    iso->add_option("--budget", o.budget);

    auto* grade = app->add_subcommand("grade", "Gradings and filtrations");
    grade->add_option("target", o.target, "weights (default), weisfeiler, jurman");
    add_algebra(grade, o);
    grade->add_option("--subalgebra", o.subalgebra, "JSON file with the rows spanning L0");
    grade->add_option("--mode", o.mode);
    grade->add_option("--g", o.g);
    grade->add_option("--h", o.h);

    auto* super = app->add_subcommand("super", "Superizations of Kaplansky algebras");
    super->add_option("--base", o.base, "kap2 or kap4");
    super->add_option("--m", o.m);
    super->add_option("--mode", o.mode, "linear or nonlinear (kap2)");
    super->add_option("--arf", o.arf);
    super->add_option("--eps", o.eps);
    super->add_option("--v", o.v, "Parity vector as an integer bitmask");
    super->add_option("--v2", o.v2, "Second parity vector: search for an equivalence");
    super->add_option("--budget", o.budget);

    auto* closure = app->add_subcommand("closure", "Restricted closure of Kap2 or Kap4A");
    closure->add_option("--family", o.family, "2 or 4A");
    closure->add_option("--m", o.m);
    closure->add_option("--arf", o.arf);

    auto* exp = app->add_subcommand("experiment", "Run paper-suite or a declarative experiment file");
    exp->add_option("target", o.target, "paper-suite or a JSON file")->required();
    return app;
}

Outcome dispatch(const std::string& cmd, Opts& o, const Artifacts& art)
{
    Field F = parse_field(o.field);
    if (cmd == "build")
        return cmd_build(o, F);
    if (cmd == "validate")
        return cmd_validate(resolve_algebra(o.algebra, art, "--algebra"));
    if (cmd == "derived")
        return cmd_derived(resolve_algebra(o.algebra, art, "--algebra"));
    if (cmd == "center")
        return cmd_center(resolve_algebra(o.algebra, art, "--algebra"));
    if (cmd == "simple")
        return cmd_simple(resolve_algebra(o.algebra, art, "--algebra"), o.seed);
    if (cmd == "h1")
        return cmd_h1(resolve_algebra(o.algebra, art, "--algebra"));
    if (cmd == "h2")
        return cmd_h2(resolve_algebra(o.algebra, art, "--algebra"), o);
    if (cmd == "deform")
        return cmd_deform(o, F, art);
    if (cmd == "iso")
        return cmd_iso(o, art);
    if (cmd == "grade")
        return cmd_grade(o, art);
    if (cmd == "super")
        return cmd_super(o, F);
    if (cmd == "closure")
        return cmd_closure(o, F);
    if (cmd == "experiment") {
        if (o.target == "paper-suite")
            return cmd_paper_suite();
        return run_experiment(read_json(o.target), o.seed, o.field);
    }
    throw UsageError("unknown command '" + cmd + "'");
}

/// Value at a dotted path; array elements are addressed by index.
const json* lookup(const json& root, const std::string& path)
{
    const json* cur = &root;
    std::stringstream ss(path);
    std::string key;
    while (std::getline(ss, key, '.')) {
        if (cur->is_object()) {
            auto it = cur->find(key);
            if (it == cur->end())
                return nullptr;
            cur = &*it;
        } else if (cur->is_array()) {
            if (key.empty() || !std::all_of(key.begin(), key.end(), ::isdigit))
                return nullptr;
            std::size_t i = std::stoul(key);
            if (i >= cur->size())
                return nullptr;
            cur = &(*cur)[i];
        } else {
            return nullptr;
        }
    }
    return cur;
}

}

std::string suggest(const std::string& word, const std::vector<std::string>& candidates)
{
    auto distance = [](const std::string& a, const std::string& b) {
        std::vector<std::size_t> row(b.size() + 1);
        for (std::size_t j = 0; j <= b.size(); ++j)
            row[j] = j;
        for (std::size_t i = 1; i <= a.size(); ++i) {
            std::size_t diag = row[0];
            row[0] = i;
            for (std::size_t j = 1; j <= b.size(); ++j) {
                std::size_t up = row[j];
                row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
                diag = up;
            }
        }
        return row[b.size()];
    };
    std::string best;
    std::size_t bestd = std::max<std::size_t>(2, word.size() / 3) + 1;
    for (const auto& c : candidates) {
        std::size_t d = distance(word, c);
        if (d < bestd) {
            bestd = d;
            best = c;
        }
    }
    return best;
}

Outcome execute(const std::vector<std::string>& args, const Artifacts& artifacts)
{
    Opts o;
    auto app = make_app(o);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app->parse(rev);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* scope = app.get();
        for (const CLI::App* s : app->get_subcommands())
            scope = s;
        return {json{{"help", scope->help()}}, ok};
    } catch (const CLI::ParseError& e) {
        throw UsageError(usage_message(*app, e, args));
    }
    std::string cmd = app->get_subcommands().front()->get_name();
    Outcome out;
    try {
        out = dispatch(cmd, o, artifacts);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(cmd + ": " + e.what());
    }
    out.report["command"] = cmd;
    out.report["seed"] = o.seed;
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f)
            throw UsageError("cannot write '" + o.out + "'");
        f << out.report.dump(2) << "\n";
    }
    return out;
}

Outcome run_experiment(const json& e, std::uint64_t seed, const std::string& field)
{
    if (!e.is_object())
        throw UsageError("an experiment is a JSON object");
    std::string name = e.value("name", std::string("experiment"));
    json steps = e.value("steps", json::array());
    json expectations = e.value("expectations", json::array());

    // declared artifacts, checked before anything runs
    std::set<std::string> declared;
    std::vector<std::pair<std::string, std::vector<std::string>>> plan;
    for (const auto& s : steps) {
        std::string id = s.at("id").get<std::string>();
        std::vector<std::string> args;
        if (s.at("command").is_array())
            args = s.at("command").get<std::vector<std::string>>();
        else {
            args.push_back(s.at("command").get<std::string>());
            for (const auto& a : s.value("args", json::array()))
                args.push_back(a.get<std::string>());
        }
        if (args.empty() || args[0] == "experiment")
            throw UsageError("step '" + id + "' must run a command other than experiment");
        for (const auto& a : args)
            if (!a.empty() && a[0] == '@' && !declared.count(a.substr(1)))
                throw UsageError("step '" + id + "' references undeclared artifact '" + a + "'");
        if (!declared.insert(id).second)
            throw UsageError("duplicate step id '" + id + "'");
        args.push_back("--seed=" + std::to_string(seed));
        if (std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.rfind("--field", 0) == 0; }) ==
            args.end())
            args.push_back("--field=" + field);
        plan.push_back({id, args});
    }
    for (const auto& x : expectations) {
        std::string path = x.at("path").get<std::string>();
        std::string root = path.substr(0, path.find('.'));
        if (!declared.count(root))
            throw UsageError("expectation '" + path + "' does not start with a declared step id");
        if (!x.contains("equals") && !x.contains("approx"))
            throw UsageError("expectation '" + path + "' needs \"equals\" or \"approx\"");
    }

    json warnings = json::array();
    if (plan.empty())
        warnings.push_back("experiment has no steps; vacuous pass");
    else if (expectations.empty())
        warnings.push_back("experiment has no expectations; vacuous pass");

    Artifacts art;
    json step_reports = json::array();
    for (const auto& [id, args] : plan) {
        std::cerr << "step " << id << ": " << args[0] << "\n";
        json rec{{"id", id}, {"args", args}};
        try {
            Outcome r = execute(args, art);
            art[id] = r.report;
            rec["exit_code"] = r.code;
        } catch (const UsageError& err) {
            art[id] = json{{"error", err.what()}};
            rec["exit_code"] = int(usage_error);
            rec["error"] = err.what();
        }
        step_reports.push_back(rec);
    }

    json results = json::array(), failures = json::array();
    for (const auto& x : expectations) {
        std::string path = x.at("path").get<std::string>();
        std::string root = path.substr(0, path.find('.'));
        std::string rest = path.size() > root.size() ? path.substr(root.size() + 1) : "";
        const json* actual = rest.empty() ? &art.at(root) : lookup(art.at(root), rest);
        bool pass = false;
        json expected;
        if (x.contains("equals")) {
            expected = x.at("equals");
            pass = actual && *actual == expected;
        } else {
            double want = x.at("approx").get<double>(), tol = x.value("tol", 1e-9);
            expected = fmt::format("{} +- {}", want, tol);
            pass = actual && actual->is_number() && std::abs(actual->get<double>() - want) <= tol;
        }
        json got = actual ? *actual : json("<missing>");
        results.push_back({{"path", path}, {"expected", expected}, {"actual", got}, {"pass", pass}});
        if (!pass) {
            std::string diff = fmt::format("{}: expected {}, got {}", path, expected.dump(), got.dump());
            std::cerr << "FAIL " << diff << "\n";
            failures.push_back({{"path", path}, {"expected", expected}, {"actual", got}, {"diff", diff}});
        }
    }
    bool pass = failures.empty();
    for (const auto& w : warnings)
        std::cerr << "warning: " << w.get<std::string>() << "\n";
    json j{{"name", name}, {"steps", step_reports}, {"expectations", results}, {"failures", failures},
           {"warnings", warnings}, {"pass", pass}};
    return {j, pass ? ok : check_failure};
}

int run(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        Outcome out = execute(args);
        if (out.report.contains("help")) {
            std::cout << out.report["help"].get<std::string>();
            return ok;
        }
        std::cout << out.report.dump(2) << "\n";
        return out.code;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run 'mlie --help' for usage\n";
        return usage_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage_error;
    }
}

}
