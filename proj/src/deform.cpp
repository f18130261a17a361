#include "mlie/deform.hpp"

#include "mlie/catalog.hpp"
#include "mlie/grading.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace mlie {

namespace {

void add_into(const Field& F, Cochain3& acc, const Cochain3& x)
{
    for (auto& [abc, v] : x.terms)
        acc.add(abc[0], abc[1], abc[2], v, F);
}

std::vector<int> add_powers(const std::vector<int>& a, const std::vector<int>& b)
{
    std::vector<int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

int total(const std::vector<int>& p)
{
    return std::accumulate(p.begin(), p.end(), 0);
}

Mat lift_mat(const Mat& m, const Field& F)
{
    Mat r(F, m.nrows, m.ncols);
    r.a = m.a;
    return r;
}

void check_embeddable(const Field& from, const Field& to)
{
    if (from != to && !from.is_prime())
        throw AlgebraError(fmt::format("cannot lift from {} to {}", from.name(), to.name()));
}

}

Algebra lift_field(const Algebra& g, const Field& F)
{
    check_embeddable(g.field(), F);
    if (g.field() == F)
        return g;
    Algebra r(F, g.dim(), g.labels());
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j)
            if (!g.bracket(i, j).empty())
                r.set_bracket(i, j, g.bracket(i, j));
    if (!g.grading().empty())
        r.set_grading(g.grading());
    return r;
}

Cochain2 lift_field(const Cochain2& c, const Field& F)
{
    (void)F;
    return c; // entries of GF(2) cochains are valid in every GF(2^k)
}

Poly DeformFamily::coefficient(int i, int j, int k) const
{
    if (params.size() != 1)
        throw AlgebraError("polynomial coefficients need a one-parameter family");
    Poly r;
    if (i == j)
        return r;
    for (auto& t : base.bracket(std::min(i, j), std::max(i, j)))
        if (t.k == k && t.c)
            r.set(0, true);
    for (auto& pc : pieces) {
        Elt c = pc.c.value(i, j)[std::size_t(k)];
        if (c > 1)
            throw AlgebraError("family coefficients must lie in GF(2)");
        if (c)
            r.set(pc.power[0], !r.coeff(pc.power[0]));
    }
    return r;
}

Algebra DeformFamily::specialize(const Field& F, const std::vector<Elt>& values) const
{
    if (values.size() != params.size())
        throw AlgebraError(fmt::format("family has {} parameters, {} values given", params.size(), values.size()));
    for (Elt v : values)
        if (!F.valid(v))
            throw AlgebraError("parameter value outside the field");
    Algebra b = lift_field(base, F);
    int n = b.dim();
    std::vector<Elt> scal;
    for (auto& pc : pieces) {
        Elt s = 1;
        for (std::size_t a = 0; a < values.size(); ++a)
            s = F.mul(s, F.pow(values[a], std::uint64_t(pc.power[a])));
        scal.push_back(s);
    }
    Algebra r(F, n, b.labels());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec v = b.bracket_vec(i, j);
            for (std::size_t a = 0; a < pieces.size(); ++a)
                if (scal[a]) {
                    auto it = pieces[a].c.terms.find({i, j});
                    if (it != pieces[a].c.terms.end())
                        axpy(F, v, scal[a], it->second);
                }
            if (!is_zero(v))
                r.set_bracket(i, j, v);
        }
    bool all_zero = std::all_of(values.begin(), values.end(), [](Elt v) { return v == 0; });
    if (all_zero && !b.grading().empty())
        r.set_grading(b.grading());
    return r;
}

DeformFamily deform_bracket(const Algebra& g, const Cochain2& c, const std::string& param)
{
    if (c.dim != g.dim())
        throw AlgebraError("cochain dimension does not match the algebra");
    if (!is_cocycle(g, c))
        throw AlgebraError("cochain is not a cocycle: d2(c) != 0");
    DeformFamily f;
    f.base = g;
    f.params = {param};
    if (!c.is_zero())
        f.pieces.push_back({{1}, c});
    return f;
}

DeformFamily deform_series(const Algebra& g, const std::vector<Cochain2>& cs, const std::string& param)
{
    DeformFamily f;
    f.base = g;
    f.params = {param};
    for (std::size_t k = 0; k < cs.size(); ++k)
        if (!cs[k].is_zero())
            f.pieces.push_back({{int(k) + 1}, cs[k]});
    return f;
}

DeformFamily deform_multi(const Algebra& g, const std::vector<Cochain2>& cs, const std::vector<std::string>& params)
{
    if (cs.size() != params.size())
        throw AlgebraError("one parameter name per cochain");
    DeformFamily f;
    f.base = g;
    f.params = params;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        std::vector<int> p(cs.size(), 0);
        p[k] = 1;
        if (!cs[k].is_zero())
            f.pieces.push_back({p, cs[k]});
    }
    return f;
}

std::string verdict_name(DeformVerdict v)
{
    switch (v) {
    case DeformVerdict::linear_global:
        return "linear-global";
    case DeformVerdict::obstructed:
        return "obstructed";
    case DeformVerdict::needs_correction:
        return "needs-correction";
    case DeformVerdict::not_cocycle:
        return "not-cocycle";
    }
    return "?";
}

ObstructionReport obstruction_poly(const DeformFamily& f, std::int64_t budget)
{
    const Algebra& g = f.base;
    const Field& F = g.field();
    std::vector<DeformFamily::Piece> all;
    all.push_back({std::vector<int>(f.params.size(), 0), bracket_cochain(g)});
    for (auto& p : f.pieces)
        all.push_back(p);
    ObstructionReport r;
    std::map<std::vector<int>, Cochain3> acc;
    for (auto& a : all)
        for (auto& b : all) {
            auto key = add_powers(a.power, b.power);
            auto it = acc.try_emplace(key, Cochain3(g.dim())).first;
            add_into(F, it->second, circle(g, a.c, b.c));
        }
    for (auto& [k, c] : acc)
        if (!c.is_zero())
            r.coefficients.emplace(k, c);
    if (r.coefficients.empty()) {
        r.verdict = DeformVerdict::linear_global;
        return r;
    }
    auto first = std::min_element(r.coefficients.begin(), r.coefficients.end(), [](auto& x, auto& y) {
        return total(x.first) < total(y.first) || (total(x.first) == total(y.first) && x.first < y.first);
    });
    r.first_nonzero = first->first;
    int deg = total(first->first);
    if (deg <= 1) {
        r.verdict = DeformVerdict::not_cocycle;
        r.class_nonzero = true;
        return r;
    }
    r.class_nonzero = !d2_preimage(g, first->second, budget).has_value();
    r.verdict = r.class_nonzero ? DeformVerdict::obstructed : DeformVerdict::needs_correction;
    return r;
}

Integration integrate(const Algebra& g, const Cochain2& c, int max_order, std::int64_t budget)
{
    const Field& F = g.field();
    Integration out;
    std::vector<Cochain2> cs{Cochain2(g.dim()), c}; // index = order
    int last = c.is_zero() ? 0 : 1;
    for (int n = 2; n <= 2 * last && n <= max_order; ++n) {
        Cochain3 R(g.dim());
        for (int i = 1; i < n; ++i)
            if (!cs[std::size_t(i)].is_zero() && !cs[std::size_t(n - i)].is_zero())
                add_into(F, R, circle(g, cs[std::size_t(i)], cs[std::size_t(n - i)]));
        Cochain2 next(g.dim());
        if (!R.is_zero()) {
            auto x = d2_preimage(g, R, budget);
            if (!x) {
                out.failed_order = n;
                cs.erase(cs.begin());
                out.series = cs;
                return out;
            }
            next = *x;
        }
        cs.push_back(next);
        if (!next.is_zero())
            last = n;
    }
    if (2 * last > max_order && last > 0) {
        out.failed_order = max_order + 1;
        cs.erase(cs.begin());
        out.series = cs;
        return out;
    }
    cs.erase(cs.begin());
    while (!cs.empty() && cs.back().is_zero())
        cs.pop_back();
    out.series = cs;
    out.integrated = true;
    return out;
}

std::vector<Cochain2> cohomologous_cocycles(const Algebra& g, const Cochain2& c, int max_bits)
{
    auto w = full_weight_of(g, c);
    if (!w)
        throw AlgebraError("cocycle is not homogeneous");
    auto gens = coboundary_generators(g, *w);
    if (int(gens.size()) > max_bits)
        gens.resize(std::size_t(max_bits));
    std::vector<Cochain2> out{c};
    Cochain2 cur = c;
    std::uint64_t N = std::uint64_t{1} << gens.size();
    for (std::uint64_t m = 1; m < N; ++m) {
        cur = cur.plus(gens[std::size_t(std::countr_zero(m))], g.field());
        out.push_back(cur);
    }
    return out;
}

std::optional<Cochain2> linear_representative(const Algebra& g, const Cochain2& c, int max_bits)
{
    for (auto& x : cohomologous_cocycles(g, c, max_bits))
        if (circle(g, x, x).is_zero())
            return x;
    return std::nullopt;
}

bool square_class_vanishes(const Algebra& g, const Cochain2& c, std::int64_t budget)
{
    return d2_preimage(g, circle(g, c, c), budget).has_value();
}

std::vector<NamedOperator> derivative_operators(const Algebra& g, const ShapePtr& S)
{
    const Field& F = g.field();
    int n = g.dim();
    std::vector<Mono> monos;
    for (int i = 0; i < n; ++i)
        monos.push_back(S->parse(g.label(i)));
    std::vector<NamedOperator> out;
    for (int v = 0; v < S->nvars(); ++v)
        for (int s = 0; (1 << s) <= S->max_exp(v); ++s) {
            int k = 1 << s;
            Mat D(F, n, n);
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                DPoly img = DPoly::mono(F, S, monos[std::size_t(i)]).partial_pow(v, k);
                for (auto& [m, c] : img.terms()) {
                    int r = g.index_of(S->format(m));
                    if (r < 0) {
                        if (m == 0)
                            continue; // constants are dropped
                        ok = false;
                        break;
                    }
                    D.at(r, i) ^= c;
                }
            }
            if (ok)
                out.push_back({k == 1 ? fmt::format("d_{}", S->names()[std::size_t(v)])
                                      : fmt::format("d_{}^{}", S->names()[std::size_t(v)], k),
                               D});
        }
    return out;
}

namespace {

LinearMap to_map(const Mat& M)
{
    LinearMap m;
    for (int c = 0; c < M.ncols; ++c)
        m.images.push_back(M.col(c));
    return m;
}

}

Certificate semitrivial_certificate(const DeformFamily& f, const Field& F, Elt hbar, const std::vector<NamedOperator>& ops,
                                    std::int64_t budget)
{
    Certificate cert;
    cert.field = F;
    cert.hbar = hbar;
    Algebra A = f.specialize(F, hbar);
    Algebra B = lift_field(f.base, F);
    int n = A.dim();
    std::vector<std::pair<std::string, Elt>> scalars{{"sqrt(h)", F.sqrt(hbar)}};
    if (F.sqrt(hbar) != hbar)
        scalars.push_back({"h", hbar});
    for (auto& op : ops) {
        Mat D = lift_mat(op.op, F);
        for (auto& [sname, s] : scalars) {
            Mat M = Mat::identity(F, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    M.at(i, j) ^= F.mul(s, D.at(i, j));
            std::string detail = fmt::format("F = id + s {}, s = {}", op.name, sname);
            cert.tried.push_back(detail);
            if (is_isomorphism(A, B, to_map(M))) {
                cert.found = true;
                cert.strategy = "F=id+sD";
                cert.detail = detail;
                cert.map = to_map(M);
                return cert;
            }
            auto inv = M.inverse();
            cert.tried.push_back(detail + ", inverse");
            if (inv && is_isomorphism(A, B, to_map(*inv))) {
                cert.found = true;
                cert.strategy = "F^-1";
                cert.detail = detail + ", inverse";
                cert.map = to_map(*inv);
                return cert;
            }
        }
    }
    cert.tried.push_back("search");
    if (F.is_prime()) {
        IsoResult r = search_isomorphism(A, B, budget);
        if (r.status == IsoStatus::found) {
            cert.found = true;
            cert.strategy = "search";
            cert.detail = fmt::format("{} nodes", r.nodes);
            cert.map = r.map;
            return cert;
        }
        cert.detail = r.reason;
    } else {
        cert.detail = "search needs GF(2)";
    }
    return cert;
}

Certificate tensor_example_certificate(const Field& F, Elt hbar)
{
    Certificate cert;
    cert.field = F;
    cert.hbar = hbar;
    Algebra A = build_tensor_example(hbar, true, F);
    Algebra B = build_tensor_example(0, false, F);
    Elt s = F.sqrt(hbar);
    // e00, e01, e10, e11
    LinearMap m;
    m.images = {B.unit(0), B.unit(1), B.unit(2), B.unit(3)};
    axpy(F, m.images[1], s, B.unit(0));
    axpy(F, m.images[3], s, B.unit(2));
    cert.tried.push_back("M(e_{i,1}) = e_{i,1} + sqrt(h) e_{i,0}");
    if (is_isomorphism(A, B, m)) {
        cert.found = true;
        cert.strategy = "explicit";
        cert.detail = "deformed -> undeformed";
        cert.map = m;
        return cert;
    }
    cert.tried.push_back("same map, undeformed -> deformed");
    if (is_isomorphism(B, A, m)) {
        cert.found = true;
        cert.strategy = "explicit";
        cert.detail = "undeformed -> deformed";
        cert.map = m;
    }
    return cert;
}

ConjugatedFamily conjugated_family_certificate(const Algebra& g, const NamedOperator& D, const Cochain2& c,
                                               const Field& F, Elt hbar)
{
    const Field& G = g.field();
    int n = g.dim();
    ConjugatedFamily out;
    out.family.base = g;
    out.family.params = {"s"};
    out.cert.field = F;
    out.cert.hbar = hbar;
    out.cert.strategy = "conjugated family";

    out.derivation = true;
    for (int i = 0; i < n && out.derivation; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec lhs = D.op.apply(g.bracket_vec(i, j));
            Vec rhs = g.bracket(D.op.col(i), g.unit(j));
            Vec r2 = g.bracket(g.unit(i), D.op.col(j));
            for (int k = 0; k < n; ++k)
                rhs[std::size_t(k)] = G.add(rhs[std::size_t(k)], r2[std::size_t(k)]);
            if (lhs != rhs) {
                out.derivation = false;
                break;
            }
        }
    Mat P = D.op;
    for (int k = 1; k <= n && !out.nilpotent; ++k) {
        if (P == Mat(G, n, n))
            out.nilpotent = true;
        else
            P = P.mul(D.op);
    }
    out.cert.detail = fmt::format("F = id + s {}, s = sqrt(h)", D.name);
    if (!out.derivation || !out.nilpotent)
        return out;

    // Pieces s^{k+2} D^k [Dx,Dy] until D^k [Dx,Dy] vanishes.
    Cochain2 term(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec v = g.bracket(D.op.col(i), D.op.col(j));
            if (!is_zero(v))
                term.add(i, j, v, G);
        }
    Cochain2 diff = term.plus(c, G);
    out.leading_in_class = is_cocycle(g, term) && is_coboundary(g, diff);
    out.polynomial_in_h = true;
    for (int k = 0; !term.is_zero(); ++k) {
        out.family.pieces.push_back({{k + 2}, term});
        if (k % 2 == 1)
            out.polynomial_in_h = false;
        Cochain2 next(n);
        for (auto& [ij, v] : term.terms) {
            Vec w = D.op.apply(v);
            if (!is_zero(w))
                next.add(ij.first, ij.second, w, G);
        }
        term = next;
    }

    Elt s = F.sqrt(hbar);
    Algebra A = out.family.specialize(F, s);
    Algebra B = lift_field(g, F);
    Mat M = Mat::identity(F, n);
    Mat DL = lift_mat(D.op, F);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            M.at(i, j) ^= F.mul(s, DL.at(i, j));
    out.cert.tried.push_back(out.cert.detail);
    if (is_isomorphism(A, B, to_map(M))) {
        out.cert.found = true;
        out.cert.map = to_map(M);
    }
    return out;
}

namespace {

/// Degrees lambda . wt with lambda orthogonal to the cochain weight w.
std::vector<int> orthogonal_degrees(const Algebra& g, const std::vector<int>& w)
{
    int a = -w[1], b = w[0];
    int d = std::gcd(std::abs(a), std::abs(b));
    if (d == 0) {
        a = 1;
        b = 0;
        d = 1;
    }
    a /= d;
    b /= d;
    std::vector<int> out;
    for (int i = 0; i < g.dim(); ++i)
        out.push_back(a * g.weight(i)[0] + b * g.weight(i)[1]);
    return out;
}

LinearMap jurman_template(const Algebra& jur, const Algebra& target, int g, int h, int a, int b)
{
    const Field& F = target.field();
    int n = target.dim();
    int k = 1 << (g + h);
    LinearMap m;
    m.images.assign(std::size_t(jur.dim()), zero_vec(n));
    auto add = [&](Vec& v, int ep, int eq, int coef) {
        if (!coef || ep < 0 || eq < 0)
            return;
        std::string s;
        if (ep)
            s = fmt::format("p^({})", ep);
        if (eq)
            s += fmt::format("{}q^({})", s.empty() ? "" : "*", eq);
        int idx = s.empty() ? -1 : find_basis_monomial(target, s);
        if (idx >= 0)
            axpy(F, v, 1, target.unit(idx));
    };
    for (int kk = 0; kk < (1 << b); ++kk)
        for (int l = 0; l < (1 << (a + 1)); ++l) {
            int j = (1 << (a + 1)) * kk + l - 1;
            if (j < -1 || j > k - 3)
                continue;
            Vec& y0 = m.images[std::size_t(jurman_index(g, h, j, 0))];
            add(y0, (1 << a) + l, kk, 1);
            add(y0, l, kk + 1, (kk + 1) & 1);
            Vec& y1 = m.images[std::size_t(jurman_index(g, h, j, 1))];
            add(y1, (1 << a) + l, kk - 1, 1);
            add(y1, l, kk, (kk + 1) & 1);
        }
    return m;
}

}

JurmanDeformReport jurman_deform_check(int g, int h, std::int64_t budget)
{
    JurmanDeformReport r;
    r.g = g;
    r.h = h;
    Algebra base;
    Cochain2 c;
    std::vector<int> w;
    if (g <= h + 1) {
        base = build_hamiltonian(BilinearForm::Pi(2), {g, h + 1}, Variant::derived);
        c = jurman_cocycle(base, g, h);
        w = {1 << g, -2};
        if (!is_cocycle(base, c)) {
            // keep the terms with m = 1 and complete them inside the weight block
            Cochain2 seed(base.dim());
            int dq = find_basis_monomial(base, "q");
            for (auto& [ij, v] : c.terms)
                if (ij.first == dq || ij.second == dq)
                    seed.add(ij.first, ij.second, v, base.field());
            Completion comp = complete_printed(base, seed);
            if (!comp.consistent || comp.free_dim != 0)
                throw AlgebraError(fmt::format("no unique Jurman cocycle for ({},{})", g, h));
            c = *comp.example;
        }
    } else {
        // h'_Pi(2; h+1, g) deformed by the cocycle with p and q exchanged
        base = build_hamiltonian(BilinearForm::Pi(2), {h + 1, g}, Variant::derived);
        c = jurman_cocycle(base, h + 1, g - 1, true);
        w = {-2, 1 << g};
    }
    r.cocycle_name = fmt::format("c_{{{},{}}}", w[0], w[1]);
    r.cocycle = is_cocycle(base, c);
    if (!r.cocycle)
        return r;
    r.non_coboundary = !is_coboundary(base, c);
    DeformFamily fam = deform_bracket(base, c);
    r.linear = obstruction_poly(fam).verdict == DeformVerdict::linear_global;
    Algebra D = fam.specialize(base.field(), 1);
    Algebra J = build_jurman(g, h);
    if (D.dim() != J.dim())
        return r;
    std::vector<int> dj;
    for (int i = 0; i < J.dim(); ++i)
        dj.push_back(J.weight(i)[0]);
    IsoResult iso = search_graded_isomorphism(J, dj, D, orthogonal_degrees(base, w), budget);
    if (iso.status != IsoStatus::found && D.dim() <= 22) {
        iso = search_isomorphism(J, D, budget);
        r.method = "search";
    } else {
        r.method = "graded search (" + iso.reason + ")";
    }
    if (iso.status == IsoStatus::found) {
        r.isomorphic = true;
        r.map = iso.map;
    }
    // literal reading of the printed basis, for every split a + 1 + b = g + h
    std::vector<std::string> notes;
    for (int a = 0; a + 1 <= g + h; ++a) {
        int b = g + h - a - 1;
        LinearMap t = jurman_template(J, D, g, h, a, b);
        std::string why;
        if (is_isomorphism(J, D, t, &why)) {
            r.template_map_ok = true;
            notes.push_back(fmt::format("a={}, b={}: isomorphism", a, b));
        } else {
            notes.push_back(fmt::format("a={}, b={}: {}", a, b, why));
        }
    }
    for (auto& s : notes)
        r.template_note += (r.template_note.empty() ? "" : "; ") + s;
    return r;
}

QuantizationReport quantization_deform_check(int a, std::int64_t budget)
{
    if (a != 2)
        throw AlgebraError("quantization check is implemented for a = 2");
    QuantizationReport r;
    Algebra base = catalog_algebra("gh21");
    Cochain2 printed = parse_cochain(base, catalog_entry("gh21", "c_{-2,-2}").text);
    Completion comp = complete_printed(base, printed);
    if (!comp.consistent)
        return r;
    // among the completions prefer one whose deform is linear
    std::vector<Cochain2> family{*comp.example};
    std::size_t nd = comp.directions.size();
    if (nd <= 10)
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << nd); ++m) {
            Cochain2 x = *comp.example;
            for (std::size_t d = 0; d < nd; ++d)
                if ((m >> d) & 1)
                    x = x.plus(comp.directions[d], base.field());
            family.push_back(x);
        }
    Cochain2 c = family.front();
    for (auto& x : family)
        if (!is_coboundary(base, x) && circle(base, x, x).is_zero()) {
            c = x;
            r.linear = true;
            break;
        }
    r.cocycle = is_cocycle(base, c);
    r.non_coboundary = !is_coboundary(base, c);
    DeformFamily fam = deform_bracket(base, c);
    Algebra D;
    if (r.linear) {
        D = fam.specialize(base.field(), 1);
    } else {
        Integration in = integrate(base, c);
        if (!in.integrated)
            return r;
        D = deform_series(base, in.series).specialize(base.field(), 1);
    }
    Algebra P = build_classical(ClassicalKind::psl, 4);
    Fingerprint fd = fingerprint(D), fp = fingerprint(P);
    r.fingerprints_agree = fd == fp;
    r.fingerprint_note = r.fingerprints_agree ? "agree" : fd.first_difference(fp);
    r.iso = search_isomorphism(D, P, budget);
    return r;
}

std::vector<ClassIntegrability> catalog_integrability(const std::string& table, std::int64_t budget)
{
    Algebra g = catalog_algebra(table);
    const Field& F = g.field();
    std::vector<ClassIntegrability> out;
    for (const auto& e : catalog_table(table)) {
        ClassIntegrability r;
        r.name = e.name;
        Completion comp = complete_printed(g, parse_cochain(g, e.text), budget);
        r.consistent = comp.consistent;
        std::optional<std::vector<int>> fw;
        if (comp.example)
            fw = full_weight_of(g, *comp.example);
        if (!comp.consistent || !fw || fw->empty()) {
            out.push_back(r);
            continue;
        }
        r.full_weight = *fw;
        H2Classes cls(g, *fw, budget);
        r.block_dim = cls.dim();
        Vec base = *cls.coords(*comp.example);
        Subspace dirs(F, cls.dim());
        for (const auto& d : comp.directions)
            if (auto v = cls.coords(d))
                dirs.add(*v);
        int k = dirs.dim();
        if (k > 16)
            throw AlgebraError("too many compatible classes for " + e.name);
        // Over GF(2^k) only the GF(2)-span is enumerated.
        for (std::uint32_t m = 0; m < (1u << k); ++m) {
            Vec v = base;
            for (int b = 0; b < k; ++b)
                if ((m >> b) & 1)
                    for (int i = 0; i < cls.dim(); ++i)
                        v[std::size_t(i)] = F.add(v[std::size_t(i)], dirs.basis()[std::size_t(b)][std::size_t(i)]);
            if (is_zero(v))
                continue;
            ++r.classes;
            Cochain2 c = cls.representative(v);
            if (!square_class_vanishes(g, c, budget))
                ++r.obstructed;
            else if (!integrate(g, c, 16, budget).integrated)
                ++r.not_integrated;
        }
        out.push_back(r);
    }
    return out;
}

Algebra poisson_family(const BilinearForm& B, const std::vector<int>& N, Elt alpha, const Field& F)
{
    if (!B.alternate())
        throw AlgebraError("poisson_family needs an alternate form");
    if (!F.valid(alpha))
        throw AlgebraError("alpha outside the field");
    ShapePtr S = poisson_shape(N, true);
    int n = S->nvars();
    FunBracket br = [B, n, alpha](const DPoly& f, const DPoly& g) {
        DPoly r(f.field(), f.shape_ptr());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (B(std::uint64_t{1} << i, std::uint64_t{1} << j))
                    r += f.d_alpha(i, alpha) * g.d_alpha(j, alpha);
        return r;
    };
    return function_algebra(F, S, S->basis(), br, false);
}

LinearMap f_alpha_map(const Algebra& fam, const ShapePtr& S, Elt alpha)
{
    const Field& F = fam.field();
    LinearMap m;
    for (int i = 0; i < fam.dim(); ++i) {
        DPoly f = DPoly::mono(F, S, S->parse(fam.label(i))).f_alpha(alpha);
        Vec v = zero_vec(fam.dim());
        for (auto& [mono, c] : f.terms())
            v[std::size_t(fam.index_of(S->format(mono)))] = c;
        m.images.push_back(v);
    }
    return m;
}

ReindexResult reindex_iso(const BilinearForm& B, const std::vector<int>& N, const Field& F)
{
    for (int x : N)
        if (x < 1 || x > 2)
            throw AlgebraError("reindex_iso supports exponents N_i in {1, 2}");
    int d = int(N.size());
    Algebra fam = poisson_family(B, N, 0, F);
    ShapePtr S = poisson_shape(N, true);
    std::vector<int> ones(std::size_t(d), 1);
    Algebra po = build_poisson(B, ones, F);
    ShapePtr S1 = poisson_shape(ones, true);
    std::vector<int> high;
    std::vector<std::string> names;
    for (int i = 0; i < d; ++i)
        if (N[std::size_t(i)] == 2) {
            high.push_back(i);
            names.push_back("y" + S->names()[std::size_t(i)]);
        }
    ReindexResult r;
    r.target = high.empty() ? po : tensor_with_O(po, int(high.size()), names);
    auto O = std::make_shared<Shape>(std::vector<int>(high.size(), 1), names);
    std::vector<Mono> ob = O->basis();
    int nb = int(ob.size());
    for (int i = 0; i < fam.dim(); ++i) {
        std::vector<int> e = S->exps(S->parse(fam.label(i)));
        std::vector<int> lo(static_cast<std::size_t>(d)), hi;
        for (int v = 0; v < d; ++v)
            lo[std::size_t(v)] = e[std::size_t(v)] % 2;
        for (int v : high)
            hi.push_back(e[std::size_t(v)] / 2);
        int li = po.index_of(S1->format(S1->pack(lo)));
        int hi_idx = 0;
        if (!high.empty()) {
            Mono hm = O->pack(hi);
            hi_idx = int(std::find(ob.begin(), ob.end(), hm) - ob.begin());
        }
        r.map.images.push_back(r.target.unit(li * nb + hi_idx));
    }
    r.isomorphism = is_isomorphism(fam, r.target, r.map);
    return r;
}

Kap4bDeformReport kap4b_as_deform(int m)
{
    if (m < 1 || m > 3)
        throw AlgebraError("kap4b_as_deform supports 1 <= m <= 3");
    Kap4bDeformReport r;
    r.m = m;
    const Field F = Field::gf2();
    std::vector<int> ones(std::size_t(2 * m), 1);
    ShapePtr S = poisson_shape(ones, true);
    Algebra po = build_poisson(BilinearForm::Pi(2 * m), ones, F);
    int n = po.dim();
    // c1 = sum (p_i + q_i)(...), c2 = sum p_i q_i (...)
    Cochain2 c1(n), c2(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            DPoly f = DPoly::mono(F, S, S->parse(po.label(a)));
            DPoly g = DPoly::mono(F, S, S->parse(po.label(b)));
            DPoly r1(F, S), r2(F, S);
            for (int i = 0; i < m; ++i) {
                DPoly sym = f.partial(i) * g.partial(m + i) + f.partial(m + i) * g.partial(i);
                r1 += sym.times_mono(std::uint64_t{1} << i) + sym.times_mono(std::uint64_t{1} << (m + i));
                r2 += sym.times_mono((std::uint64_t{1} << i) | (std::uint64_t{1} << (m + i)));
            }
            for (auto& [cc, rr] : {std::pair<Cochain2*, DPoly*>{&c1, &r1}, {&c2, &r2}}) {
                Vec v = zero_vec(n);
                for (auto& [mono, coef] : rr->terms())
                    v[std::size_t(po.index_of(S->format(mono)))] = coef;
                if (!is_zero(v))
                    cc->add(a, b, v, F);
            }
        }
    DeformFamily fam = deform_series(po, {c1, c2}, "h'");
    ObstructionReport ob = obstruction_poly(fam);
    r.family_valid = ob.coefficients.empty();
    r.quadratic_cocycle = is_cocycle(po, c2);
    r.quadratic_non_coboundary = r.quadratic_cocycle && !is_coboundary(po, c2);
    r.linear_coboundary = is_coboundary(po, c1);
    Algebra at1 = fam.specialize(F, 1);
    Algebra k4b = build_kap4b(m, F);
    r.family_at_one_matches = at1.same_structure(k4b) || is_isomorphism(at1, k4b, to_map(Mat::identity(F, n)));
    r.notes = fmt::format("Jacobiator coefficients: {}, quadratic part cocycle: {}", ob.coefficients.size(),
                          r.quadratic_cocycle);
    return r;
}

DeformFamily jurman_multi_family(int K)
{
    std::vector<std::pair<int, int>> parts;
    for (int g = 2; g <= K - 1; ++g)
        parts.push_back({g, K - g});
    if (parts.empty())
        throw AlgebraError("no partitions K = g + h with g >= 2, h >= 1");
    int k = 1 << K;
    auto [g0, h0] = parts.front();
    Algebra J = build_jurman(g0, h0);
    int n = J.dim();
    Algebra base(J.field(), n, J.labels());
    for (int s = 0; s < 2; ++s)
        for (int i = -1; i <= k - 3; ++i)
            for (int j = -1; j <= k - 3; ++j) {
                int a = jurman_index(g0, h0, i, s), b = jurman_index(g0, h0, j, 0);
                if (a >= b && s == 0)
                    continue;
                if (a == b)
                    continue;
                int tgt = 0;
                int c = jurman_coefficient(g0, h0, i, s, j, 0, &tgt);
                if (c)
                    base.set_bracket(std::min(a, b), std::max(a, b), Terms{{jurman_index(g0, h0, tgt, s), 1}});
            }
    DeformFamily f;
    f.base = base;
    for (auto [g, h] : parts) {
        f.params.push_back(fmt::format("t{}{}", g, h));
        Cochain2 c(n);
        for (int i = -1; i <= k - 3; ++i)
            for (int j = i + 1; j <= k - 3; ++j) {
                int tgt = 0;
                int coef = jurman_coefficient(g, h, i, 1, j, 1, &tgt);
                if (coef)
                    c.add_term(jurman_index(g, h, tgt, 0), jurman_index(g, h, i, 1), jurman_index(g, h, j, 1), 1,
                               J.field());
            }
        std::vector<int> p(parts.size(), 0);
        p[f.pieces.size()] = 1;
        f.pieces.push_back({p, c});
    }
    return f;
}

}
