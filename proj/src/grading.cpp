#include "mlie/grading.hpp"

#include "mlie/constructions.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <bit>
#include <cstdio>

namespace mlie {

std::vector<int> Filtration::dims() const
{
    std::vector<int> d;
    for (auto& s : layers)
        d.push_back(s.dim());
    return d;
}

namespace {

/// Smallest subspace containing S and stable under ad of every vector of L0.
Subspace module_closure(const Algebra& g, const Subspace& L0, Subspace S)
{
    std::vector<Vec> queue = S.basis();
    while (!queue.empty()) {
        Vec v = queue.back();
        queue.pop_back();
        for (auto& a : L0.basis()) {
            Vec w = g.bracket(a, v);
            if (S.add(w))
                queue.push_back(w);
        }
    }
    return S;
}

/// Complement of `sub` inside `sup`: basis vectors of sup independent modulo sub, in order.
std::vector<Vec> complement(const Subspace& sup, const Subspace& sub)
{
    Subspace acc = sub;
    std::vector<Vec> out;
    for (auto& v : sup.basis())
        if (acc.add(v))
            out.push_back(v);
    return out;
}

/// Candidate vectors outside L0, as combinations of a complement basis.
std::vector<Vec> outside_candidates(const Algebra& g, const std::vector<Vec>& comp, bool& exhaustive)
{
    const Field& F = g.field();
    std::vector<Vec> out = comp;
    exhaustive = F.is_prime() && comp.size() <= 12;
    if (!exhaustive)
        return out;
    std::uint64_t N = std::uint64_t{1} << comp.size();
    for (std::uint64_t m = 1; m < N; ++m) {
        if (std::popcount(m) == 1)
            continue;
        Vec v = zero_vec(g.dim());
        for (std::size_t b = 0; b < comp.size(); ++b)
            if ((m >> b) & 1)
                axpy(F, v, 1, comp[b]);
        out.push_back(v);
    }
    return out;
}

/// {D in prev : [D, b] in prev for all b in Lm1}
Subspace next_down(const Algebra& g, const Subspace& prev, const Subspace& Lm1)
{
    const Field& F = g.field();
    int n = g.dim();
    auto& basis = prev.basis();
    int r = int(basis.size());
    auto& ext = Lm1.basis();
    Mat M(F, int(ext.size()) * n, r);
    for (int k = 0; k < r; ++k)
        for (std::size_t b = 0; b < ext.size(); ++b) {
            Vec w = g.bracket(basis[std::size_t(k)], ext[b]);
            prev.reduce(w);
            for (int c = 0; c < n; ++c)
                M.at(int(b) * n + c, k) = w[std::size_t(c)];
        }
    Subspace out(F, n);
    for (auto& x : M.nullspace()) {
        Vec v = zero_vec(n);
        for (int k = 0; k < r; ++k)
            if (x[std::size_t(k)])
                axpy(F, v, x[std::size_t(k)], basis[std::size_t(k)]);
        out.add(v);
    }
    return out;
}

Subspace clamp_layer(const Filtration& f, int i)
{
    i = std::max(i, f.lowest());
    i = std::min(i, f.highest());
    return f.layer(i);
}

}

Filtration weisfeiler_filtration(const Algebra& g, const Subspace& L0)
{
    if (!is_subalgebra(g, L0))
        throw AlgebraError("L0 is not a subalgebra");
    Subspace all = Subspace::full(g.field(), g.dim());
    auto comp = complement(all, L0);
    if (comp.empty())
        throw AlgebraError("L0 is the whole algebra");
    bool exhaustive = false;
    auto cands = outside_candidates(g, comp, exhaustive);
    Subspace best;
    bool have = false;
    bool maximal = true;
    for (auto& v : cands) {
        Subspace S = L0;
        S.add(v);
        Subspace M = module_closure(g, L0, S);
        if (!have || M.dim() < best.dim()) {
            best = M;
            have = true;
        }
        if (maximal) {
            std::vector<Vec> seeds = L0.basis();
            seeds.push_back(v);
            if (subalgebra_generated(g, seeds).dim() != g.dim())
                maximal = false;
        }
    }
    Filtration f = weisfeiler_filtration(g, L0, best);
    f.maximality_checked = exhaustive || !maximal;
    f.l0_maximal = maximal;
    return f;
}

Filtration weisfeiler_filtration(const Algebra& g, const Subspace& L0, const Subspace& Lm1)
{
    if (!is_subalgebra(g, L0))
        throw AlgebraError("L0 is not a subalgebra");
    if (!Lm1.contains(L0) || Lm1.dim() == L0.dim())
        throw AlgebraError("L_{-1} must strictly contain L0");
    std::vector<Subspace> up{Lm1};
    while (true) {
        Subspace nx = up.back();
        Subspace br = bracket_span(g, Lm1, up.back());
        for (auto& v : br.basis())
            nx.add(v);
        if (nx.dim() == up.back().dim())
            break;
        up.push_back(nx);
    }
    std::vector<Subspace> down{L0};
    while (down.back().dim() > 0) {
        Subspace nx = next_down(g, down.back(), Lm1);
        if (nx.dim() == down.back().dim())
            break;
        down.push_back(nx);
    }
    Filtration f;
    f.depth = int(up.size());
    for (auto it = up.rbegin(); it != up.rend(); ++it)
        f.layers.push_back(*it);
    for (auto& s : down)
        f.layers.push_back(s);
    return f;
}

bool check_filtration(const Algebra& g, const Filtration& f, std::string* why)
{
    for (int i = f.lowest(); i <= f.highest(); ++i)
        for (int j = i; j <= f.highest(); ++j) {
            Subspace target = clamp_layer(f, i + j);
            for (auto& a : f.layer(i).basis())
                for (auto& b : f.layer(j).basis())
                    if (!target.contains(g.bracket(a, b))) {
                        if (why)
                            *why = fmt::format("[L_{}, L_{}] is not inside L_{}", i, j, i + j);
                        return false;
                    }
        }
    return true;
}

Graded associated_graded(const Algebra& g, const Filtration& f)
{
    const Field& F = g.field();
    int n = g.dim();
    Graded out;
    Subspace zero(F, n);
    for (int i = f.lowest(); i <= f.highest(); ++i) {
        const Subspace& below = i < f.highest() ? f.layer(i + 1) : zero;
        for (auto& v : complement(f.layer(i), below)) {
            out.lifts.push_back(v);
            out.degree.push_back(i);
        }
    }
    int m = int(out.lifts.size());
    if (m != n)
        throw AlgebraError("filtration does not start at the whole algebra");
    Mat P(F, n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r)
            P.at(r, c) = out.lifts[std::size_t(c)][std::size_t(r)];
    Mat Pinv = *P.inverse();
    std::vector<std::string> labels;
    Grading gr;
    gr.moduli = {0};
    for (int a = 0; a < n; ++a) {
        const Vec& v = out.lifts[std::size_t(a)];
        int nz = 0, at = -1;
        for (int k = 0; k < n; ++k)
            if (v[std::size_t(k)]) {
                ++nz;
                at = k;
            }
        labels.push_back(nz == 1 && v[std::size_t(at)] == 1 ? g.label(at) : g.format_vec(v));
        gr.weights.push_back({out.degree[std::size_t(a)]});
    }
    Algebra A(F, n, labels);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            int d = out.degree[std::size_t(a)] + out.degree[std::size_t(b)];
            Vec coords = Pinv.apply(g.bracket(out.lifts[std::size_t(a)], out.lifts[std::size_t(b)]));
            Terms t;
            for (int k = 0; k < n; ++k)
                if (coords[std::size_t(k)] && out.degree[std::size_t(k)] == d)
                    t.push_back({k, coords[std::size_t(k)]});
            A.set_bracket(a, b, std::move(t));
        }
    A.set_grading(std::move(gr));
    out.algebra = std::move(A);
    return out;
}

Subspace jurman_L0(const Algebra& jur, int g, int h)
{
    int k = 1 << (g + h);
    Subspace s(jur.field(), jur.dim());
    for (int t = 0; t < 2; ++t)
        for (int j = 0; j <= k - 3; ++j)
            s.add(jur.unit(jurman_index(g, h, j, t)));
    return s;
}

LinearMap jurman_graded_map(const Graded& gr, const Algebra& target, int g, int h)
{
    const Algebra& A = gr.algebra;
    LinearMap m;
    int mask = (1 << g) - 1;
    for (int a = 0; a < A.dim(); ++a) {
        int j = 0, t = 0;
        if (std::sscanf(A.label(a).c_str(), "Y%d(%d)", &j, &t) != 2)
            throw AlgebraError(fmt::format("basis element '{}' is not a Jurman basis vector", A.label(a)));
        int alpha = (j + 1 + t) >> g, beta = (j + 1 + t) & mask;
        if (alpha > (1 << h) - 1)
            throw AlgebraError(fmt::format("Y{}({}) has no monomial partner", j, t));
        std::string mono = fmt::format("p^({})*q^({})", beta, 2 * alpha + 1 - t);
        int idx = find_basis_monomial(target, mono);
        if (idx < 0)
            throw AlgebraError(fmt::format("monomial {} is not a basis element of the target", mono));
        m.images.push_back(target.unit(idx));
    }
    return m;
}

WeightMode parse_weight_mode(const std::string& s)
{
    if (s == "z")
        return WeightMode::z;
    if (s == "mod2")
        return WeightMode::mod2;
    if (s == "outer")
        return WeightMode::outer;
    throw AlgebraError("unknown weight mode '" + s + "' (expected z, mod2 or outer)");
}

std::string weight_mode_name(WeightMode m)
{
    switch (m) {
    case WeightMode::z:
        return "z";
    case WeightMode::mod2:
        return "mod2";
    case WeightMode::outer:
        return "outer";
    }
    return "?";
}

std::vector<int> select_components(const Grading& gr, WeightMode m)
{
    std::vector<int> idx;
    for (int a = 0; a < gr.arity(); ++a) {
        bool modular = gr.moduli[std::size_t(a)] != 0;
        if (m == WeightMode::z || (m == WeightMode::mod2 && modular) || (m == WeightMode::outer && !modular))
            idx.push_back(a);
    }
    if (idx.empty())
        throw AlgebraError(fmt::format("grading has no components for mode {}", weight_mode_name(m)));
    return idx;
}

std::vector<int> project_weight(const Grading& gr, const std::vector<int>& w, WeightMode mode)
{
    std::vector<int> out;
    for (int a : select_components(gr, mode))
        out.push_back(w[std::size_t(a)]);
    return out;
}

std::vector<int> term_weight(const Algebra& g, int x, int y, int z)
{
    const Grading& gr = g.grading();
    std::vector<int> w = g.weight(x);
    for (int a = 0; a < gr.arity(); ++a)
        w[std::size_t(a)] -= g.weight(y)[std::size_t(a)] + g.weight(z)[std::size_t(a)];
    return gr.normalize(w);
}

std::vector<int> cochain_weight(const Algebra& g, const Cochain2& c, WeightMode mode)
{
    if (g.grading().empty())
        throw AlgebraError("algebra carries no grading");
    const Grading& gr = g.grading();
    std::vector<int> sel = select_components(gr, mode);
    std::vector<int> first;
    std::string first_term;
    bool have = false;
    for (auto& [ij, v] : c.terms)
        for (int k = 0; k < g.dim(); ++k) {
            if (!v[std::size_t(k)])
                continue;
            auto w = project_weight(gr, term_weight(g, k, ij.first, ij.second), mode);
            std::string term = fmt::format("{} (x) d({})^d({})", g.label(k), g.label(ij.first), g.label(ij.second));
            if (!have) {
                first = w;
                first_term = term;
                have = true;
            } else if (w != first) {
                throw AlgebraError(fmt::format("cochain is not homogeneous: {} has weight ({}) but {} has weight ({})",
                                               first_term, fmt::join(first, ","), term, fmt::join(w, ",")));
            }
        }
    if (!have)
        return std::vector<int>(sel.size(), 0);
    return first;
}

}
