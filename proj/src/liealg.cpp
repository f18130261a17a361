#include "mlie/liealg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

namespace mlie {

namespace {

/// Dense accumulator for sums of structure constants.
struct Acc {
    const Field& F;
    Vec v;
    std::vector<int> touched;
    Acc(const Field& F_, int n) : F(F_), v(std::size_t(n), 0) {}
    void add(int k, Elt c)
    {
        if (!c)
            return;
        if (!v[std::size_t(k)])
            touched.push_back(k);
        v[std::size_t(k)] ^= c;
    }
    /// c * [e_a, e_b]
    void add_bracket(const Algebra& g, int a, int b, Elt c)
    {
        for (auto& t : g.bracket(a, b))
            add(t.k, F.mul(c, t.c));
    }
    bool zero_and_clear()
    {
        bool z = true;
        for (int k : touched) {
            if (v[std::size_t(k)])
                z = false;
            v[std::size_t(k)] = 0;
        }
        touched.clear();
        return z;
    }
};

std::string weight_str(const std::vector<int>& w)
{
    return fmt::format("({})", fmt::join(w, ","));
}

}

ValidationReport validate(const Algebra& g, int max_reported)
{
    ValidationReport r;
    int n = g.dim();
    const Field& F = g.field();
    auto report = [&](std::string s) {
        r.ok = false;
        if (int(r.violations.size()) < max_reported)
            r.violations.push_back(std::move(s));
    };
    for (int i = 0; i < n; ++i)
        if (!g.bracket(i, i).empty()) {
            r.alternation = false;
            report(fmt::format("alternation fails at [{0},{0}]", g.label(i)));
        }
    if (!g.grading().empty()) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                auto w = g.grading().add(g.weight(i), g.weight(j));
                for (auto& t : g.bracket(i, j))
                    if (g.weight(t.k) != w) {
                        r.grading = false;
                        report(fmt::format("grading: [{},{}] has component {} of weight {}, expected {}", g.label(i), g.label(j),
                                           g.label(t.k), weight_str(g.weight(t.k)), weight_str(w)));
                    }
            }
    }
    if (g.has_mask_table()) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                std::uint64_t ij = g.bracket_mask(std::uint64_t{1} << i, std::uint64_t{1} << j);
                for (int k = j + 1; k < n; ++k) {
                    std::uint64_t a = g.bracket_mask(ij, std::uint64_t{1} << k);
                    a ^= g.bracket_mask(g.bracket_mask(std::uint64_t{1} << j, std::uint64_t{1} << k), std::uint64_t{1} << i);
                    a ^= g.bracket_mask(g.bracket_mask(std::uint64_t{1} << k, std::uint64_t{1} << i), std::uint64_t{1} << j);
                    ++r.triples_checked;
                    if (a) {
                        r.jacobi = false;
                        report(fmt::format("Jacobi fails on ({}, {}, {})", g.label(i), g.label(j), g.label(k)));
                    }
                }
            }
        return r;
    }
    Acc acc(F, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                for (auto& t : g.bracket(i, j))
                    acc.add_bracket(g, t.k, k, t.c);
                for (auto& t : g.bracket(j, k))
                    acc.add_bracket(g, t.k, i, t.c);
                for (auto& t : g.bracket(k, i))
                    acc.add_bracket(g, t.k, j, t.c);
                ++r.triples_checked;
                if (!acc.zero_and_clear()) {
                    r.jacobi = false;
                    report(fmt::format("Jacobi fails on ({}, {}, {})", g.label(i), g.label(j), g.label(k)));
                }
            }
    return r;
}

Subspace derived_subalgebra(const Algebra& g)
{
    return bracket_span(g, Subspace::full(g.field(), g.dim()), Subspace::full(g.field(), g.dim()));
}

Subspace bracket_span(const Algebra& g, const Subspace& A, const Subspace& B)
{
    Subspace s(g.field(), g.dim());
    bool full_a = A.dim() == g.dim(), full_b = B.dim() == g.dim();
    if (full_a && full_b) {
        for (int i = 0; i < g.dim() && s.dim() < g.dim(); ++i)
            for (int j = i + 1; j < g.dim(); ++j)
                if (!g.bracket(i, j).empty())
                    s.add(g.bracket_vec(i, j));
        return s;
    }
    for (auto& a : A.basis())
        for (auto& b : B.basis()) {
            s.add(g.bracket(a, b));
            if (s.dim() == g.dim())
                return s;
        }
    return s;
}

Subspace center(const Algebra& g)
{
    int n = g.dim();
    RowReducer R(g.field(), n);
    // equation (j,k): sum_i x_i c_{ij}^k = 0
    for (int j = 0; j < n && !R.full(); ++j) {
        std::map<int, std::vector<std::pair<int, Elt>>> eq;
        for (int i = 0; i < n; ++i)
            for (auto& t : g.bracket(i, j))
                eq[t.k].push_back({i, t.c});
        for (auto& [k, row] : eq)
            R.add_sparse(row);
    }
    return Subspace::span(g.field(), n, R.nullspace());
}

bool is_subalgebra(const Algebra& g, const Subspace& s)
{
    for (std::size_t a = 0; a < s.basis().size(); ++a)
        for (std::size_t b = a + 1; b < s.basis().size(); ++b)
            if (!s.contains(g.bracket(s.basis()[a], s.basis()[b])))
                return false;
    return true;
}

bool is_ideal(const Algebra& g, const Subspace& s)
{
    for (auto& v : s.basis())
        for (int i = 0; i < g.dim(); ++i)
            if (!s.contains(g.bracket_basis(i, v)))
                return false;
    return true;
}

Subspace ideal_generated(const Algebra& g, const std::vector<Vec>& seeds)
{
    Subspace s(g.field(), g.dim());
    std::vector<Vec> queue;
    for (auto& v : seeds)
        if (s.add(v))
            queue.push_back(v);
    while (!queue.empty() && s.dim() < g.dim()) {
        Vec v = std::move(queue.back());
        queue.pop_back();
        for (int i = 0; i < g.dim(); ++i) {
            Vec w = g.bracket_basis(i, v);
            if (s.add(w))
                queue.push_back(std::move(w));
        }
    }
    return s;
}

Subspace ideal_generated(const Algebra& g, const Vec& seed)
{
    return ideal_generated(g, std::vector<Vec>{seed});
}

Subspace subalgebra_generated(const Algebra& g, const std::vector<Vec>& seeds)
{
    Subspace s(g.field(), g.dim());
    std::vector<Vec> elems;
    for (auto& v : seeds)
        if (s.add(v))
            elems.push_back(v);
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = 0; b < a; ++b) {
            Vec w = g.bracket(elems[a], elems[b]);
            if (s.add(w))
                elems.push_back(std::move(w));
        }
    return s;
}

Algebra restrict_to(const Algebra& g, const Subspace& s)
{
    const auto& B = s.basis();
    std::vector<std::string> labels;
    std::vector<int> unit_index;
    for (auto& v : B) {
        int nz = 0, at = -1;
        for (int i = 0; i < g.dim(); ++i)
            if (v[std::size_t(i)]) {
                ++nz;
                at = i;
            }
        if (nz == 1 && v[std::size_t(at)] == 1) {
            labels.push_back(g.label(at));
            unit_index.push_back(at);
        } else {
            labels.push_back(g.format_vec(v));
            unit_index.push_back(-1);
        }
    }
    Algebra r(g.field(), s.dim(), labels);
    for (int a = 0; a < s.dim(); ++a)
        for (int b = a + 1; b < s.dim(); ++b) {
            auto c = s.coords(g.bracket(B[std::size_t(a)], B[std::size_t(b)]));
            if (!c)
                throw AlgebraError("restrict_to: subspace is not a subalgebra");
            r.set_bracket(a, b, *c);
        }
    if (!g.grading().empty()) {
        bool homogeneous = true;
        Grading gr;
        gr.moduli = g.grading().moduli;
        for (auto& v : B) {
            std::optional<std::vector<int>> w;
            for (int i = 0; i < g.dim() && homogeneous; ++i)
                if (v[std::size_t(i)]) {
                    if (!w)
                        w = g.weight(i);
                    else if (*w != g.weight(i))
                        homogeneous = false;
                }
            if (!homogeneous)
                break;
            gr.weights.push_back(w.value_or(std::vector<int>(std::size_t(gr.arity()), 0)));
        }
        if (homogeneous)
            r.set_grading(std::move(gr));
    }
    return r;
}

Vec Quotient::project(const Vec& v) const
{
    Vec w = v;
    ideal.reduce(w);
    Vec r = zero_vec(int(complement.size()));
    for (std::size_t a = 0; a < complement.size(); ++a)
        r[a] = w[std::size_t(complement[a])];
    return r;
}

Quotient quotient(const Algebra& g, const Subspace& ideal)
{
    if (!is_ideal(g, ideal))
        throw AlgebraError("quotient: subspace is not an ideal");
    Quotient q;
    q.ideal = ideal;
    std::vector<char> piv(std::size_t(g.dim()), 0);
    for (int p : ideal.pivots())
        piv[std::size_t(p)] = 1;
    std::vector<std::string> labels;
    for (int i = 0; i < g.dim(); ++i)
        if (!piv[std::size_t(i)]) {
            q.complement.push_back(i);
            labels.push_back(g.label(i));
        }
    int m = int(q.complement.size());
    q.algebra = Algebra(g.field(), m, labels);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            q.algebra.set_bracket(a, b, q.project(g.bracket_vec(q.complement[std::size_t(a)], q.complement[std::size_t(b)])));
    // the reduced ideal rows vanish off their pivot on complement columns only when
    // the ideal is homogeneous; keep the grading when it descends
    if (!g.grading().empty()) {
        Grading gr;
        gr.moduli = g.grading().moduli;
        for (int c : q.complement)
            gr.weights.push_back(g.weight(c));
        Algebra tmp = q.algebra;
        try {
            tmp.set_grading(gr);
            if (validate(tmp).grading)
                q.algebra = std::move(tmp);
        } catch (const AlgebraError&) {
        }
    }
    return q;
}

Algebra direct_sum(const Algebra& a, const Algebra& b)
{
    if (a.field() != b.field())
        throw AlgebraError("direct_sum: fields differ");
    std::vector<std::string> labels;
    for (auto& l : a.labels())
        labels.push_back(l + "'1");
    for (auto& l : b.labels())
        labels.push_back(l + "'2");
    int n = a.dim();
    Algebra s(a.field(), n + b.dim(), labels);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j)
            s.set_bracket(i, j, a.bracket(i, j));
    for (int i = 0; i < b.dim(); ++i)
        for (int j = i + 1; j < b.dim(); ++j) {
            Terms t = b.bracket(i, j);
            for (auto& x : t)
                x.k += n;
            s.set_bracket(n + i, n + j, std::move(t));
        }
    return s;
}

std::string SimplicityResult::to_string() const
{
    switch (verdict) {
    case Simplicity::simple:
        return "simple";
    case Simplicity::ideal_witness:
        return "ideal-witness";
    case Simplicity::probable_simple:
        return "probable-simple";
    }
    return "?";
}

namespace {

/// Ideal spanned from a bitmask seed, GF(2) and dim <= 64. Stops early when
/// a vector already known to generate everything enters the ideal.
struct MaskSpinner {
    const Algebra& g;
    int n;
    std::vector<std::uint64_t> rows; // echelon rows, pivot = lowest bit
    std::vector<std::uint8_t>* full_gen;

    std::uint64_t reduce(std::uint64_t v) const
    {
        for (auto r : rows)
            if (v & (r & -r))
                v ^= r;
        return v;
    }
    bool insert(std::uint64_t v)
    {
        v = reduce(v);
        if (!v)
            return false;
        std::uint64_t p = v & -v;
        for (auto& r : rows)
            if (r & p)
                r ^= v;
        rows.push_back(v);
        return true;
    }
    /// Returns the dimension of the ideal generated by seed.
    int spin(std::uint64_t seed, std::vector<std::uint64_t>* basis_out = nullptr)
    {
        rows.clear();
        std::vector<std::uint64_t> queue{seed};
        insert(seed);
        while (!queue.empty() && int(rows.size()) < n) {
            std::uint64_t v = queue.back();
            queue.pop_back();
            for (int i = 0; i < n; ++i) {
                std::uint64_t w = g.bracket_mask_basis(i, v);
                if (!w)
                    continue;
                if (full_gen && (*full_gen)[w]) {
                    rows.assign(std::size_t(n), 0);
                    return n;
                }
                if (insert(w))
                    queue.push_back(w);
            }
        }
        if (basis_out)
            *basis_out = rows;
        return int(rows.size());
    }
};

Vec mask_to_vec(std::uint64_t m, int n)
{
    Vec v = zero_vec(n);
    for (int i = 0; i < n; ++i)
        if (m >> i & 1)
            v[std::size_t(i)] = 1;
    return v;
}

}

SimplicityResult simplicity_check(const Algebra& g, std::uint64_t random_seeds, std::uint64_t rng_seed)
{
    SimplicityResult r;
    int n = g.dim();
    const Field& F = g.field();
    r.witness = Subspace(F, n);
    if (n == 0)
        return r;
    if (F.is_prime() && n <= 20) {
        std::vector<std::uint8_t> full(std::size_t(1) << n, 0);
        MaskSpinner sp{g, n, {}, &full};
        for (std::uint64_t v = 1; v < (std::uint64_t{1} << n); ++v) {
            ++r.seeds;
            std::vector<std::uint64_t> basis;
            int d = sp.spin(v, &basis);
            if (d < n) {
                r.verdict = Simplicity::ideal_witness;
                std::vector<Vec> vs;
                for (auto b : basis)
                    vs.push_back(mask_to_vec(b, n));
                r.witness = Subspace::span(F, n, vs);
                return r;
            }
            full[v] = 1;
        }
        r.verdict = Simplicity::simple;
        return r;
    }
    auto check = [&](const Vec& v) {
        ++r.seeds;
        Subspace s = ideal_generated(g, v);
        if (s.dim() < n) {
            r.verdict = Simplicity::ideal_witness;
            r.witness = s;
            return false;
        }
        return true;
    };
    Subspace z = center(g);
    if (z.dim() > 0) {
        r.verdict = Simplicity::ideal_witness;
        r.witness = z;
        return r;
    }
    Subspace d = derived_subalgebra(g);
    if (d.dim() < n) {
        r.verdict = Simplicity::ideal_witness;
        r.witness = d;
        return r;
    }
    for (int i = 0; i < n; ++i)
        if (!check(unit_vec(n, i)))
            return r;
    std::mt19937_64 rng(rng_seed);
    for (std::uint64_t s = 0; s < random_seeds; ++s) {
        Vec v = zero_vec(n);
        for (auto& x : v)
            x = Elt(rng() % F.order());
        if (is_zero(v))
            continue;
        if (!check(v))
            return r;
    }
    r.verdict = Simplicity::probable_simple;
    return r;
}

Mat LinearMap::matrix(const Field& F, int target_dim) const
{
    Mat m(F, target_dim, int(images.size()));
    for (std::size_t j = 0; j < images.size(); ++j)
        for (int i = 0; i < target_dim; ++i)
            m.at(i, int(j)) = images[j][std::size_t(i)];
    return m;
}

bool is_homomorphism(const Algebra& src, const Algebra& dst, const LinearMap& m, std::string* why)
{
    if (src.field() != dst.field() || int(m.images.size()) != src.dim()) {
        if (why)
            *why = "shape or field mismatch";
        return false;
    }
    for (auto& v : m.images)
        if (int(v.size()) != dst.dim()) {
            if (why)
                *why = "image of wrong length";
            return false;
        }
    const Field& F = src.field();
    for (int i = 0; i < src.dim(); ++i)
        for (int j = i + 1; j < src.dim(); ++j) {
            Vec lhs = zero_vec(dst.dim());
            for (auto& t : src.bracket(i, j))
                axpy(F, lhs, t.c, m.images[std::size_t(t.k)]);
            Vec rhs = dst.bracket(m.images[std::size_t(i)], m.images[std::size_t(j)]);
            if (lhs != rhs) {
                if (why)
                    *why = fmt::format("bracket of {} and {} not preserved", src.label(i), src.label(j));
                return false;
            }
        }
    return true;
}

bool is_isomorphism(const Algebra& src, const Algebra& dst, const LinearMap& m, std::string* why)
{
    if (src.dim() != dst.dim()) {
        if (why)
            *why = "dimensions differ";
        return false;
    }
    if (!is_homomorphism(src, dst, m, why))
        return false;
    if (m.matrix(src.field(), dst.dim()).rank() != src.dim()) {
        if (why)
            *why = "map is not invertible";
        return false;
    }
    return true;
}

int derivation_dim(const Algebra& g)
{
    int n = g.dim();
    // unknown D_{k,i} (coefficient of e_k in D e_i) at column i*n + k
    RowReducer R(g.field(), n * n);
    const Field& F = g.field();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // D[e_i,e_j] - [De_i,e_j] - [e_i,De_j] = 0, component l
            std::map<int, std::map<int, Elt>> eq;
            for (auto& t : g.bracket(i, j))
                for (int l = 0; l < n; ++l)
                    eq[l][t.k * n + l] ^= t.c;
            for (int k = 0; k < n; ++k) {
                for (auto& t : g.bracket(k, j))
                    eq[t.k][i * n + k] ^= t.c;
                for (auto& t : g.bracket(i, k))
                    eq[t.k][j * n + k] ^= t.c;
            }
            for (auto& [l, row] : eq) {
                std::vector<std::pair<int, Elt>> r;
                for (auto& [c, x] : row)
                    if (x)
                        r.push_back({c, x});
                if (!r.empty())
                    R.add_sparse(r);
            }
            if (R.full())
                return 0;
        }
    (void)F;
    return n * n - R.rank();
}

bool Fingerprint::operator==(const Fingerprint& o) const
{
    return dim == o.dim && derived_series == o.derived_series && lower_central == o.lower_central && center == o.center
        && derivations == o.derivations && weights == o.weights;
}

std::string Fingerprint::first_difference(const Fingerprint& o) const
{
    if (dim != o.dim)
        return fmt::format("dimension {} vs {}", dim, o.dim);
    if (derived_series != o.derived_series)
        return fmt::format("derived series dims [{}] vs [{}]", fmt::join(derived_series, ","), fmt::join(o.derived_series, ","));
    if (lower_central != o.lower_central)
        return fmt::format("lower central series dims [{}] vs [{}]", fmt::join(lower_central, ","), fmt::join(o.lower_central, ","));
    if (center != o.center)
        return fmt::format("center dim {} vs {}", center, o.center);
    if (derivations != o.derivations)
        return fmt::format("derivation dim {} vs {}", derivations, o.derivations);
    if (weights != o.weights)
        return "torus weight multisets differ";
    return "";
}

Fingerprint fingerprint(const Algebra& g, bool with_weights)
{
    Fingerprint f;
    f.dim = g.dim();
    Subspace cur = Subspace::full(g.field(), g.dim());
    f.derived_series.push_back(cur.dim());
    while (cur.dim() > 0) {
        Subspace nx = bracket_span(g, cur, cur);
        if (nx.dim() == cur.dim())
            break;
        cur = nx;
        f.derived_series.push_back(cur.dim());
    }
    Subspace all = Subspace::full(g.field(), g.dim());
    cur = all;
    f.lower_central.push_back(cur.dim());
    while (cur.dim() > 0) {
        Subspace nx = bracket_span(g, all, cur);
        if (nx.dim() == cur.dim())
            break;
        cur = nx;
        f.lower_central.push_back(cur.dim());
    }
    f.center = center(g).dim();
    f.derivations = derivation_dim(g);
    if (with_weights && !g.grading().empty()) {
        f.weights = g.grading().weights;
        std::sort(f.weights.begin(), f.weights.end());
    }
    return f;
}

std::string IsoResult::status_name() const
{
    switch (status) {
    case IsoStatus::found:
        return "found";
    case IsoStatus::distinguished:
        return "distinguished";
    case IsoStatus::exhausted:
        return "exhausted";
    case IsoStatus::unsupported:
        return "unsupported";
    }
    return "?";
}

namespace {

constexpr int kMaxSearchDim = 22;

int rank_masks(std::vector<std::uint64_t> cols)
{
    int r = 0;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        std::uint64_t v = cols[i];
        if (!v)
            continue;
        ++r;
        std::uint64_t p = v & -v;
        for (std::size_t j = i + 1; j < cols.size(); ++j)
            if (cols[j] & p)
                cols[j] ^= v;
    }
    return r;
}

/// Depth of the deepest subspace in a chain that contains x.
struct Chain {
    std::vector<std::vector<std::uint64_t>> levels; // echelon rows per level
    static std::uint64_t reduce(const std::vector<std::uint64_t>& rows, std::uint64_t v)
    {
        for (auto r : rows)
            if (v & (r & -r))
                v ^= r;
        return v;
    }
    int depth(std::uint64_t x) const
    {
        int d = 0;
        for (std::size_t i = 0; i < levels.size(); ++i)
            if (reduce(levels[i], x) == 0)
                d = int(i) + 1;
        return d;
    }
};

std::vector<std::uint64_t> to_mask_rows(const Subspace& s)
{
    std::vector<std::uint64_t> rows;
    for (auto& v : s.basis()) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i])
                m |= std::uint64_t{1} << i;
        for (auto r : rows)
            if (m & (r & -r))
                m ^= r;
        if (!m)
            continue;
        for (auto& r : rows)
            if (r & (m & -m))
                r ^= m;
        rows.push_back(m);
    }
    return rows;
}

Chain series_chain(const Algebra& g, bool derived)
{
    Chain c;
    Subspace all = Subspace::full(g.field(), g.dim());
    Subspace cur = all;
    while (cur.dim() > 0) {
        Subspace nx = derived ? bracket_span(g, cur, cur) : bracket_span(g, all, cur);
        if (nx.dim() == cur.dim())
            break;
        cur = nx;
        c.levels.push_back(to_mask_rows(cur));
    }
    c.levels.push_back(to_mask_rows(center(g)));
    return c;
}

/// Invariant of a single element under automorphisms.
std::uint64_t signature(const Algebra& g, std::uint64_t x, const Chain& der, const Chain& lcs)
{
    int n = g.dim();
    std::vector<std::uint64_t> col(static_cast<std::size_t>(n)), col2 = col, col3 = col;
    for (int j = 0; j < n; ++j)
        col[std::size_t(j)] = g.bracket_mask(x, std::uint64_t{1} << j);
    for (int j = 0; j < n; ++j)
        col2[std::size_t(j)] = g.bracket_mask(x, col[std::size_t(j)]);
    for (int j = 0; j < n; ++j)
        col3[std::size_t(j)] = g.bracket_mask(x, col2[std::size_t(j)]);
    std::uint64_t r1 = std::uint64_t(rank_masks(col)), r2 = std::uint64_t(rank_masks(col2)), r3 = std::uint64_t(rank_masks(col3));
    std::uint64_t d1 = std::uint64_t(der.depth(x)), d2 = std::uint64_t(lcs.depth(x));
    // whether ad_x^2 vanishes on the derived algebra acts as a further splitter
    return r1 | r2 << 8 | r3 << 16 | d1 << 24 | d2 << 32;
}

/// Partial map on a subalgebra spanned by pairs (source | image << 32),
/// in echelon form with respect to the source bits.
struct PartialMap {
    const Algebra* a;
    const Algebra* b;
    std::vector<std::uint64_t> rows;     // combined rows
    std::vector<std::uint64_t> img_rows; // echelon of images, for injectivity
    const std::vector<std::uint64_t>* sig_a = nullptr;
    const std::vector<std::uint64_t>* sig_b = nullptr;

    static constexpr std::uint64_t kSrc = 0xffffffffULL;

    bool add(std::uint64_t s, std::uint64_t t, std::vector<std::pair<std::uint64_t, std::uint64_t>>& fresh)
    {
        std::uint64_t c = s | t << 32;
        for (auto r : rows)
            if (c & (r & -r) & kSrc)
                c ^= r;
        if ((c & kSrc) == 0)
            return (c >> 32) == 0;
        std::uint64_t ti = c >> 32;
        for (auto r : img_rows)
            if (ti & (r & -r))
                ti ^= r;
        if (!ti)
            return false;
        if (sig_a && (*sig_a)[c & kSrc] != (*sig_b)[c >> 32])
            return false;
        img_rows.push_back(ti);
        std::uint64_t p = c & -c;
        for (auto& r : rows)
            if (r & p)
                r ^= c;
        rows.push_back(c);
        fresh.push_back({c & kSrc, c >> 32});
        return true;
    }

    /// Add the pair and close under brackets; false on inconsistency.
    bool extend(std::uint64_t s, std::uint64_t t)
    {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> elems;
        for (auto r : rows)
            elems.push_back({r & kSrc, r >> 32});
        std::size_t old = elems.size();
        std::vector<std::pair<std::uint64_t, std::uint64_t>> fresh;
        if (!add(s, t, fresh))
            return false;
        std::vector<std::pair<std::uint64_t, std::uint64_t>> queue = fresh;
        (void)old;
        while (!queue.empty()) {
            auto [x, y] = queue.back();
            queue.pop_back();
            std::vector<std::pair<std::uint64_t, std::uint64_t>> snapshot;
            for (auto r : rows)
                snapshot.push_back({r & kSrc, r >> 32});
            for (auto& [u, v] : snapshot) {
                fresh.clear();
                if (!add(a->bracket_mask(x, u), b->bracket_mask(y, v), fresh))
                    return false;
                for (auto& f : fresh)
                    queue.push_back(f);
            }
        }
        return true;
    }
};

}

IsoResult search_isomorphism(const Algebra& A, const Algebra& B, std::int64_t budget)
{
    IsoResult res;
    if (A.field() != B.field()) {
        res.status = IsoStatus::unsupported;
        res.reason = "algebras over different fields";
        return res;
    }
    bool weights = !A.grading().empty() && !B.grading().empty() && A.grading().moduli == B.grading().moduli;
    Fingerprint fa = fingerprint(A, false), fb = fingerprint(B, false);
    if (!(fa == fb)) {
        res.status = IsoStatus::distinguished;
        res.reason = fa.first_difference(fb);
        return res;
    }
    (void)weights;
    int n = A.dim();
    if (n == 0) {
        res.status = IsoStatus::found;
        return res;
    }
    if (!A.field().is_prime() || n > kMaxSearchDim) {
        res.status = IsoStatus::unsupported;
        res.reason = fmt::format("backtracking search needs GF(2) and dim <= {}", kMaxSearchDim);
        return res;
    }
    Chain da = series_chain(A, true), la = series_chain(A, false);
    Chain db = series_chain(B, true), lb = series_chain(B, false);
    std::uint64_t N = std::uint64_t{1} << n;
    std::vector<std::uint64_t> sigA(N), sigB(N);
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> classB;
    std::unordered_map<std::uint64_t, std::int64_t> countA;
    for (std::uint64_t x = 1; x < N; ++x) {
        sigA[x] = signature(A, x, da, la);
        sigB[x] = signature(B, x, db, lb);
        classB[sigB[x]].push_back(x);
        ++countA[sigA[x]];
    }
    for (auto& [s, c] : countA) {
        auto it = classB.find(s);
        if (it == classB.end() || std::int64_t(it->second.size()) != c) {
            res.status = IsoStatus::distinguished;
            res.reason = "element signature distributions differ";
            return res;
        }
    }
    // greedy generating set for A, rarest signature classes first
    std::vector<std::uint64_t> order;
    for (std::uint64_t x = 1; x < N; ++x)
        order.push_back(x);
    std::stable_sort(order.begin(), order.end(), [&](std::uint64_t x, std::uint64_t y) { return countA[sigA[x]] < countA[sigA[y]]; });
    // greedy generating set: largest growth of the generated subalgebra, rarer classes on ties
    std::vector<std::uint64_t> gens;
    {
        constexpr std::size_t kProbe = 4096;
        PartialMap span{&A, &A, {}, {}};
        while (int(span.rows.size()) < n) {
            std::uint64_t best = 0;
            std::size_t best_dim = 0, probed = 0;
            for (std::uint64_t x : order) {
                std::uint64_t c = x;
                for (auto r : span.rows)
                    if (c & (r & -r))
                        c ^= r;
                if (!(c & PartialMap::kSrc))
                    continue;
                PartialMap trial = span;
                trial.extend(x, x);
                if (trial.rows.size() > best_dim) {
                    best_dim = trial.rows.size();
                    best = x;
                }
                if (++probed >= kProbe || int(best_dim) == n)
                    break;
            }
            span.extend(best, best);
            gens.push_back(best);
        }
    }
    std::vector<PartialMap> stack(gens.size() + 1, PartialMap{&A, &B, {}, {}, &sigA, &sigB});
    std::vector<std::size_t> pos(gens.size(), 0);
    std::size_t level = 0;
    while (true) {
        if (res.nodes >= budget) {
            res.status = IsoStatus::exhausted;
            res.reason = fmt::format("budget of {} nodes exhausted", budget);
            return res;
        }
        const auto& cands = classB[sigA[gens[level]]];
        bool advanced = false;
        while (pos[level] < cands.size()) {
            std::uint64_t t = cands[pos[level]++];
            ++res.nodes;
            PartialMap pm = stack[level];
            if (!pm.extend(gens[level], t))
                continue;
            stack[level + 1] = std::move(pm);
            advanced = true;
            break;
        }
        if (advanced) {
            if (level + 1 == gens.size()) {
                const PartialMap& pm = stack[level + 1];
                if (int(pm.rows.size()) == n) {
                    // solve for images of unit vectors: rows are reduced on the source part
                    LinearMap m;
                    m.images.assign(std::size_t(n), zero_vec(n));
                    for (auto r : pm.rows) {
                        int p = std::countr_zero(r & PartialMap::kSrc);
                        m.images[std::size_t(p)] = mask_to_vec(r >> 32, n);
                    }
                    std::string why;
                    if (is_isomorphism(A, B, m, &why)) {
                        res.status = IsoStatus::found;
                        res.map = std::move(m);
                        return res;
                    }
                }
                continue;
            }
            ++level;
            pos[level] = 0;
            continue;
        }
        if (level == 0) {
            res.status = IsoStatus::distinguished;
            res.reason = "exhaustive search found no isomorphism";
            return res;
        }
        --level;
    }
}

IsoResult search_graded_isomorphism(const Algebra& A, const std::vector<int>& deg_a, const Algebra& B,
                                    const std::vector<int>& deg_b, std::int64_t budget)
{
    IsoResult res;
    int n = A.dim();
    if (A.field() != B.field() || B.dim() != n) {
        res.status = IsoStatus::distinguished;
        res.reason = "different fields or dimensions";
        return res;
    }
    if (!A.field().is_prime() || n > 32 || int(deg_a.size()) != n || int(deg_b.size()) != n) {
        res.status = IsoStatus::unsupported;
        res.reason = "graded search needs GF(2), dim <= 32 and one degree per basis vector";
        return res;
    }
    std::map<int, int> ca, cb;
    for (int d : deg_a)
        ++ca[d];
    for (int d : deg_b)
        ++cb[d];
    // degree scaling r = num/den with deg_b = r deg_a
    int num = 0, den = 1;
    bool scaled = false;
    for (int d1 = 1; d1 <= 4 && !scaled; ++d1)
        for (int nm : {1, -1, 2, -2, 3, -3, 4, -4}) {
            bool ok = true;
            for (auto& [d, c] : ca) {
                if ((d * nm) % d1 != 0) {
                    ok = false;
                    break;
                }
                auto it = cb.find(d * nm / d1);
                if (it == cb.end() || it->second != c) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                num = nm;
                den = d1;
                scaled = true;
                break;
            }
        }
    if (!scaled) {
        res.status = IsoStatus::distinguished;
        res.reason = "graded dimensions do not match under any degree scaling";
        return res;
    }
    std::map<int, std::vector<int>> comp_b;
    for (int i = 0; i < n; ++i)
        comp_b[deg_b[std::size_t(i)]].push_back(i);
    auto candidates = [&](int d) {
        std::vector<std::uint64_t> out;
        auto& units = comp_b[d * num / den];
        std::uint64_t N = std::uint64_t{1} << units.size();
        for (std::uint64_t m = 1; m < N; ++m) {
            std::uint64_t v = 0;
            for (std::size_t b = 0; b < units.size(); ++b)
                if ((m >> b) & 1)
                    v |= std::uint64_t{1} << units[b];
            out.push_back(v);
        }
        return out;
    };
    // homogeneous generators of A by greedy growth
    std::vector<int> gens;
    {
        PartialMap span{&A, &A, {}, {}};
        while (int(span.rows.size()) < n) {
            int best = -1;
            std::size_t best_dim = 0;
            for (int i = 0; i < n; ++i) {
                std::uint64_t c = std::uint64_t{1} << i;
                for (auto r : span.rows)
                    if (c & (r & -r))
                        c ^= r;
                if (!(c & PartialMap::kSrc))
                    continue;
                PartialMap trial = span;
                trial.extend(std::uint64_t{1} << i, std::uint64_t{1} << i);
                // prefer large growth, then small candidate sets
                std::size_t score = trial.rows.size();
                if (best < 0 || score > best_dim ||
                    (score == best_dim && candidates(deg_a[std::size_t(i)]).size() <
                                              candidates(deg_a[std::size_t(best)]).size())) {
                    best = i;
                    best_dim = score;
                }
            }
            span.extend(std::uint64_t{1} << best, std::uint64_t{1} << best);
            gens.push_back(best);
        }
    }
    std::vector<std::vector<std::uint64_t>> cands;
    for (int g : gens)
        cands.push_back(candidates(deg_a[std::size_t(g)]));
    std::vector<PartialMap> stack(gens.size() + 1, PartialMap{&A, &B, {}, {}});
    std::vector<std::size_t> pos(gens.size(), 0);
    std::size_t level = 0;
    while (true) {
        if (res.nodes >= budget) {
            res.status = IsoStatus::exhausted;
            res.reason = fmt::format("budget of {} nodes exhausted", budget);
            return res;
        }
        bool advanced = false;
        while (pos[level] < cands[level].size()) {
            std::uint64_t t = cands[level][pos[level]++];
            ++res.nodes;
            PartialMap pm = stack[level];
            if (!pm.extend(std::uint64_t{1} << gens[level], t))
                continue;
            stack[level + 1] = std::move(pm);
            advanced = true;
            break;
        }
        if (advanced) {
            if (level + 1 == gens.size()) {
                const PartialMap& pm = stack[level + 1];
                if (int(pm.rows.size()) == n) {
                    LinearMap m;
                    m.images.assign(std::size_t(n), zero_vec(n));
                    for (auto r : pm.rows) {
                        int p = std::countr_zero(r & PartialMap::kSrc);
                        m.images[std::size_t(p)] = mask_to_vec(r >> 32, n);
                    }
                    if (is_isomorphism(A, B, m)) {
                        res.status = IsoStatus::found;
                        res.map = std::move(m);
                        res.reason = fmt::format("degree scaling {}/{}", num, den);
                        return res;
                    }
                }
                continue;
            }
            ++level;
            pos[level] = 0;
            continue;
        }
        if (level == 0) {
            res.status = IsoStatus::distinguished;
            res.reason = "no graded isomorphism with this degree scaling";
            return res;
        }
        --level;
    }
}

FormReport check_invariant_form(const Algebra& g, const Mat& K)
{
    FormReport r;
    int n = g.dim();
    const Field& F = g.field();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (K.at(i, j) != K.at(j, i))
                r.symmetric = false;
    // K([e_u,e_z], e_v) = K(e_u, [e_z, e_v])
    for (int u = 0; u < n && r.invariant; ++u)
        for (int z = 0; z < n && r.invariant; ++z)
            for (int v = 0; v < n; ++v) {
                Elt lhs = 0, rhs = 0;
                for (auto& t : g.bracket(u, z))
                    lhs ^= F.mul(t.c, K.at(t.k, v));
                for (auto& t : g.bracket(z, v))
                    rhs ^= F.mul(t.c, K.at(u, t.k));
                if (lhs != rhs) {
                    r.invariant = false;
                    break;
                }
            }
    r.rank = K.rank();
    r.rank_full = r.rank == n;
    return r;
}

}
