#include "mlie/cohomology.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <map>
#include <unordered_map>

namespace mlie {

Cochain2 d1(const Algebra& g, const Mat& c)
{
    int n = g.dim();
    const Field& F = g.field();
    Cochain2 r(n);
    std::vector<Vec> img;
    for (int i = 0; i < n; ++i)
        img.push_back(c.col(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec v = g.bracket(img[std::size_t(i)], g.unit(j));
            axpy(F, v, 1, g.bracket(g.unit(i), img[std::size_t(j)]));
            axpy(F, v, 1, c.apply(g.bracket_vec(i, j)));
            r.add(i, j, v, F);
        }
    return r;
}

namespace {

/// u -> c(u, e_z) for a vector u.
Vec apply_left(const Field& F, const Cochain2& c, const Vec& u, int z)
{
    Vec r = zero_vec(c.dim);
    for (int k = 0; k < c.dim; ++k)
        if (u[std::size_t(k)] && k != z)
            axpy(F, r, u[std::size_t(k)], c.value(k, z));
    return r;
}

}

Cochain3 d2(const Algebra& g, const Cochain2& c)
{
    int n = g.dim();
    const Field& F = g.field();
    Cochain3 r(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int e = b + 1; e < n; ++e) {
                Vec v = g.bracket_basis(a, c.value(b, e));
                axpy(F, v, 1, g.bracket_basis(b, c.value(e, a)));
                axpy(F, v, 1, g.bracket_basis(e, c.value(a, b)));
                axpy(F, v, 1, apply_left(F, c, g.bracket_vec(a, b), e));
                axpy(F, v, 1, apply_left(F, c, g.bracket_vec(b, e), a));
                axpy(F, v, 1, apply_left(F, c, g.bracket_vec(e, a), b));
                r.add(a, b, e, v, F);
            }
    return r;
}

Cochain3 circle(const Algebra& g, const Cochain2& a, const Cochain2& b)
{
    int n = g.dim();
    const Field& F = g.field();
    Cochain3 r(n);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z) {
                Vec v = apply_left(F, a, b.value(x, y), z);
                axpy(F, v, 1, apply_left(F, a, b.value(y, z), x));
                axpy(F, v, 1, apply_left(F, a, b.value(z, x), y));
                r.add(x, y, z, v, F);
            }
    return r;
}

bool is_cocycle(const Algebra& g, const Cochain2& c)
{
    return d2(g, c).is_zero();
}

namespace {

using SparseCol = std::vector<std::pair<std::int64_t, Elt>>;

struct Block {
    std::vector<int> weight;
    std::vector<std::array<int, 3>> c2; // (k, i, j), i < j
    std::unordered_map<std::int64_t, int> c2_index;
    std::vector<std::pair<int, int>> c1; // (k, i): e_i -> e_k
};

std::int64_t key2(int n, int k, int i, int j)
{
    return (std::int64_t(k) * n + i) * n + j;
}

std::vector<int> full_weight(const Algebra& g, int k, const std::vector<int>& sub)
{
    const Grading& gr = g.grading();
    std::vector<int> w = g.weight(k);
    for (int a = 0; a < gr.arity(); ++a)
        w[std::size_t(a)] -= sub[std::size_t(a)];
    return gr.normalize(w);
}

/// All blocks, keyed by full weight; a single block for ungraded algebras.
std::map<std::vector<int>, Block> make_blocks(const Algebra& g)
{
    int n = g.dim();
    bool graded = !g.grading().empty();
    std::map<std::vector<int>, Block> blocks;
    auto wsum = [&](int i, int j) {
        std::vector<int> s = g.weight(i);
        for (std::size_t a = 0; a < s.size(); ++a)
            s[a] += g.weight(j)[a];
        return s;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> s = graded ? wsum(i, j) : std::vector<int>{};
            for (int k = 0; k < n; ++k) {
                std::vector<int> w = graded ? full_weight(g, k, s) : std::vector<int>{};
                Block& b = blocks[w];
                b.weight = w;
                b.c2_index[key2(n, k, i, j)] = int(b.c2.size());
                b.c2.push_back({k, i, j});
            }
        }
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            std::vector<int> w = graded ? full_weight(g, k, g.weight(i)) : std::vector<int>{};
            auto it = blocks.find(w);
            if (it != blocks.end())
                it->second.c1.push_back({k, i});
        }
    return blocks;
}

/// contains[i] = pairs (a<b) with the coefficient of e_i in [e_a, e_b].
std::vector<std::vector<std::array<int, 3>>> bracket_index(const Algebra& g)
{
    int n = g.dim();
    std::vector<std::vector<std::array<int, 3>>> idx(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (auto& t : g.bracket(a, b))
                idx[std::size_t(t.k)].push_back({a, b, int(t.c)});
    return idx;
}

std::int64_t key3(int n, int m, int a, int b, int c)
{
    int s[3] = {a, b, c};
    std::sort(s, s + 3);
    return ((std::int64_t(m) * n + s[0]) * n + s[1]) * n + s[2];
}

/// d2 of the elementary cochain (e_i ^ e_j)* (x) e_k as sparse rows.
SparseCol d2_column(const Algebra& g, const std::vector<std::vector<std::array<int, 3>>>& idx, int k, int i, int j)
{
    int n = g.dim();
    std::map<std::int64_t, Elt> acc;
    auto put = [&](std::int64_t key, Elt c) {
        Elt& x = acc[key];
        x ^= c;
    };
    for (int a = 0; a < n; ++a) {
        if (a == i || a == j)
            continue;
        for (auto& t : g.bracket(std::min(a, k), std::max(a, k)))
            if (a != k)
                put(key3(n, t.k, a, i, j), t.c);
    }
    for (auto& [a, b, c] : idx[std::size_t(i)])
        if (a != j && b != j)
            put(key3(n, k, a, b, j), Elt(c));
    for (auto& [a, b, c] : idx[std::size_t(j)])
        if (a != i && b != i)
            put(key3(n, k, a, b, i), Elt(c));
    SparseCol col;
    for (auto& [key, c] : acc)
        if (c)
            col.push_back({key, c});
    return col;
}

/// Kernel of the matrix with the given sparse columns.
std::vector<Vec> column_kernel(const Field& F, const std::vector<SparseCol>& cols, std::int64_t budget)
{
    std::unordered_map<std::int64_t, int> rows;
    for (auto& c : cols)
        for (auto& [key, v] : c)
            rows.emplace(key, int(rows.size()));
    int nr = int(rows.size()), nc = int(cols.size());
    if (std::int64_t(nr) * nc > budget)
        throw AlgebraError(fmt::format("cohomology block of size {} x {} exceeds the budget; restrict the weight", nr, nc));
    std::vector<Vec> out;
    if (F.is_prime()) {
        BitEchelon e(nr, nc);
        for (int c = 0; c < nc; ++c) {
            BitVec v(nr);
            for (auto& [key, x] : cols[std::size_t(c)])
                v.set(rows[key]);
            e.insert(v, c);
        }
        for (auto& t : e.kernel())
            out.push_back(from_bits(t));
    } else {
        Echelon e(F, nr, nc);
        for (int c = 0; c < nc; ++c) {
            Vec v = zero_vec(nr);
            for (auto& [key, x] : cols[std::size_t(c)])
                v[std::size_t(rows[key])] = x;
            e.insert(v, c);
        }
        out = e.kernel();
    }
    return out;
}

Cochain2 from_block(const Algebra& g, const Block& b, const Vec& x)
{
    Cochain2 c(g.dim());
    for (std::size_t a = 0; a < b.c2.size(); ++a)
        if (x[a]) {
            auto [k, i, j] = b.c2[a];
            c.add_term(k, i, j, x[a], g.field());
        }
    return c;
}

/// Coordinates of c in the block; false if c has terms outside it.
bool to_block(const Algebra& g, const Block& b, const Cochain2& c, Vec& x)
{
    int n = g.dim();
    x = zero_vec(int(b.c2.size()));
    for (auto& [ij, v] : c.terms)
        for (int k = 0; k < n; ++k)
            if (v[std::size_t(k)]) {
                auto it = b.c2_index.find(key2(n, k, ij.first, ij.second));
                if (it == b.c2_index.end())
                    return false;
                x[std::size_t(it->second)] = v[std::size_t(k)];
            }
    return true;
}

/// Coboundaries of the block as a subspace of block coordinates, with the
/// 1-cochain behind every inserted vector.
struct BoundarySpace {
    Subspace space;
    Echelon tracked;
};

Cochain2 d1_elementary(const Algebra& g, int k, int i)
{
    Mat c(g.field(), g.dim(), g.dim());
    c.at(k, i) = 1;
    return d1(g, c);
}

Subspace boundaries(const Algebra& g, const Block& b)
{
    Subspace s(g.field(), int(b.c2.size()));
    for (auto [k, i] : b.c1) {
        Vec x;
        if (!to_block(g, b, d1_elementary(g, k, i), x))
            throw AlgebraError("coboundary left its weight block; the grading is inconsistent");
        s.add(x);
    }
    return s;
}

struct BlockResult {
    std::vector<Vec> cycles;
    Subspace bounds;
};

BlockResult solve_block(const Algebra& g, const Block& b, const std::vector<std::vector<std::array<int, 3>>>& idx,
                        std::int64_t budget)
{
    std::vector<SparseCol> cols;
    for (auto [k, i, j] : b.c2)
        cols.push_back(d2_column(g, idx, k, i, j));
    BlockResult r;
    r.cycles = column_kernel(g.field(), cols, budget);
    r.bounds = boundaries(g, b);
    return r;
}

bool matches(const Algebra& g, const std::vector<int>& full, const std::optional<std::vector<int>>& w, WeightMode mode)
{
    if (!w)
        return true;
    if (g.grading().empty())
        throw AlgebraError("weight filter on an ungraded algebra");
    std::vector<int> p = project_weight(g.grading(), full, mode);
    std::vector<int> want = *w;
    auto sel = select_components(g.grading(), mode);
    if (want.size() != sel.size())
        throw AlgebraError(fmt::format("weight filter needs {} components", sel.size()));
    for (std::size_t a = 0; a < sel.size(); ++a) {
        int m = g.grading().moduli[std::size_t(sel[a])];
        if (m > 0)
            want[a] = ((want[a] % m) + m) % m;
    }
    return p == want;
}

}

H2Basis compute_h2(const Algebra& g, const H2Options& opt)
{
    H2Basis out;
    out.mode = opt.mode;
    auto blocks = make_blocks(g);
    auto idx = bracket_index(g);
    for (auto& [w, b] : blocks) {
        if (!matches(g, w, opt.weight, opt.mode))
            continue;
        BlockResult r = solve_block(g, b, idx, opt.budget);
        H2Block hb;
        hb.weight = w;
        hb.dim_c1 = int(b.c1.size());
        hb.dim_c2 = int(b.c2.size());
        hb.dim_z = int(r.cycles.size());
        hb.dim_b = r.bounds.dim();
        Subspace acc = r.bounds;
        for (auto& z : r.cycles) {
            if (!acc.add(z))
                continue;
            Vec rep = z;
            r.bounds.reduce(rep);
            hb.representatives.push_back(from_block(g, b, rep));
        }
        hb.dim_h = int(hb.representatives.size());
        if (hb.dim_h != hb.dim_z - hb.dim_b)
            throw AlgebraError("coboundaries are not contained in the cocycles");
        out.dim_z += hb.dim_z;
        out.dim_b += hb.dim_b;
        out.dim_h += hb.dim_h;
        for (auto& c : hb.representatives) {
            out.representatives.push_back(c);
            out.weights.push_back(g.grading().empty() ? std::vector<int>{} : project_weight(g.grading(), w, opt.mode));
        }
        out.blocks.push_back(std::move(hb));
    }
    return out;
}

H1Dims compute_h1_dim(const Algebra& g)
{
    H1Dims d;
    d.z = derivation_dim(g);
    d.b = g.dim() - center(g).dim();
    d.h = d.z - d.b;
    return d;
}

std::vector<std::pair<std::vector<int>, Cochain2>> split_by_weight(const Algebra& g, const Cochain2& c)
{
    std::map<std::vector<int>, Cochain2> parts;
    bool graded = !g.grading().empty();
    for (auto& [ij, v] : c.terms)
        for (int k = 0; k < g.dim(); ++k)
            if (v[std::size_t(k)]) {
                std::vector<int> w = graded ? term_weight(g, k, ij.first, ij.second) : std::vector<int>{};
                auto it = parts.try_emplace(w, Cochain2(g.dim())).first;
                it->second.add_term(k, ij.first, ij.second, v[std::size_t(k)], g.field());
            }
    return {parts.begin(), parts.end()};
}

std::optional<Mat> coboundary_primitive(const Algebra& g, const Cochain2& c)
{
    const Field& F = g.field();
    int n = g.dim();
    Mat prim(F, n, n);
    auto blocks = make_blocks(g);
    for (auto& [w, part] : split_by_weight(g, c)) {
        auto it = blocks.find(w);
        if (it == blocks.end())
            return std::nullopt;
        const Block& b = it->second;
        if (b.c1.empty())
            return std::nullopt; // part is nonzero and nothing maps into its block
        Echelon e(F, int(b.c2.size()), int(b.c1.size()));
        for (std::size_t a = 0; a < b.c1.size(); ++a) {
            Vec x;
            to_block(g, b, d1_elementary(g, b.c1[a].first, b.c1[a].second), x);
            e.insert(x, int(a));
        }
        Vec target;
        to_block(g, b, part, target);
        auto sol = e.solve(target);
        if (!sol)
            return std::nullopt;
        for (std::size_t a = 0; a < b.c1.size(); ++a)
            if ((*sol)[a])
                prim.at(b.c1[a].first, b.c1[a].second) ^= (*sol)[a];
    }
    return prim;
}

bool is_coboundary(const Algebra& g, const Cochain2& c)
{
    return coboundary_primitive(g, c).has_value();
}

Completion complete_printed(const Algebra& g, const Cochain2& printed, std::int64_t budget)
{
    Completion out;
    auto parts = split_by_weight(g, printed);
    if (parts.size() != 1)
        return out;
    auto blocks = make_blocks(g);
    const Block& b = blocks.at(parts.front().first);
    auto idx = bracket_index(g);
    BlockResult r = solve_block(g, b, idx, budget);
    Vec want;
    to_block(g, b, printed, want);
    std::vector<int> pos;
    for (std::size_t a = 0; a < want.size(); ++a)
        if (want[a])
            pos.push_back(int(a));
    // unknowns: coefficients of the cycle basis; equations: prescribed coordinates
    const Field& F = g.field();
    int nz = int(r.cycles.size());
    if (nz == 0)
        return out;
    Echelon e(F, int(pos.size()), nz);
    for (int a = 0; a < nz; ++a) {
        Vec row;
        for (int p : pos)
            row.push_back(r.cycles[std::size_t(a)][std::size_t(p)]);
        e.insert(row, a);
    }
    Vec rhs;
    for (int p : pos)
        rhs.push_back(want[std::size_t(p)]);
    auto sol = e.solve(rhs);
    if (!sol)
        return out;
    out.consistent = true;
    auto combine = [&](const Vec& coef) {
        Vec v = zero_vec(int(b.c2.size()));
        for (int a = 0; a < nz; ++a)
            if (coef[std::size_t(a)])
                axpy(F, v, coef[std::size_t(a)], r.cycles[std::size_t(a)]);
        return v;
    };
    Vec part = combine(*sol);
    std::vector<Vec> dirs;
    for (auto& k : e.kernel())
        dirs.push_back(combine(k));
    out.free_dim = int(dirs.size());
    for (auto& d : dirs)
        out.directions.push_back(from_block(g, b, d));
    if (!r.bounds.contains(part)) {
        out.non_coboundary = true;
        out.example = from_block(g, b, part);
        return out;
    }
    for (auto& d : dirs)
        if (!r.bounds.contains(d)) {
            Vec v = part;
            axpy(F, v, 1, d);
            out.non_coboundary = true;
            out.example = from_block(g, b, v);
            return out;
        }
    out.example = from_block(g, b, part);
    return out;
}


std::optional<std::vector<int>> full_weight_of(const Algebra& g, const Cochain2& c)
{
    auto parts = split_by_weight(g, c);
    if (parts.empty())
        return std::vector<int>{};
    if (parts.size() != 1)
        return std::nullopt;
    return parts.front().first;
}

H2Classes::H2Classes(const Algebra& g, const std::vector<int>& full_weight, std::int64_t budget)
    : F_(g.field()), n_(g.dim())
{
    auto blocks = make_blocks(g);
    block_.weight = full_weight;
    auto it = blocks.find(full_weight);
    if (it == blocks.end()) {
        cycles_ = Subspace(F_, 0);
        basis_ = Echelon(F_, 0, 0);
        return;
    }
    const Block& b = it->second;
    cells_ = b.c2;
    index_ = b.c2_index;
    BlockResult r = solve_block(g, b, bracket_index(g), budget);
    int nc = int(cells_.size());
    cycles_ = Subspace::span(F_, nc, r.cycles);
    std::vector<Vec> reps;
    Subspace acc = r.bounds;
    for (auto& z : r.cycles) {
        if (!acc.add(z))
            continue;
        Vec rep = z;
        r.bounds.reduce(rep);
        reps.push_back(rep);
        block_.representatives.push_back(from_block(g, b, rep));
    }
    nb_ = r.bounds.dim();
    basis_ = Echelon(F_, nc, nb_ + int(reps.size()));
    int id = 0;
    for (auto& v : r.bounds.basis())
        basis_.insert(v, id++);
    for (auto& v : reps)
        basis_.insert(v, id++);
    block_.dim_c1 = int(b.c1.size());
    block_.dim_c2 = nc;
    block_.dim_z = int(r.cycles.size());
    block_.dim_b = nb_;
    block_.dim_h = int(reps.size());
}

std::optional<Vec> H2Classes::coords(const Cochain2& c) const
{
    Vec x = zero_vec(int(cells_.size()));
    for (auto& [ij, v] : c.terms)
        for (int k = 0; k < n_; ++k)
            if (v[std::size_t(k)]) {
                auto it = index_.find(key2(n_, k, ij.first, ij.second));
                if (it == index_.end())
                    return std::nullopt;
                x[std::size_t(it->second)] = v[std::size_t(k)];
            }
    if (!cycles_.contains(x))
        return std::nullopt;
    if (basis_.ntrack() == 0)
        return Vec{};
    auto sol = basis_.solve(x);
    if (!sol)
        throw AlgebraError("cocycle outside the span of coboundaries and representatives");
    return Vec(sol->begin() + nb_, sol->end());
}

Cochain2 H2Classes::representative(const Vec& coords) const
{
    Cochain2 c(n_);
    for (std::size_t a = 0; a < coords.size(); ++a)
        if (coords[a])
            c = c.plus(block_.representatives[a].scaled(coords[a], F_), F_);
    return c;
}

namespace {

std::vector<int> weight3(const Algebra& g, int m, int a, int b, int c)
{
    const Grading& gr = g.grading();
    std::vector<int> w = g.weight(m);
    for (int x : {a, b, c})
        for (int i = 0; i < gr.arity(); ++i)
            w[std::size_t(i)] -= g.weight(x)[std::size_t(i)];
    return gr.normalize(w);
}

/// Combination of the columns equal to the target, if any.
std::optional<Vec> sparse_solve(const Field& F, const std::vector<SparseCol>& cols, const SparseCol& target,
                                std::int64_t budget)
{
    std::unordered_map<std::int64_t, int> rows;
    for (auto& c : cols)
        for (auto& [key, v] : c)
            rows.emplace(key, int(rows.size()));
    for (auto& [key, v] : target)
        if (!rows.count(key))
            return std::nullopt;
    int nr = int(rows.size()), nc = int(cols.size());
    if (std::int64_t(nr) * nc > budget)
        throw AlgebraError(fmt::format("coboundary system of size {} x {} exceeds the budget", nr, nc));
    if (F.is_prime()) {
        BitEchelon e(nr, nc);
        for (int c = 0; c < nc; ++c) {
            BitVec v(nr);
            for (auto& [key, x] : cols[std::size_t(c)])
                v.set(rows[key]);
            e.insert(v, c);
        }
        BitVec t(nr), combo;
        for (auto& [key, x] : target)
            t.set(rows[key]);
        if (!e.contains(t))
            return std::nullopt;
        if (!e.solve(t, combo))
            return std::nullopt;
        return from_bits(combo);
    }
    Echelon e(F, nr, nc);
    for (int c = 0; c < nc; ++c) {
        Vec v = zero_vec(nr);
        for (auto& [key, x] : cols[std::size_t(c)])
            v[std::size_t(rows[key])] = x;
        e.insert(v, c);
    }
    Vec t = zero_vec(nr);
    for (auto& [key, x] : target)
        t[std::size_t(rows[key])] = x;
    return e.solve(t);
}

}

std::optional<Cochain2> d2_preimage(const Algebra& g, const Cochain3& t, std::int64_t budget)
{
    int n = g.dim();
    const Field& F = g.field();
    bool graded = !g.grading().empty();
    std::map<std::vector<int>, SparseCol> parts;
    for (auto& [abc, v] : t.terms)
        for (int m = 0; m < n; ++m)
            if (v[std::size_t(m)]) {
                auto w = graded ? weight3(g, m, abc[0], abc[1], abc[2]) : std::vector<int>{};
                parts[w].push_back({key3(n, m, abc[0], abc[1], abc[2]), v[std::size_t(m)]});
            }
    Cochain2 out(n);
    if (parts.empty())
        return out;
    auto blocks = make_blocks(g);
    auto idx = bracket_index(g);
    for (auto& [w, target] : parts) {
        std::sort(target.begin(), target.end());
        auto it = blocks.find(w);
        if (it == blocks.end())
            return std::nullopt;
        const Block& b = it->second;
        std::vector<SparseCol> cols;
        for (auto [k, i, j] : b.c2)
            cols.push_back(d2_column(g, idx, k, i, j));
        auto sol = sparse_solve(F, cols, target, budget);
        if (!sol)
            return std::nullopt;
        out = out.plus(from_block(g, b, *sol), F);
    }
    return out;
}

std::vector<Cochain2> coboundary_generators(const Algebra& g, const std::vector<int>& full_weight)
{
    auto blocks = make_blocks(g);
    auto it = blocks.find(full_weight);
    std::vector<Cochain2> out;
    if (it == blocks.end())
        return out;
    const Block& b = it->second;
    Subspace acc(g.field(), int(b.c2.size()));
    for (auto [k, i] : b.c1) {
        Cochain2 c = d1_elementary(g, k, i);
        Vec x;
        if (to_block(g, b, c, x) && acc.add(x))
            out.push_back(c);
    }
    return out;
}

}
