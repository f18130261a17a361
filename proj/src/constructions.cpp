#include "mlie/constructions.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace mlie {

namespace {

std::uint64_t bit(int i)
{
    return std::uint64_t{1} << i;
}

int parity(std::uint64_t x)
{
    return std::popcount(x) & 1;
}

}

BilinearForm BilinearForm::Pi(int n)
{
    if (n <= 0 || n % 2 != 0 || n > 64)
        throw AlgebraError("Pi form needs an even dimension between 2 and 64");
    int m = n / 2;
    BilinearForm B;
    B.n = n;
    B.rows.assign(std::size_t(n), 0);
    for (int i = 0; i < m; ++i) {
        B.rows[std::size_t(i)] = bit(m + i);
        B.rows[std::size_t(m + i)] = bit(i);
    }
    return B;
}

BilinearForm BilinearForm::I(int n)
{
    if (n <= 0 || n > 64)
        throw AlgebraError("I form needs a dimension between 1 and 64");
    BilinearForm B;
    B.n = n;
    for (int i = 0; i < n; ++i)
        B.rows.push_back(bit(i));
    return B;
}

BilinearForm BilinearForm::from_rows(std::vector<std::uint64_t> rows)
{
    BilinearForm B;
    B.n = int(rows.size());
    B.rows = std::move(rows);
    if (!B.symmetric())
        throw AlgebraError("bilinear form is not symmetric");
    return B;
}

int BilinearForm::operator()(std::uint64_t u, std::uint64_t v) const
{
    return parity(functional(u) & v);
}

std::uint64_t BilinearForm::functional(std::uint64_t u) const
{
    std::uint64_t r = 0;
    for (; u; u &= u - 1)
        r ^= rows[std::size_t(std::countr_zero(u))];
    return r;
}

bool BilinearForm::symmetric() const
{
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (((rows[std::size_t(i)] >> j) & 1) != ((rows[std::size_t(j)] >> i) & 1))
                return false;
    return true;
}

bool BilinearForm::alternate() const
{
    if (!symmetric())
        return false;
    for (int i = 0; i < n; ++i)
        if ((rows[std::size_t(i)] >> i) & 1)
            return false;
    return true;
}

bool BilinearForm::nondegenerate() const
{
    std::vector<std::uint64_t> r = rows;
    int rank = 0;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = rank; i < n; ++i)
            if ((r[std::size_t(i)] >> c) & 1) {
                p = i;
                break;
            }
        if (p < 0)
            continue;
        std::swap(r[std::size_t(p)], r[std::size_t(rank)]);
        for (int i = 0; i < n; ++i)
            if (i != rank && ((r[std::size_t(i)] >> c) & 1))
                r[std::size_t(i)] ^= r[std::size_t(rank)];
        ++rank;
    }
    return rank == n;
}

int QuadraticForm::operator()(std::uint64_t u) const
{
    int q = parity(u & diag);
    for (std::uint64_t a = u; a; a &= a - 1) {
        int i = std::countr_zero(a);
        std::uint64_t above = i + 1 >= 64 ? 0 : ~((std::uint64_t{1} << (i + 1)) - 1);
        q ^= parity(B.rows[std::size_t(i)] & u & above);
    }
    return q;
}

QuadraticForm QuadraticForm::standard(int m, int A)
{
    QuadraticForm Q;
    Q.B = BilinearForm::Pi(2 * m);
    Q.diag = A ? (bit(0) | bit(m)) : 0;
    return Q;
}

bool QuadraticForm::polar_consistent() const
{
    std::uint64_t N = std::uint64_t{1} << dim();
    for (std::uint64_t u = 0; u < N; ++u)
        for (std::uint64_t v = 0; v < N; ++v)
            if (((*this)(u ^ v) ^ (*this)(u) ^ (*this)(v)) != B(u, v))
                return false;
    return true;
}

int arf_invariant(const QuadraticForm& Q)
{
    int n = Q.dim();
    if (n % 2 != 0 || n > 30 || !Q.B.alternate() || !Q.B.nondegenerate())
        throw AlgebraError("Arf invariant needs a non-degenerate alternate polar form in even dimension <= 30");
    int m = n / 2;
    std::uint64_t ones = 0;
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u)
        ones += std::uint64_t(Q(u));
    std::uint64_t half = std::uint64_t{1} << (m - 1), full = std::uint64_t{1} << m;
    if (ones == half * (full - 1))
        return 0;
    if (ones == half * (full + 1))
        return 1;
    throw AlgebraError(fmt::format("malformed quadratic form: Q takes value 1 on {} vectors", ones));
}

bool JSystem::contains(std::uint64_t u) const
{
    return std::binary_search(gamma.begin(), gamma.end(), u);
}

bool JSystem::closed(std::string* why) const
{
    for (std::size_t a = 0; a < gamma.size(); ++a)
        for (std::size_t b = a + 1; b < gamma.size(); ++b)
            if (B(gamma[a], gamma[b]) && !contains(gamma[a] ^ gamma[b])) {
                if (why)
                    *why = fmt::format("{} + {} is missing", vector_label(gamma[a], B.n), vector_label(gamma[b], B.n));
                return false;
            }
    return true;
}

std::string vector_label(std::uint64_t u, int n)
{
    std::string s = "e";
    for (int i = 0; i < n; ++i)
        s += ((u >> i) & 1) ? '1' : '0';
    return s;
}

Algebra build_jsystem_algebra(const JSystem& J, const Field& F)
{
    std::string why;
    if (!J.closed(&why))
        throw AlgebraError("not a J-system: " + why);
    int n = int(J.gamma.size());
    std::vector<std::string> labels;
    std::unordered_map<std::uint64_t, int> index;
    for (int i = 0; i < n; ++i) {
        labels.push_back(vector_label(J.gamma[std::size_t(i)], J.B.n));
        index[J.gamma[std::size_t(i)]] = i;
    }
    Algebra g(F, n, labels);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            std::uint64_t u = J.gamma[std::size_t(a)], v = J.gamma[std::size_t(b)];
            auto it = index.find(u ^ v);
            if (J.B(u, v) && it != index.end())
                g.set_bracket(a, b, Terms{{it->second, 1}});
        }
    Grading gr;
    gr.moduli.assign(std::size_t(J.B.n), 2);
    for (auto u : J.gamma) {
        std::vector<int> w;
        for (int i = 0; i < J.B.n; ++i)
            w.push_back(int((u >> i) & 1));
        gr.weights.push_back(w);
    }
    g.set_grading(std::move(gr));
    return g;
}

Algebra derived_algebra(const Algebra& g)
{
    return restrict_to(g, derived_subalgebra(g));
}

Algebra mod_center(const Algebra& g)
{
    return quotient(g, center(g)).algebra;
}

Algebra apply_variant(const Algebra& g, Variant v)
{
    switch (v) {
    case Variant::full:
        return g;
    case Variant::derived:
        return derived_algebra(g);
    case Variant::derived_mod_center:
        return mod_center(derived_algebra(g));
    }
    return g;
}

Algebra function_algebra(const Field& F, ShapePtr S, const std::vector<Mono>& basis, const FunBracket& br, bool mod_constants,
                         const FunWeight& weight, const std::vector<int>& moduli)
{
    int n = int(basis.size());
    std::unordered_map<Mono, int> index;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        index[basis[std::size_t(i)]] = i;
        labels.push_back(S->format(basis[std::size_t(i)]));
    }
    if (mod_constants && index.count(0))
        throw AlgebraError("function algebra modulo constants cannot contain the constant 1");
    std::vector<DPoly> fn;
    for (Mono m : basis)
        fn.push_back(DPoly::mono(F, S, m));
    Algebra g(F, n, labels);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            DPoly r = br(fn[std::size_t(a)], fn[std::size_t(b)]);
            Terms t;
            for (auto& [m, c] : r.terms()) {
                if (m == 0 && mod_constants)
                    continue;
                auto it = index.find(m);
                if (it == index.end())
                    throw AlgebraError(fmt::format("bracket [{}, {}] leaves the span: term {}", labels[std::size_t(a)],
                                                   labels[std::size_t(b)], S->format(m)));
                t.push_back({it->second, c});
            }
            g.set_bracket(a, b, std::move(t));
        }
    if (weight) {
        Grading gr;
        gr.moduli = moduli;
        for (Mono m : basis)
            gr.weights.push_back(weight(m));
        g.set_grading(std::move(gr));
    }
    return g;
}

ShapePtr poisson_shape(const std::vector<int>& N, bool pi)
{
    int n = int(N.size());
    std::vector<std::string> names;
    if (n == 2) {
        names = {"p", "q"};
    } else if (pi) {
        if (n % 2 != 0)
            throw AlgebraError("Pi form needs an even number of variables");
        for (int i = 0; i < n / 2; ++i)
            names.push_back(fmt::format("p{}", i + 1));
        for (int i = 0; i < n / 2; ++i)
            names.push_back(fmt::format("q{}", i + 1));
    } else {
        for (int i = 0; i < n; ++i)
            names.push_back(fmt::format("x{}", i + 1));
    }
    return std::make_shared<Shape>(N, names);
}

namespace {

FunBracket form_bracket(const BilinearForm& B)
{
    return [B](const DPoly& f, const DPoly& g) {
        DPoly r(f.field(), f.shape_ptr());
        for (int i = 0; i < B.n; ++i) {
            DPoly fi = f.partial(i);
            if (fi.is_zero())
                continue;
            for (std::uint64_t row = B.rows[std::size_t(i)]; row; row &= row - 1)
                r += fi * g.partial(std::countr_zero(row));
        }
        return r;
    };
}

bool is_standard_pi(const BilinearForm& B)
{
    return B.n % 2 == 0 && B.rows == BilinearForm::Pi(B.n).rows;
}

bool is_identity(const BilinearForm& B)
{
    return B.rows == BilinearForm::I(B.n).rows;
}

/// Z-gradings of po_Pi: (deg_p - 1, deg_q - 1) for one pair, otherwise
/// (deg p_i - deg q_i per pair, total degree - 2).
std::pair<FunWeight, std::vector<int>> pi_weight(ShapePtr S)
{
    int n = S->nvars();
    if (n == 2)
        return {[S](Mono m) { return std::vector<int>{S->exp(m, 0) - 1, S->exp(m, 1) - 1}; }, {0, 0}};
    int k = n / 2;
    return {[S, k](Mono m) {
                std::vector<int> w;
                for (int i = 0; i < k; ++i)
                    w.push_back(S->exp(m, i) - S->exp(m, k + i));
                w.push_back(S->degree(m) - 2);
                return w;
            },
            std::vector<int>(std::size_t(k + 1), 0)};
}

/// Parity of each exponent plus total degree - 2, the gradings of h_I.
std::pair<FunWeight, std::vector<int>> parity_weight(ShapePtr S, bool with_degree)
{
    int n = S->nvars();
    std::vector<int> moduli(std::size_t(n), 2);
    if (with_degree)
        moduli.push_back(0);
    return {[S, n, with_degree](Mono m) {
                std::vector<int> w;
                for (int i = 0; i < n; ++i)
                    w.push_back(S->exp(m, i) % 2);
                if (with_degree)
                    w.push_back(S->degree(m) - 2);
                return w;
            },
            moduli};
}

std::vector<Mono> nonconstant_basis(const Shape& S)
{
    std::vector<Mono> b = S.basis();
    b.erase(std::remove(b.begin(), b.end(), Mono{0}), b.end());
    return b;
}

}

Algebra build_poisson(const BilinearForm& B, const std::vector<int>& N, const Field& F)
{
    if (!B.alternate())
        throw AlgebraError("po is defined only for an alternate form; use build_hamiltonian for the I form");
    if (int(N.size()) != B.n)
        throw AlgebraError("shearing vector length differs from the form dimension");
    ShapePtr S = poisson_shape(N, true);
    FunWeight w;
    std::vector<int> mod;
    if (is_standard_pi(B))
        std::tie(w, mod) = pi_weight(S);
    return function_algebra(F, S, S->basis(), form_bracket(B), false, w, mod);
}

Algebra build_hamiltonian(const BilinearForm& B, const std::vector<int>& N, Variant v, const Field& F)
{
    if (!B.symmetric())
        throw AlgebraError("bilinear form must be symmetric");
    if (int(N.size()) != B.n)
        throw AlgebraError("shearing vector length differs from the form dimension");
    bool alt = B.alternate();
    ShapePtr S = poisson_shape(N, alt);
    FunWeight w;
    std::vector<int> mod;
    if (alt && is_standard_pi(B))
        std::tie(w, mod) = pi_weight(S);
    else if (is_identity(B))
        std::tie(w, mod) = parity_weight(S, true);
    Algebra g = function_algebra(F, S, nonconstant_basis(*S), form_bracket(B), true, w, mod);
    return apply_variant(g, v);
}

Algebra build_div_free_hI(int n, const std::vector<int>& N, Variant v, const Field& F)
{
    Algebra h = build_hamiltonian(BilinearForm::I(n), N, Variant::full, F);
    ShapePtr S = poisson_shape(N, false);
    std::vector<Mono> basis = nonconstant_basis(*S);
    std::unordered_map<Mono, int> index;
    for (std::size_t i = 0; i < basis.size(); ++i)
        index[basis[i]] = int(i);
    // rows of the divergence map: one equation per target monomial
    std::map<Mono, std::vector<std::pair<int, Elt>>> eqs;
    for (std::size_t a = 0; a < basis.size(); ++a) {
        DPoly f = DPoly::mono(F, S, basis[a]);
        DPoly div(F, S);
        for (int i = 0; i < n; ++i)
            div += f.partial_pow(i, 2);
        for (auto& [m, c] : div.terms())
            eqs[m].push_back({int(a), c});
    }
    RowReducer rr(F, h.dim());
    for (auto& [m, row] : eqs)
        rr.add_sparse(row);
    Subspace s = Subspace::span(F, h.dim(), rr.nullspace());
    if (!is_subalgebra(h, s))
        throw AlgebraError("divergence-free functions do not form a subalgebra");
    return apply_variant(restrict_to(h, s), v);
}

int jurman_index(int g, int h, int j, int t)
{
    int k = 1 << (g + h);
    return t * (k - 1) + (j + 1);
}

int jurman_coefficient(int g, int h, int i, int s, int j, int t, int* target)
{
    int k = 1 << (g + h);
    int eta = (1 << g) - 1;
    int st = s * t;
    int n = i + j + st * (2 - eta);
    int tgt = i + j + st * (1 - eta);
    if (target)
        *target = tgt;
    // the range is imposed on the index of the result, which differs from n by st
    if (tgt < -1 || tgt > k - 3)
        return 0;
    // For st = 0 the sum equals binom(n+1, i+1) + binom(n+1, j+1) whenever n >= 0;
    // at n = -1 (the pair Y_{-1}(s), Y_0(t)) the literal reading gives 0, while the
    // Jacobi identity requires the Pascal value binom(0,0) + binom(0,1) = 1.
    if (st == 0 && n == -1)
        return 1;
    return (binom2(n, i + 1) + binom2(n, j + 1)) & 1;
}

Algebra build_jurman(int g, int h, const Field& F)
{
    if (g < 2 || h < 1)
        throw AlgebraError("j(g,h) needs g >= 2 and h >= 1");
    if (g + h > 10)
        throw AlgebraError("j(g,h) too large");
    int k = 1 << (g + h);
    int eta = (1 << g) - 1;
    int dim = 2 * (k - 1);
    std::vector<std::string> labels(static_cast<std::size_t>(dim));
    Grading gr;
    gr.moduli = {0};
    gr.weights.resize(std::size_t(dim));
    for (int t = 0; t < 2; ++t)
        for (int j = -1; j <= k - 3; ++j) {
            int idx = jurman_index(g, h, j, t);
            labels[std::size_t(idx)] = fmt::format("Y{}({})", j, t);
            gr.weights[std::size_t(idx)] = {2 * j + t * (1 - eta)};
        }
    Algebra A(F, dim, labels);
    for (int s = 0; s < 2; ++s)
        for (int i = -1; i <= k - 3; ++i)
            for (int t = 0; t < 2; ++t)
                for (int j = -1; j <= k - 3; ++j) {
                    int a = jurman_index(g, h, i, s), b = jurman_index(g, h, j, t);
                    if (a >= b)
                        continue;
                    int target = 0;
                    int c = jurman_coefficient(g, h, i, s, j, t, &target);
                    if (!c)
                        continue;
                    if (target < -1 || target > k - 3)
                        throw AlgebraError(fmt::format("Jurman bracket leaves the basis at Y{}({})", target, (s + t) % 2));
                    A.set_bracket(a, b, Terms{{jurman_index(g, h, target, (s + t) % 2), 1}});
                }
    A.set_grading(std::move(gr));
    return A;
}

namespace {

/// D_i = d_{y_i} + y_i d_{x_i}^{2^g}, variables ordered x_1, y_1, x_2, y_2, ...
DPoly twisted(const DPoly& f, int pair, int g)
{
    int x = 2 * pair, y = 2 * pair + 1;
    const Shape& S = f.shape();
    std::vector<int> ey(std::size_t(S.nvars()), 0);
    ey[std::size_t(y)] = 1;
    return f.partial(y) + f.partial_pow(x, 1 << g).times_mono(S.pack(ey));
}

ShapePtr pair_shape(const std::vector<std::pair<int, int>>& pairs)
{
    std::vector<int> N;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [g, h] = pairs[i];
        if (g < 2 || h < 1)
            throw AlgebraError("every pair (g,h) needs g >= 2 and h >= 1");
        N.push_back(g + h);
        N.push_back(1);
        names.push_back(pairs.size() == 1 ? "x" : fmt::format("x{}", i + 1));
        names.push_back(pairs.size() == 1 ? "y" : fmt::format("y{}", i + 1));
    }
    return std::make_shared<Shape>(N, names);
}

}

Algebra build_a2gh(int g, int h, Variant v, const Field& F)
{
    return build_multipair(PairKind::Pi, {{g, h}}, v, F);
}

Algebra build_multipair(PairKind kind, const std::vector<std::pair<int, int>>& pairs, Variant v, const Field& F)
{
    if (pairs.empty())
        throw AlgebraError("at least one pair is required");
    ShapePtr S = pair_shape(pairs);
    int k = int(pairs.size());
    std::vector<int> gs;
    for (auto& p : pairs)
        gs.push_back(p.first);
    FunBracket br;
    if (kind == PairKind::Pi)
        br = [k, gs](const DPoly& u, const DPoly& w) {
            DPoly r(u.field(), u.shape_ptr());
            for (int i = 0; i < k; ++i)
                r += u.partial(2 * i) * twisted(w, i, gs[std::size_t(i)]) + twisted(u, i, gs[std::size_t(i)]) * w.partial(2 * i);
            return r;
        };
    else
        br = [k, gs](const DPoly& u, const DPoly& w) {
            DPoly r(u.field(), u.shape_ptr());
            for (int i = 0; i < k; ++i)
                r += u.partial(2 * i) * w.partial(2 * i) + twisted(u, i, gs[std::size_t(i)]) * twisted(w, i, gs[std::size_t(i)]);
            return r;
        };
    FunWeight w;
    std::vector<int> mod;
    bool same_g = std::all_of(gs.begin(), gs.end(), [&](int x) { return x == gs.front(); });
    if (kind == PairKind::Pi && same_g) {
        int g0 = gs.front();
        w = [S, g0](Mono m) {
            int d = 0;
            for (int i = 0; i < S->nvars(); i += 2)
                d += 2 * S->exp(m, i) + (1 << g0) * S->exp(m, i + 1);
            return std::vector<int>{d - 2 - (1 << g0)};
        };
        mod = {0};
    } else if (kind == PairKind::I) {
        std::tie(w, mod) = parity_weight(S, false);
    }
    Algebra a = kind == PairKind::Pi ? function_algebra(F, S, S->basis(), br, false, w, mod)
                                     : function_algebra(F, S, nonconstant_basis(*S), br, true, w, mod);
    return apply_variant(a, v);
}

KapSpec parse_kap_family(const std::string& name, int n, int arf)
{
    KapSpec s;
    s.n = n;
    s.arf = arf;
    if (name == "1" || name == "K1")
        s.family = KapFamily::K1;
    else if (name == "2" || name == "K2")
        s.family = KapFamily::K2;
    else if (name == "3" || name == "K3")
        s.family = KapFamily::K3;
    else if (name == "4A" || name == "K4A")
        s.family = KapFamily::K4A;
    else if (name == "4B" || name == "K4B")
        s.family = KapFamily::K4B;
    else
        throw AlgebraError("unknown Kaplansky family '" + name + "' (expected 1, 2, 3, 4A or 4B)");
    return s;
}

JSystem kaplansky_jsystem(const KapSpec& s)
{
    JSystem J;
    std::uint64_t N = std::uint64_t{1} << s.n;
    switch (s.family) {
    case KapFamily::K1: {
        if (s.n < 4)
            throw AlgebraError("Kap1(n) needs n >= 4");
        J.B = BilinearForm::I(s.n);
        for (std::uint64_t u = 1; u + 1 < N; ++u)
            J.gamma.push_back(u);
        break;
    }
    case KapFamily::K2:
        J.B = BilinearForm::Pi(s.n);
        for (std::uint64_t u = 1; u < N; ++u)
            J.gamma.push_back(u);
        break;
    case KapFamily::K4A: {
        if (s.arf != 0 && s.arf != 1)
            throw AlgebraError("Arf value must be 0 or 1");
        QuadraticForm Q = QuadraticForm::standard(s.n / 2, s.arf);
        J.B = Q.B;
        for (std::uint64_t u = 1; u < N; ++u)
            if (Q(u))
                J.gamma.push_back(u);
        break;
    }
    case KapFamily::K4B:
        J.B = BilinearForm::Pi(s.n);
        for (std::uint64_t u = 0; u < N; ++u)
            J.gamma.push_back(u);
        break;
    case KapFamily::K3:
        throw AlgebraError("Kap3 is an orthogonal algebra, not a J-system algebra");
    }
    if (s.n > 20)
        throw AlgebraError("Kaplansky algebra too large");
    return J;
}

Algebra build_kaplansky(const KapSpec& s, const Field& F)
{
    switch (s.family) {
    case KapFamily::K3:
        if (s.n < 5 || s.n == 6 || s.n == 8)
            throw AlgebraError("Kap3(n) is defined for n = 5, 7 and n >= 9; the omitted n repeat other families");
        return build_classical(ClassicalKind::oI, s.n, Variant::derived, F);
    case KapFamily::K4B:
        if (s.n % 2 != 0 || s.n < 2)
            throw AlgebraError("Kap4B(2m) needs an even dimension");
        return build_kap4b(s.n / 2, F);
    default:
        if ((s.family == KapFamily::K2 || s.family == KapFamily::K4A) && (s.n % 2 != 0 || s.n < 2))
            throw AlgebraError("Kap2 and Kap4A need an even dimension 2m");
        return build_jsystem_algebra(kaplansky_jsystem(s), F);
    }
}

namespace {

ShapePtr kap_shape(int m)
{
    return poisson_shape(std::vector<int>(std::size_t(2 * m), 1), true);
}

}

Algebra build_kap4b(int m, const Field& F)
{
    if (m < 1 || m > 4)
        throw AlgebraError("Kap4B(2m) supported for 1 <= m <= 4");
    ShapePtr S = kap_shape(m);
    std::vector<DPoly> weight;
    for (int i = 0; i < m; ++i) {
        DPoly one = DPoly::constant(F, S, 1);
        DPoly a = one + DPoly::mono(F, S, bit(i));
        DPoly b = one + DPoly::mono(F, S, bit(m + i));
        weight.push_back(a * b);
    }
    FunBracket br = [m, weight](const DPoly& f, const DPoly& g) {
        DPoly r(f.field(), f.shape_ptr());
        for (int i = 0; i < m; ++i)
            r += weight[std::size_t(i)] * (f.partial(i) * g.partial(m + i) + f.partial(m + i) * g.partial(i));
        return r;
    };
    return function_algebra(F, S, S->basis(), br, false);
}

Vec kap4b_fu(int m, std::uint64_t u, const Field& F)
{
    // with every N_i = 1 the packed monomial of prod p_i^{s_i} q_i^{t_i} is the bitmask (s, t)
    ShapePtr S = kap_shape(m);
    std::vector<Mono> basis = S->basis();
    Vec v = zero_vec(int(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        if ((basis[i] & ~u) == 0)
            v[i] = 1;
    (void)F;
    return v;
}

Subspace build_kap4_subalgebra(int m, int A, const Field& F)
{
    if (A != 0 && A != 1)
        throw AlgebraError("A must be 0 or 1");
    // In the coordinates x_i = 1+p_i, y_i = 1+q_i a monomial x^u is a bitmask u
    // with x_i^2 = 1, so multiplication by x_i toggles a bit and d_{x_i} clears it.
    int n = 2 * m;
    std::uint64_t N = std::uint64_t{1} << n;
    auto d = [](std::uint64_t u, int i, std::uint64_t& out) {
        if (!((u >> i) & 1))
            return false;
        out = u & ~bit(i);
        return true;
    };
    auto op = [&](std::uint64_t u) {
        // returns the image of x^u as a map mask -> coefficient
        std::map<std::uint64_t, int> r;
        r[u] ^= 1;
        for (int i = 0; i < m; ++i) {
            std::uint64_t a, b;
            if (d(u, i, a) && d(a, m + i, b))
                r[b ^ bit(i) ^ bit(m + i)] ^= 1;
        }
        if (A == 1) {
            std::uint64_t a;
            if (d(u, 0, a))
                r[a ^ bit(0)] ^= 1;
            if (d(u, m, a))
                r[a ^ bit(m)] ^= 1;
        }
        return r;
    };
    RowReducer rr(F, int(N));
    std::map<std::uint64_t, std::vector<std::pair<int, Elt>>> eqs;
    for (std::uint64_t u = 0; u < N; ++u)
        for (auto& [t, c] : op(u))
            if (c)
                eqs[t].push_back({int(u), 1});
    for (auto& [t, row] : eqs)
        rr.add_sparse(row);
    Subspace s(F, int(N));
    for (auto& k : rr.nullspace()) {
        Vec f = zero_vec(int(N));
        for (std::uint64_t u = 0; u < N; ++u)
            if (k[std::size_t(u)])
                axpy(F, f, k[std::size_t(u)], kap4b_fu(m, u, F));
        s.add(f);
    }
    return s;
}

Subspace harmonic_subspace(int m, const std::vector<int>& range, const Field& F)
{
    ShapePtr S = kap_shape(m);
    std::vector<Mono> basis = S->basis();
    std::map<Mono, std::vector<std::pair<int, Elt>>> eqs;
    for (std::size_t a = 0; a < basis.size(); ++a) {
        DPoly f = DPoly::mono(F, S, basis[a]);
        DPoly r(F, S);
        for (int i : range) {
            if (i < 1 || i > m)
                throw AlgebraError("summation index out of range 1..m");
            r += f.partial(i - 1).partial(m + i - 1);
        }
        for (auto& [mono, c] : r.terms())
            eqs[mono].push_back({int(a), c});
    }
    RowReducer rr(F, int(basis.size()));
    for (auto& [mono, row] : eqs)
        rr.add_sparse(row);
    return Subspace::span(F, int(basis.size()), rr.nullspace());
}

Algebra build_harmonic_po(int m, const std::vector<int>& range, const Field& F)
{
    Algebra po = build_poisson(BilinearForm::Pi(2 * m), std::vector<int>(std::size_t(2 * m), 1), F);
    Subspace s = harmonic_subspace(m, range, F);
    if (!is_subalgebra(po, s))
        throw AlgebraError("harmonic functions do not form a subalgebra for this range");
    return restrict_to(po, s);
}

Algebra build_tensor_example(Elt hbar, bool deformed, const Field& F)
{
    if (!F.valid(hbar))
        throw AlgebraError("hbar outside the field");
    // e_{i,j} = e_i (x) x^j with [e_0, e_1] = e_1 and x^2 = 0
    Algebra g(F, 4, {"e00", "e01", "e10", "e11"});
    g.set_bracket(0, 2, Terms{{2, 1}});
    g.set_bracket(0, 3, Terms{{3, 1}});
    g.set_bracket(1, 2, Terms{{3, 1}});
    if (deformed && hbar)
        g.set_bracket(1, 3, Terms{{2, hbar}});
    Grading gr;
    gr.moduli = {0};
    gr.weights = {{0}, {1}, {0}, {1}};
    if (!deformed || !hbar)
        g.set_grading(std::move(gr));
    return g;
}

namespace {

Algebra build_gl(int n, const Field& F)
{
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            labels.push_back(n <= 10 ? fmt::format("E{}{}", i, j) : fmt::format("E{},{}", i, j));
    Algebra g(F, n * n, labels);
    auto E = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    int a = E(i, j), b = E(k, l);
                    if (a >= b)
                        continue;
                    Terms t;
                    if (j == k)
                        t.push_back({E(i, l), 1});
                    if (l == i)
                        t.push_back({E(k, j), 1});
                    g.set_bracket(a, b, std::move(t));
                }
    return g;
}

Subspace trace_free(int n, const Field& F)
{
    Subspace s(F, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                s.add(unit_vec(n * n, i * n + j));
    for (int i = 0; i + 1 < n; ++i) {
        Vec v = zero_vec(n * n);
        v[std::size_t(i * n + i)] = 1;
        v[std::size_t((i + 1) * n + i + 1)] = 1;
        s.add(v);
    }
    return s;
}

/// {A : B A symmetric} for the symmetric matrix B.
Subspace orthogonal(int n, const std::vector<std::vector<int>>& B, const Field& F)
{
    RowReducer rr(F, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<std::pair<int, Elt>> row;
            for (int k = 0; k < n; ++k) {
                if (B[std::size_t(i)][std::size_t(k)])
                    row.push_back({k * n + j, 1});
                if (B[std::size_t(j)][std::size_t(k)])
                    row.push_back({k * n + i, 1});
            }
            rr.add_sparse(row);
        }
    return Subspace::span(F, n * n, rr.nullspace());
}

}

Algebra build_classical(ClassicalKind kind, int n, Variant v, const Field& F)
{
    if (n < 1 || n > 12)
        throw AlgebraError("classical algebras supported for 1 <= n <= 12");
    Algebra gl = build_gl(n, F);
    Algebra g;
    switch (kind) {
    case ClassicalKind::gl:
        g = gl;
        break;
    case ClassicalKind::sl:
        g = restrict_to(gl, trace_free(n, F));
        break;
    case ClassicalKind::psl:
        g = mod_center(restrict_to(gl, trace_free(n, F)));
        break;
    case ClassicalKind::oI:
    case ClassicalKind::oPi: {
        std::vector<std::vector<int>> B(std::size_t(n), std::vector<int>(std::size_t(n), 0));
        for (int i = 0; i < n; ++i)
            B[std::size_t(i)][std::size_t(kind == ClassicalKind::oI ? i : n - 1 - i)] = 1;
        g = restrict_to(gl, orthogonal(n, B, F));
        break;
    }
    }
    return apply_variant(g, v);
}

Algebra tensor_with_O(const Algebra& L, int m, const std::vector<std::string>& names)
{
    ShapePtr S = std::make_shared<Shape>(std::vector<int>(std::size_t(m), 1), names);
    std::vector<Mono> ob = S->basis();
    int nb = int(ob.size());
    std::unordered_map<Mono, int> oidx;
    for (int i = 0; i < nb; ++i)
        oidx[ob[std::size_t(i)]] = i;
    int n = L.dim() * nb;
    std::vector<std::string> labels;
    for (int i = 0; i < L.dim(); ++i)
        for (int a = 0; a < nb; ++a)
            labels.push_back(L.label(i) + "(x)" + S->format(ob[std::size_t(a)]));
    Algebra g(L.field(), n, labels);
    for (int i = 0; i < L.dim(); ++i)
        for (int j = i; j < L.dim(); ++j)
            for (int a = 0; a < nb; ++a)
                for (int b = 0; b < nb; ++b) {
                    int x = i * nb + a, y = j * nb + b;
                    if (x >= y)
                        continue;
                    Mono prod;
                    if (!mono_mul(ob[std::size_t(a)], ob[std::size_t(b)], prod))
                        continue;
                    Terms t;
                    for (auto& term : L.bracket(i, j))
                        t.push_back({term.k * nb + oidx.at(prod), term.c});
                    g.set_bracket(x, y, std::move(t));
                }
    return g;
}

Algebra build_abelian(int dim, const Field& F)
{
    return Algebra(F, dim);
}

}
