#include "mlie/superize.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <functional>

namespace mlie {

int ClosureAlgebra::index_of(std::uint64_t u) const
{
    auto it = std::lower_bound(J.gamma.begin(), J.gamma.end(), u);
    if (it == J.gamma.end() || *it != u)
        return -1;
    return int(it - J.gamma.begin());
}

Vec ClosureAlgebra::functional(std::uint64_t u) const
{
    Vec v = zero_vec(algebra.dim());
    std::uint64_t f = J.B.functional(u);
    for (int i = 0; i < J.B.n; ++i)
        if ((f >> i) & 1)
            v[std::size_t(functional_index(i))] = 1;
    return v;
}

ClosureAlgebra restricted_closure(const JSystem& J, const Field& F)
{
    if (!J.B.alternate())
        throw AlgebraError("restricted closure needs an alternate form");
    std::string why;
    if (!J.closed(&why))
        throw AlgebraError("not a J-system: " + why);
    ClosureAlgebra c;
    c.J = J;
    std::sort(c.J.gamma.begin(), c.J.gamma.end());
    int n = J.B.n, b = int(c.J.gamma.size());
    c.base_dim = b;
    std::vector<std::string> labels;
    for (auto u : c.J.gamma)
        labels.push_back(vector_label(u, n));
    for (int i = 0; i < n; ++i)
        labels.push_back(fmt::format("a{}", i + 1));
    Algebra g(F, b + n, labels);
    for (int x = 0; x < b; ++x)
        for (int y = x + 1; y < b; ++y) {
            std::uint64_t u = c.J.gamma[std::size_t(x)], v = c.J.gamma[std::size_t(y)];
            int k = c.index_of(u ^ v);
            if (c.J.B(u, v) && k >= 0)
                g.set_bracket(x, y, Terms{{k, 1}});
        }
    for (int x = 0; x < b; ++x)
        for (int i = 0; i < n; ++i)
            if ((c.J.gamma[std::size_t(x)] >> i) & 1)
                g.set_bracket(x, b + i, Terms{{x, 1}});
    Grading gr;
    gr.moduli.assign(std::size_t(n), 2);
    for (int x = 0; x < b + n; ++x) {
        std::vector<int> w(std::size_t(n), 0);
        if (x < b)
            for (int i = 0; i < n; ++i)
                w[std::size_t(i)] = int((c.J.gamma[std::size_t(x)] >> i) & 1);
        gr.weights.push_back(w);
    }
    g.set_grading(std::move(gr));
    c.algebra = std::move(g);
    for (int x = 0; x < b; ++x)
        c.squares.push_back(c.functional(c.J.gamma[std::size_t(x)]));
    for (int i = 0; i < n; ++i)
        c.squares.push_back(c.algebra.unit(b + i));
    return c;
}

ClosureAlgebra restricted_closure(const KapSpec& s, const Field& F)
{
    if (s.family != KapFamily::K2 && s.family != KapFamily::K4A)
        throw AlgebraError("restricted closure is described for Kap2 and Kap4A");
    if (s.family == KapFamily::K4A && s.n == 2 && s.arf == 0)
        throw AlgebraError("Kap_{4,0}(2) is excluded from the closure description");
    if (s.n % 2 != 0 || s.n < 2)
        throw AlgebraError("Kap2 and Kap4A need an even dimension 2m");
    return restricted_closure(kaplansky_jsystem(s), F);
}

bool check_restricted(const ClosureAlgebra& c, std::string* why)
{
    const Algebra& g = c.algebra;
    if (!validate(g).ok) {
        if (why)
            *why = "Jacobi identity fails";
        return false;
    }
    for (int x = 0; x < g.dim(); ++x)
        for (int y = 0; y < g.dim(); ++y) {
            Vec lhs = g.bracket(c.squares[std::size_t(x)], g.unit(y));
            Vec rhs = g.bracket(g.unit(x), g.bracket(g.unit(x), g.unit(y)));
            if (lhs != rhs) {
                if (why)
                    *why = fmt::format("[{}^[2], {}] != [{}, [{}, {}]]", g.label(x), g.label(y), g.label(x), g.label(x), g.label(y));
                return false;
            }
        }
    return true;
}

int SuperAlgebra::dim_even() const
{
    return int(std::count(parity.begin(), parity.end(), 0));
}

int SuperAlgebra::dim_odd() const
{
    return int(std::count(parity.begin(), parity.end(), 1));
}

bool SuperAlgebra::is_odd(const Vec& x) const
{
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0 && parity[i] != 1)
            return false;
    return true;
}

bool SuperAlgebra::is_even(const Vec& x) const
{
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0 && parity[i] != 0)
            return false;
    return true;
}

Vec SuperAlgebra::square(const Vec& x) const
{
    if (!is_odd(x))
        throw AlgebraError("squaring is defined on odd elements");
    const Field& F = algebra.field();
    Vec out = zero_vec(algebra.dim());
    std::vector<int> supp;
    for (int i = 0; i < algebra.dim(); ++i)
        if (x[std::size_t(i)] != 0)
            supp.push_back(i);
    for (std::size_t a = 0; a < supp.size(); ++a) {
        int i = supp[a];
        axpy(F, out, F.sqr(x[std::size_t(i)]), squares[std::size_t(i)]);
        for (std::size_t b = a + 1; b < supp.size(); ++b) {
            int j = supp[b];
            axpy(F, out, F.mul(x[std::size_t(i)], x[std::size_t(j)]), algebra.bracket_vec(i, j));
        }
    }
    return out;
}

nlohmann::ordered_json SuperAlgebra::to_json() const
{
    nlohmann::ordered_json j = algebra.to_json();
    j["name"] = name;
    j["parity"] = parity;
    nlohmann::ordered_json sq = nlohmann::ordered_json::object();
    for (int i = 0; i < algebra.dim(); ++i)
        if (parity[std::size_t(i)])
            sq[algebra.label(i)] = algebra.format_vec(squares[std::size_t(i)]);
    j["squaring"] = sq;
    // keep keys sorted
    nlohmann::ordered_json out;
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    for (auto& k : keys)
        out[k] = j[k];
    return out;
}

SuperCheck check_super(const SuperAlgebra& s, int max_reported)
{
    SuperCheck r;
    const Algebra& g = s.algebra;
    auto report = [&](std::string msg) {
        r.ok = false;
        if (int(r.violations.size()) < max_reported)
            r.violations.push_back(std::move(msg));
    };
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j)
            for (auto& t : g.bracket(i, j))
                if (s.parity[std::size_t(t.k)] != (s.parity[std::size_t(i)] ^ s.parity[std::size_t(j)])) {
                    r.parity_rules = false;
                    report(fmt::format("[{}, {}] has a term of the wrong parity", g.label(i), g.label(j)));
                }
    ValidationReport v = validate(g, max_reported);
    if (!v.jacobi) {
        r.jacobi = false;
        for (auto& m : v.violations)
            report(m);
    }
    for (int x = 0; x < g.dim(); ++x) {
        if (!s.parity[std::size_t(x)])
            continue;
        const Vec& sq = s.squares[std::size_t(x)];
        if (!s.is_even(sq)) {
            r.squaring = false;
            report(fmt::format("{}^[2] is not even", g.label(x)));
        }
        for (int y = 0; y < g.dim(); ++y)
            if (g.bracket(sq, g.unit(y)) != g.bracket(g.unit(x), g.bracket(g.unit(x), g.unit(y)))) {
                r.squaring = false;
                report(fmt::format("[{}^[2], {}] != [{}, [{}, {}]]", g.label(x), g.label(y), g.label(x), g.label(x), g.label(y)));
            }
    }
    return r;
}

namespace {

SuperAlgebra from_parity(const ClosureAlgebra& c, std::string name, const std::function<int(std::uint64_t)>& p)
{
    SuperAlgebra s;
    s.name = std::move(name);
    s.algebra = c.algebra;
    for (int x = 0; x < c.algebra.dim(); ++x) {
        int par = x < c.base_dim ? p(c.J.gamma[std::size_t(x)]) : 0;
        s.parity.push_back(par);
        s.squares.push_back(par ? c.squares[std::size_t(x)] : Vec{});
    }
    return s;
}

}

SuperAlgebra superize_linear(const ClosureAlgebra& c, std::uint64_t v)
{
    if (v == 0)
        throw AlgebraError("the parity vector must be nonzero");
    if (v >> c.J.B.n)
        throw AlgebraError("parity vector outside V");
    return from_parity(c, fmt::format("linear superization by {}", vector_label(v, c.J.B.n)),
                       [&](std::uint64_t u) { return c.J.B(v, u); });
}

SuperAlgebra superize_nonlinear(const ClosureAlgebra& kap2, const QuadraticForm& Q)
{
    int n = kap2.J.B.n;
    if (kap2.base_dim != int((std::uint64_t{1} << n) - 1))
        throw AlgebraError("non-linear superization starts from the closure of Kap2");
    if (Q.B.n != n || Q.B.rows != kap2.J.B.rows || !Q.polar_consistent())
        throw AlgebraError("the quadratic form does not polarize to the form of Kap2");
    int A = arf_invariant(Q);
    return from_parity(kap2, fmt::format("KapS_{{2,{}}}({})", A, n), [&](std::uint64_t u) { return 1 - Q(u); });
}

std::optional<std::uint64_t> kap4_parity_vector(int m, int A, int eps)
{
    auto bit = [](int i) { return std::uint64_t{1} << i; };
    if (m < 1)
        throw AlgebraError("m must be positive");
    if (eps == A)
        return bit(0);
    if (eps == 1 && A == 0)
        return bit(0) | bit(m);
    if (m > 1)
        return bit(1);
    return std::nullopt;
}

std::string superization_name(const SuperSpec& s)
{
    switch (s.kind) {
    case SuperKind::LS2:
        return fmt::format("KapLS_2({})", 2 * s.m);
    case SuperKind::S2:
        return fmt::format("KapS_{{2,{}}}({})", s.A, 2 * s.m);
    case SuperKind::S4:
        if (s.m == 1)
            return "oo'_II(1|2)";
        return fmt::format("KapS_{{4,{}}}({};{})", s.A, 2 * s.m, s.eps);
    }
    return {};
}

SuperAlgebra build_superization(const SuperSpec& s, const Field& F)
{
    SuperAlgebra out;
    switch (s.kind) {
    case SuperKind::LS2:
        out = superize_linear(restricted_closure(KapSpec{KapFamily::K2, 2 * s.m, 0}, F), s.v);
        break;
    case SuperKind::S2:
        out = superize_nonlinear(restricted_closure(KapSpec{KapFamily::K2, 2 * s.m, 0}, F), QuadraticForm::standard(s.m, s.A));
        break;
    case SuperKind::S4: {
        auto v = kap4_parity_vector(s.m, s.A, s.eps);
        if (!v)
            throw AlgebraError(fmt::format("no vector with Q = {} for Kap_{{4,{}}}(2)", s.eps, s.A));
        out = superize_linear(restricted_closure(KapSpec{KapFamily::K4A, 2 * s.m, s.A}, F), *v);
        break;
    }
    }
    out.name = superization_name(s);
    return out;
}

std::vector<SuperSpec> superization_families(int m)
{
    std::vector<SuperSpec> out;
    out.push_back({SuperKind::LS2, m, 0, 0, 1});
    for (int A = 0; A <= 1; ++A)
        out.push_back({SuperKind::S2, m, A, 0, 1});
    for (int A = 0; A <= 1; ++A)
        for (int eps = 0; eps <= 1; ++eps) {
            if (m == 1 && A == 0)
                continue; // closure of Kap_{4,0}(2) is excluded
            if (!kap4_parity_vector(m, A, eps))
                continue;
            out.push_back({SuperKind::S4, m, A, eps, 1});
        }
    return out;
}

bool is_super_isomorphism(const SuperAlgebra& a, const SuperAlgebra& b, const LinearMap& m, std::string* why)
{
    if (!is_isomorphism(a.algebra, b.algebra, m, why))
        return false;
    for (int i = 0; i < a.algebra.dim(); ++i) {
        const Vec& img = m.images[std::size_t(i)];
        bool ok = a.parity[std::size_t(i)] ? b.is_odd(img) : b.is_even(img);
        if (!ok) {
            if (why)
                *why = fmt::format("image of {} is not of the same parity", a.algebra.label(i));
            return false;
        }
        if (a.parity[std::size_t(i)]) {
            Vec lhs = m.matrix(b.algebra.field(), b.algebra.dim()).apply(a.squares[std::size_t(i)]);
            if (lhs != b.square(img)) {
                if (why)
                    *why = fmt::format("squaring of {} is not preserved", a.algebra.label(i));
                return false;
            }
        }
    }
    return true;
}

SuperEquivalence superization_equivalence(const ClosureAlgebra& c, const std::optional<QuadraticForm>& Q, std::uint64_t v,
                                          std::uint64_t v2, std::int64_t budget)
{
    SuperEquivalence r;
    const BilinearForm& B = c.J.B;
    int n = B.n;
    if (Q && (Q->B.rows != B.rows))
        throw AlgebraError("the quadratic form does not polarize to the form of the J-system");
    // coordinates in the support of v first, so that M v is known early
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
        if ((v >> i) & 1)
            order.push_back(i);
    for (int i = 0; i < n; ++i)
        if (!((v >> i) & 1))
            order.push_back(i);
    int support = std::popcount(v);
    std::vector<std::uint64_t> M(std::size_t(n), 0);
    std::uint64_t N = std::uint64_t{1} << n;
    auto bit = [](int i) { return std::uint64_t{1} << i; };

    std::function<bool(int)> rec = [&](int depth) -> bool {
        if (depth == support) {
            std::uint64_t img = 0;
            for (int t = 0; t < support; ++t)
                img ^= M[std::size_t(order[std::size_t(t)])];
            if (img != v2)
                return false;
        }
        if (depth == n)
            return true;
        int i = order[std::size_t(depth)];
        for (std::uint64_t w = 1; w < N; ++w) {
            if (++r.nodes > budget) {
                r.exhaustive = false;
                return false;
            }
            if (Q && (*Q)(w) != (*Q)(bit(i)))
                continue;
            bool ok = true;
            for (int t = 0; t < depth && ok; ++t) {
                int j = order[std::size_t(t)];
                ok = B(w, M[std::size_t(j)]) == B(bit(i), bit(j));
            }
            if (!ok)
                continue;
            M[std::size_t(i)] = w;
            if (rec(depth + 1))
                return true;
            if (!r.exhaustive)
                return false;
        }
        return false;
    };
    bool found = v != 0 && v2 != 0 && rec(0);
    if (!found) {
        r.note = r.exhaustive ? "no map preserving the form sends v to v2" : "budget exhausted";
        if (r.exhaustive && Q)
            r.note += "; other isomorphisms are not ruled out";
        return r;
    }
    r.M = M;
    auto apply = [&](std::uint64_t u) {
        std::uint64_t img = 0;
        for (int i = 0; i < n; ++i)
            if ((u >> i) & 1)
                img ^= M[std::size_t(i)];
        return img;
    };
    // M^{-1} over GF(2)
    Field F2 = Field::gf2();
    Mat Mm(F2, n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            Mm.at(k, i) = Elt((M[std::size_t(i)] >> k) & 1);
    auto inv = Mm.inverse();
    if (!inv)
        throw AlgebraError("form-preserving map is not invertible");
    const Algebra& g = c.algebra;
    LinearMap map;
    for (int x = 0; x < c.base_dim; ++x) {
        int k = c.index_of(apply(c.J.gamma[std::size_t(x)]));
        if (k < 0)
            throw AlgebraError("induced map leaves the J-system");
        map.images.push_back(g.unit(k));
    }
    for (int i = 0; i < n; ++i) {
        // alpha_i o M^{-1} = sum_j (M^{-1})_{ij} alpha_j
        Vec img = zero_vec(g.dim());
        for (int j = 0; j < n; ++j)
            if (inv->at(i, j))
                img[std::size_t(c.functional_index(j))] = 1;
        map.images.push_back(img);
    }
    SuperAlgebra a = superize_linear(c, v), b = superize_linear(c, v2);
    std::string why;
    if (!is_super_isomorphism(a, b, map, &why))
        throw AlgebraError("induced map is not a super-isomorphism: " + why);
    r.found = true;
    r.map = map;
    r.note = "induced by M";
    return r;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> nonlinearity_witness(const QuadraticForm& Q)
{
    std::uint64_t N = std::uint64_t{1} << Q.dim();
    for (std::uint64_t u = 1; u < N; ++u)
        for (std::uint64_t v = u + 1; v < N; ++v) {
            if ((u ^ v) == 0)
                continue;
            int pu = 1 - Q(u), pv = 1 - Q(v), puv = 1 - Q(u ^ v);
            if (puv != (pu ^ pv))
                return std::pair{u, v};
        }
    return std::nullopt;
}

NonlinearReduction nonlinear_reduction_check(int m, const QuadraticForm& Q, const QuadraticForm& Q2)
{
    NonlinearReduction r;
    int n = 2 * m;
    if (Q.dim() != n || Q2.dim() != n || Q.B.rows != Q2.B.rows)
        throw AlgebraError("the quadratic forms must share the polar form");
    std::uint64_t N = std::uint64_t{1} << n;
    auto L = [&](std::uint64_t u) { return Q(u) ^ Q2(u); };
    r.additive = true;
    for (std::uint64_t u = 0; u < N && r.additive; ++u)
        for (std::uint64_t w = 0; w < N; ++w)
            if (L(u ^ w) != (L(u) ^ L(w))) {
                r.additive = false;
                break;
            }
    if (!r.additive) {
        r.note = "Q + Q2 is not additive";
        return r;
    }
    bool found = false;
    for (std::uint64_t v = 0; v < N && !found; ++v) {
        bool ok = true;
        for (std::uint64_t u = 0; u < N && ok; ++u)
            ok = Q.B(v, u) == L(u);
        if (ok) {
            r.v = v;
            found = true;
        }
    }
    if (!found) {
        r.note = "no v with B(v, .) = Q + Q2";
        return r;
    }
    r.trivial = r.v == 0;

    ClosureAlgebra kap2 = restricted_closure(KapSpec{KapFamily::K2, n, 0});
    SuperAlgebra S = superize_nonlinear(kap2, Q);
    std::vector<int> idx;
    for (int x = 0; x < kap2.base_dim; ++x)
        if (Q2(kap2.J.gamma[std::size_t(x)]))
            idx.push_back(x);
    for (int i = 0; i < n; ++i)
        idx.push_back(kap2.functional_index(i));
    std::vector<char> in(std::size_t(kap2.algebra.dim()), 0);
    for (int x : idx)
        in[std::size_t(x)] = 1;
    r.subalgebra = true;
    for (int a : idx)
        for (int b : idx)
            if (a < b)
                for (auto& t : S.algebra.bracket(a, b))
                    if (!in[std::size_t(t.k)])
                        r.subalgebra = false;
    r.parities_match = true;
    for (int x = 0; x < kap2.base_dim; ++x) {
        std::uint64_t u = kap2.J.gamma[std::size_t(x)];
        if (Q2(u) && S.parity[std::size_t(x)] != Q.B(r.v, u))
            r.parities_match = false;
    }
    r.note = r.trivial ? "Q = Q2: the subalgebra is entirely even" : fmt::format("parity B({}, .)", vector_label(r.v, n));
    return r;
}

}
