#include "mlie/algebra.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

namespace mlie {

std::vector<int> Grading::normalize(std::vector<int> w) const
{
    for (std::size_t a = 0; a < w.size() && a < moduli.size(); ++a)
        if (moduli[a] > 0)
            w[a] = ((w[a] % moduli[a]) + moduli[a]) % moduli[a];
    return w;
}

std::vector<int> Grading::add(const std::vector<int>& a, const std::vector<int>& b) const
{
    std::vector<int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return normalize(std::move(r));
}

Algebra::Algebra(const Field& F, int dim, std::vector<std::string> labels) : F_(F), n_(dim), labels_(std::move(labels))
{
    if (dim < 0)
        throw AlgebraError("negative dimension");
    if (labels_.empty())
        for (int i = 0; i < dim; ++i)
            labels_.push_back(fmt::format("e{}", i));
    if (int(labels_.size()) != dim)
        throw AlgebraError("label count differs from dimension");
    sc_.assign(std::size_t(dim) * std::size_t(std::max(dim - 1, 0)) / 2, {});
    if (F_.is_prime() && dim <= 64)
        mask_.assign(std::size_t(dim) * std::size_t(dim), 0);
}

int Algebra::index_of(const std::string& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    return it == labels_.end() ? -1 : int(it - labels_.begin());
}

void Algebra::set_grading(Grading g)
{
    if (!g.weights.empty() && int(g.weights.size()) != n_)
        throw AlgebraError("grading must give one weight per basis element");
    for (auto& w : g.weights) {
        if (int(w.size()) != g.arity())
            throw AlgebraError("weight arity differs from moduli arity");
        w = g.normalize(w);
    }
    grading_ = std::move(g);
}

const Terms& Algebra::bracket(int i, int j) const
{
    static const Terms none;
    if (i == j)
        return none;
    if (i > j)
        std::swap(i, j);
    return sc_[idx(i, j)];
}

void Algebra::set_bracket(int i, int j, Terms t)
{
    if (i == j) {
        if (!t.empty())
            throw AlgebraError("alternation: [x,x] must vanish");
        return;
    }
    if (i > j)
        std::swap(i, j);
    std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.k < b.k; });
    Terms clean;
    for (auto& x : t) {
        if (x.k < 0 || x.k >= n_)
            throw AlgebraError("structure constant index out of range");
        if (!clean.empty() && clean.back().k == x.k)
            clean.back().c ^= x.c;
        else
            clean.push_back(x);
        if (clean.back().c == 0)
            clean.pop_back();
    }
    sc_[idx(i, j)] = std::move(clean);
    update_mask(i, j);
}

void Algebra::set_bracket(int i, int j, const Vec& v)
{
    Terms t;
    for (int k = 0; k < n_; ++k)
        if (v[std::size_t(k)])
            t.push_back({k, v[std::size_t(k)]});
    set_bracket(i, j, std::move(t));
}

void Algebra::update_mask(int i, int j)
{
    if (mask_.empty())
        return;
    std::uint64_t m = 0;
    for (auto& t : sc_[idx(i, j)])
        m |= std::uint64_t{1} << t.k;
    mask_[std::size_t(i * n_ + j)] = m;
    mask_[std::size_t(j * n_ + i)] = m;
}

Vec Algebra::bracket_vec(int i, int j) const
{
    Vec v = zero_vec(n_);
    for (auto& t : bracket(i, j))
        v[std::size_t(t.k)] = t.c;
    return v;
}

Vec Algebra::bracket(const Vec& x, const Vec& y) const
{
    Vec r = zero_vec(n_);
    for (int i = 0; i < n_; ++i) {
        Elt xi = x[std::size_t(i)];
        if (!xi)
            continue;
        for (int j = 0; j < n_; ++j) {
            Elt yj = y[std::size_t(j)];
            if (!yj || i == j)
                continue;
            Elt c = F_.mul(xi, yj);
            for (auto& t : bracket(i, j))
                r[std::size_t(t.k)] ^= F_.mul(c, t.c);
        }
    }
    return r;
}

Vec Algebra::bracket_basis(int i, const Vec& y) const
{
    Vec r = zero_vec(n_);
    for (int j = 0; j < n_; ++j) {
        Elt yj = y[std::size_t(j)];
        if (!yj || i == j)
            continue;
        for (auto& t : bracket(i, j))
            r[std::size_t(t.k)] ^= F_.mul(yj, t.c);
    }
    return r;
}

Mat Algebra::ad(const Vec& x) const
{
    Mat m(F_, n_, n_);
    for (int j = 0; j < n_; ++j) {
        Vec c = zero_vec(n_);
        for (int i = 0; i < n_; ++i) {
            Elt xi = x[std::size_t(i)];
            if (!xi || i == j)
                continue;
            for (auto& t : bracket(i, j))
                c[std::size_t(t.k)] ^= F_.mul(xi, t.c);
        }
        for (int k = 0; k < n_; ++k)
            m.at(k, j) = c[std::size_t(k)];
    }
    return m;
}

std::uint64_t Algebra::bracket_mask(std::uint64_t x, std::uint64_t y) const
{
    std::uint64_t r = 0;
    for (std::uint64_t a = x; a; a &= a - 1) {
        int i = std::countr_zero(a);
        r ^= bracket_mask_basis(i, y);
    }
    return r;
}

std::uint64_t Algebra::bracket_mask_basis(int i, std::uint64_t y) const
{
    std::uint64_t r = 0;
    const std::uint64_t* row = mask_.data() + std::size_t(i) * std::size_t(n_);
    for (std::uint64_t b = y; b; b &= b - 1)
        r ^= row[std::countr_zero(b)];
    return r;
}

std::string Algebra::format_vec(const Vec& v) const
{
    std::string s;
    for (int i = 0; i < n_; ++i) {
        Elt c = v[std::size_t(i)];
        if (!c)
            continue;
        if (!s.empty())
            s += " + ";
        if (c != 1)
            s += "{" + F_.format(c) + "}*";
        s += labels_[std::size_t(i)];
    }
    return s.empty() ? "0" : s;
}

nlohmann::ordered_json Algebra::to_json() const
{
    // keys emitted in sorted order for byte-stable output
    nlohmann::ordered_json j;
    j["dim"] = n_;
    j["field"] = F_.name();
    if (!grading_.empty()) {
        j["grading"] = grading_.weights;
        j["grading_moduli"] = grading_.moduli;
    }
    j["labels"] = labels_;
    auto sc = nlohmann::ordered_json::array();
    for (int i = 0; i < n_; ++i)
        for (int jj = i + 1; jj < n_; ++jj) {
            const Terms& t = sc_[idx(i, jj)];
            if (t.empty())
                continue;
            auto terms = nlohmann::ordered_json::array();
            for (auto& x : t)
                terms.push_back({x.k, F_.format(x.c)});
            sc.push_back({i, jj, terms});
        }
    j["sc"] = sc;
    return j;
}

Algebra Algebra::from_json(const nlohmann::json& j)
{
    try {
        Field F = Field::parse(j.at("field").get<std::string>());
        int n = j.at("dim").get<int>();
        std::vector<std::string> labels;
        if (j.contains("labels"))
            labels = j.at("labels").get<std::vector<std::string>>();
        Algebra g(F, n, labels);
        for (auto& e : j.at("sc")) {
            int a = e.at(0).get<int>(), b = e.at(1).get<int>();
            if (a < 0 || b < 0 || a >= n || b >= n || a >= b)
                throw AlgebraError(fmt::format("structure constant entry [{},{}] must satisfy 0 <= i < j < dim", a, b));
            Terms t;
            for (auto& x : e.at(2)) {
                Elt c = x.at(1).is_string() ? F.parse_elt(x.at(1).get<std::string>()) : x.at(1).get<Elt>();
                if (!F.valid(c))
                    throw AlgebraError("coefficient outside the field");
                t.push_back({x.at(0).get<int>(), c});
            }
            g.set_bracket(a, b, std::move(t));
        }
        if (j.contains("grading") && !j.at("grading").is_null()) {
            Grading gr;
            gr.weights = j.at("grading").get<std::vector<std::vector<int>>>();
            if (j.contains("grading_moduli"))
                gr.moduli = j.at("grading_moduli").get<std::vector<int>>();
            else if (!gr.weights.empty())
                gr.moduli.assign(gr.weights.front().size(), 0);
            g.set_grading(std::move(gr));
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw AlgebraError(std::string("malformed algebra JSON: ") + e.what());
    }
}

bool Algebra::same_structure(const Algebra& o) const
{
    return F_ == o.F_ && n_ == o.n_ && sc_ == o.sc_;
}

Subspace Subspace::span(const Field& F, int ambient, const std::vector<Vec>& vecs)
{
    Subspace s(F, ambient);
    for (auto& v : vecs)
        s.add(v);
    return s;
}

Subspace Subspace::full(const Field& F, int ambient)
{
    Subspace s(F, ambient);
    for (int i = 0; i < ambient; ++i)
        s.add(unit_vec(ambient, i));
    return s;
}

bool Subspace::contains(const Subspace& o) const
{
    for (auto& v : o.basis())
        if (!contains(v))
            return false;
    return true;
}

std::optional<Vec> Subspace::coords(const Vec& v) const
{
    Vec w = v;
    e_.reduce(w);
    if (!is_zero(w))
        return std::nullopt;
    Vec c(std::size_t(dim()), 0);
    for (int r = 0; r < dim(); ++r)
        c[std::size_t(r)] = v[std::size_t(pivots()[std::size_t(r)])];
    return c;
}

}
