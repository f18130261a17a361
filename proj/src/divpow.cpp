#include "mlie/divpow.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>

namespace mlie {

Shape::Shape(std::vector<int> N, std::vector<std::string> names) : N_(std::move(N)), names_(std::move(names))
{
    if (names_.empty())
        for (std::size_t i = 0; i < N_.size(); ++i)
            names_.push_back(fmt::format("x{}", i + 1));
    if (names_.size() != N_.size())
        throw DivPowError("Shape: names and shearing vector differ in length");
    for (int n : N_) {
        if (n < 1)
            throw DivPowError("Shape: every N_i must be >= 1");
        off_.push_back(bits_);
        bits_ += n;
    }
    if (bits_ > 62)
        throw DivPowError("Shape: total exponent bits exceed 62");
}

std::vector<int> Shape::exps(Mono m) const
{
    std::vector<int> r(N_.size());
    for (int i = 0; i < nvars(); ++i)
        r[std::size_t(i)] = exp(m, i);
    return r;
}

Mono Shape::pack(const std::vector<int>& r) const
{
    if (int(r.size()) != nvars())
        throw DivPowError("exponent vector has wrong length");
    Mono m = 0;
    for (int i = 0; i < nvars(); ++i) {
        int e = r[std::size_t(i)];
        if (e < 0 || e > max_exp(i))
            throw DivPowError(fmt::format("exponent {} of {} out of range 0..{}", e, names_[std::size_t(i)], max_exp(i)));
        m |= Mono(e) << off_[std::size_t(i)];
    }
    return m;
}

Mono Shape::with_exp(Mono m, int i, int e) const
{
    Mono mask = Mono(max_exp(i)) << off_[std::size_t(i)];
    return (m & ~mask) | (Mono(e) << off_[std::size_t(i)]);
}

int Shape::degree(Mono m) const
{
    int d = 0;
    for (int i = 0; i < nvars(); ++i)
        d += exp(m, i);
    return d;
}

bool Shape::grlex_less(Mono a, Mono b) const
{
    int da = degree(a), db = degree(b);
    if (da != db)
        return da < db;
    for (int i = 0; i < nvars(); ++i) {
        int ea = exp(a, i), eb = exp(b, i);
        if (ea != eb)
            return ea > eb;
    }
    return false;
}

std::vector<Mono> Shape::basis() const
{
    std::vector<Mono> all;
    all.reserve(std::size_t(dim()));
    for (Mono m = 0; m < dim(); ++m)
        all.push_back(m);
    std::sort(all.begin(), all.end(), [this](Mono a, Mono b) { return grlex_less(a, b); });
    return all;
}

std::string Shape::format(Mono m) const
{
    std::string s;
    for (int i = 0; i < nvars(); ++i) {
        int e = exp(m, i);
        if (e == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += names_[std::size_t(i)];
        if (e > 1)
            s += fmt::format("^({})", e);
    }
    return s.empty() ? "1" : s;
}

Mono Shape::parse(const std::string& text) const
{
    // tokens: name [ ^ ( k ) | ^ { ( k ) } ], separated by '*', spaces or "\,"
    std::vector<int> r(N_.size(), 0);
    std::size_t i = 0, n = text.size();
    auto skip = [&] {
        while (i < n && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*' || text[i] == '{' || text[i] == '}'
                         || (text[i] == '\\' && i + 1 < n && text[i + 1] == ',')))
            i += text[i] == '\\' ? 2 : 1;
    };
    skip();
    if (i < n && text[i] == '1') {
        ++i;
        skip();
        if (i != n)
            throw DivPowError("unexpected text after constant in '" + text + "'");
        return 0;
    }
    bool any = false;
    while (i < n) {
        std::size_t best = 0;
        int var = -1;
        for (int v = 0; v < nvars(); ++v) {
            const auto& nm = names_[std::size_t(v)];
            if (text.compare(i, nm.size(), nm) == 0 && nm.size() > best) {
                best = nm.size();
                var = v;
            }
        }
        if (var < 0)
            throw DivPowError(fmt::format("unknown variable at offset {} in '{}'", i, text));
        i += best;
        int e = 1;
        skip();
        if (i < n && text[i] == '^') {
            ++i;
            skip();
            if (i >= n || text[i] != '(')
                throw DivPowError(fmt::format("expected '(' after '^' at offset {} in '{}'", i, text));
            ++i;
            std::size_t start = i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i])))
                ++i;
            if (start == i || i >= n || text[i] != ')')
                throw DivPowError(fmt::format("bad divided power at offset {} in '{}'", start, text));
            e = std::stoi(text.substr(start, i - start));
            ++i;
        }
        if (r[std::size_t(var)] != 0)
            throw DivPowError("variable repeated in monomial '" + text + "'");
        r[std::size_t(var)] = e;
        any = true;
        skip();
    }
    if (!any)
        throw DivPowError("empty monomial");
    return pack(r);
}

DPoly DPoly::mono(const Field& F, ShapePtr S, Mono m, Elt c)
{
    DPoly p(F, std::move(S));
    p.add_term(m, c);
    return p;
}

DPoly DPoly::constant(const Field& F, ShapePtr S, Elt c)
{
    return mono(F, std::move(S), 0, c);
}

Elt DPoly::coeff(Mono m) const
{
    auto it = t_.find(m);
    return it == t_.end() ? 0 : it->second;
}

void DPoly::add_term(Mono m, Elt c)
{
    if (c == 0)
        return;
    auto [it, fresh] = t_.try_emplace(m, c);
    if (!fresh) {
        it->second ^= c;
        if (it->second == 0)
            t_.erase(it);
    }
}

DPoly& DPoly::operator+=(const DPoly& o)
{
    if (!S_)
        S_ = o.S_, F_ = o.F_;
    for (auto& [m, c] : o.t_)
        add_term(m, c);
    return *this;
}

DPoly DPoly::operator+(const DPoly& o) const
{
    DPoly r = *this;
    r += o;
    return r;
}

DPoly DPoly::operator*(const DPoly& o) const
{
    if (S_ && o.S_ && *S_ != *o.S_)
        throw DivPowError("product of functions from different O[m;N]");
    DPoly r(F_, S_ ? S_ : o.S_);
    for (auto& [a, ca] : t_)
        for (auto& [b, cb] : o.t_) {
            Mono m;
            if (mono_mul(a, b, m))
                r.add_term(m, F_.mul(ca, cb));
        }
    return r;
}

DPoly DPoly::scaled(Elt a) const
{
    DPoly r(F_, S_);
    if (a == 0)
        return r;
    for (auto& [m, c] : t_)
        r.t_.emplace(m, F_.mul(a, c));
    return r;
}

DPoly DPoly::partial(int i) const
{
    DPoly r(F_, S_);
    for (auto& [m, c] : t_) {
        int e = S_->exp(m, i);
        if (e > 0)
            r.add_term(S_->with_exp(m, i, e - 1), c);
    }
    return r;
}

DPoly DPoly::partial_pow(int i, int k) const
{
    DPoly r(F_, S_);
    for (auto& [m, c] : t_) {
        int e = S_->exp(m, i);
        if (e >= k)
            r.add_term(S_->with_exp(m, i, e - k), c);
    }
    return r;
}

DPoly DPoly::f_alpha(Elt alpha) const
{
    DPoly r(F_, S_);
    for (auto& [m, c] : t_) {
        int s = 0;
        for (int i = 0; i < S_->nvars(); ++i)
            s += S_->exp(m, i) / 2;
        r.add_term(m, F_.mul(c, F_.pow(alpha, std::uint64_t(s))));
    }
    return r;
}

DPoly DPoly::d_alpha(int i, Elt alpha) const
{
    DPoly r(F_, S_);
    for (auto& [m, c] : t_) {
        int e = S_->exp(m, i);
        if (e == 0)
            continue;
        Elt k = (e % 2 == 1) ? c : F_.mul(alpha, c);
        r.add_term(S_->with_exp(m, i, e - 1), k);
    }
    return r;
}

DPoly DPoly::times_mono(Mono m, Elt c) const
{
    DPoly r(F_, S_);
    for (auto& [a, ca] : t_) {
        Mono p;
        if (mono_mul(a, m, p))
            r.add_term(p, F_.mul(ca, c));
    }
    return r;
}

std::string DPoly::format() const
{
    if (t_.empty())
        return "0";
    std::vector<Mono> ms;
    for (auto& kv : t_)
        ms.push_back(kv.first);
    std::sort(ms.begin(), ms.end(), [this](Mono a, Mono b) { return S_->grlex_less(a, b); });
    std::string s;
    for (Mono m : ms) {
        if (!s.empty())
            s += " + ";
        Elt c = t_.at(m);
        if (c != 1)
            s += fmt::format("{{{}}}*", F_.format(c));
        s += S_->format(m);
    }
    return s;
}

Reindex::Reindex(ShapePtr src) : source(std::move(src))
{
    int m = source->nvars();
    std::vector<int> N(std::size_t(m), 1);
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i)
        names.push_back(fmt::format("y{}", i + 1));
    second.assign(std::size_t(m), -1);
    for (int i = 0; i < m; ++i) {
        int n = source->N()[std::size_t(i)];
        if (n >= 2) {
            second[std::size_t(i)] = int(N.size());
            N.push_back(n - 1);
            names.push_back(fmt::format("y{}", m + i + 1));
        }
    }
    target = std::make_shared<Shape>(N, names);
}

Mono Reindex::map(Mono x) const
{
    std::vector<int> r(std::size_t(target->nvars()), 0);
    for (int i = 0; i < source->nvars(); ++i) {
        int e = source->exp(x, i);
        r[std::size_t(i)] = e % 2;
        if (second[std::size_t(i)] >= 0)
            r[std::size_t(second[std::size_t(i)])] = e / 2;
    }
    return target->pack(r);
}

DPoly Reindex::map(const DPoly& f) const
{
    DPoly r(f.field(), target);
    for (auto& [m, c] : f.terms())
        r.add_term(map(m), c);
    return r;
}

}
