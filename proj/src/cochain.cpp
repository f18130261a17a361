#include "mlie/cochain.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace mlie {

CochainParseError::CochainParseError(const std::string& msg, std::size_t pos)
    : AlgebraError(fmt::format("{} at offset {}", msg, pos)), pos_(pos)
{
}

Vec Cochain2::value(int i, int j) const
{
    if (i == j)
        return zero_vec(dim);
    auto it = terms.find(i < j ? std::pair{i, j} : std::pair{j, i});
    return it == terms.end() ? zero_vec(dim) : it->second;
}

void Cochain2::add(int i, int j, const Vec& v, const Field& F)
{
    if (i == j || mlie::is_zero(v))
        return;
    auto key = i < j ? std::pair{i, j} : std::pair{j, i};
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(key, v);
        return;
    }
    axpy(F, it->second, 1, v);
    if (mlie::is_zero(it->second))
        terms.erase(it);
}

void Cochain2::add_term(int k, int i, int j, Elt c, const Field& F)
{
    if (c == 0 || i == j)
        return;
    Vec v = zero_vec(dim);
    v[std::size_t(k)] = c;
    add(i, j, v, F);
}

Vec Cochain2::eval(const Field& F, const Vec& x, const Vec& y) const
{
    Vec r = zero_vec(dim);
    for (auto& [ij, v] : terms) {
        auto [i, j] = ij;
        // alternating: c(x,y) = sum_{i<j} (x_i y_j - x_j y_i) c(e_i,e_j)
        Elt a = F.mul(x[std::size_t(i)], y[std::size_t(j)]) ^ F.mul(x[std::size_t(j)], y[std::size_t(i)]);
        if (a)
            axpy(F, r, a, v);
    }
    return r;
}

int Cochain2::term_count() const
{
    int c = 0;
    for (auto& [ij, v] : terms)
        for (auto x : v)
            c += x != 0;
    return c;
}

Cochain2 Cochain2::plus(const Cochain2& o, const Field& F) const
{
    Cochain2 r = *this;
    for (auto& [ij, v] : o.terms)
        r.add(ij.first, ij.second, v, F);
    r.partial = partial || o.partial;
    return r;
}

Cochain2 Cochain2::scaled(Elt a, const Field& F) const
{
    Cochain2 r(dim);
    if (a == 0)
        return r;
    for (auto& [ij, v] : terms)
        r.terms.emplace(ij, mlie::scaled(F, a, v));
    return r;
}

void Cochain3::add(int a, int b, int c, const Vec& v, const Field& F)
{
    if (a == b || b == c || a == c || mlie::is_zero(v))
        return;
    std::array<int, 3> k{a, b, c};
    std::sort(k.begin(), k.end());
    auto it = terms.find(k);
    if (it == terms.end()) {
        terms.emplace(k, v);
        return;
    }
    axpy(F, it->second, 1, v);
    if (mlie::is_zero(it->second))
        terms.erase(it);
}

Cochain2 bracket_cochain(const Algebra& g)
{
    Cochain2 c(g.dim());
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j)
            for (auto& t : g.bracket(i, j))
                c.add_term(t.k, i, j, t.c, g.field());
    return c;
}

namespace {

/// Canonical key of a product of factors name^(k), empty for the constant 1;
/// false when the text is not such a product.
bool monomial_key(const std::string& text, std::string& key)
{
    std::vector<std::pair<std::string, int>> f;
    std::size_t i = 0, n = text.size();
    auto skip = [&] {
        while (i < n && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*'))
            ++i;
    };
    skip();
    if (i < n && text.substr(i) == "1") {
        key.clear();
        return true;
    }
    while (i < n) {
        if (!std::isalpha(static_cast<unsigned char>(text[i])))
            return false;
        std::size_t s = i;
        while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
            ++i;
        std::string name = text.substr(s, i - s);
        int e = 1;
        if (i < n && text[i] == '^') {
            ++i;
            bool brace = i < n && text[i] == '{';
            if (brace)
                ++i;
            bool paren = i < n && text[i] == '(';
            if (paren)
                ++i;
            std::size_t d = i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i])))
                ++i;
            if (d == i)
                return false;
            e = std::stoi(text.substr(d, i - d));
            if (paren) {
                if (i >= n || text[i] != ')')
                    return false;
                ++i;
            }
            if (brace) {
                if (i >= n || text[i] != '}')
                    return false;
                ++i;
            }
        }
        f.push_back({name, e});
        skip();
    }
    if (f.empty())
        return false;
    std::sort(f.begin(), f.end());
    for (std::size_t a = 1; a < f.size(); ++a)
        if (f[a].first == f[a - 1].first)
            return false;
    key.clear();
    for (auto& [name, e] : f) {
        if (e == 0)
            continue;
        key += fmt::format("{}^{};", name, e);
    }
    return true;
}

std::unordered_map<std::string, int> label_keys(const Algebra& g)
{
    std::unordered_map<std::string, int> m;
    for (int i = 0; i < g.dim(); ++i) {
        std::string key;
        if (monomial_key(g.label(i), key))
            m.emplace(key, i);
    }
    return m;
}

int lookup(const Algebra& g, const std::unordered_map<std::string, int>& keys, const std::string& text)
{
    int direct = g.index_of(text);
    if (direct >= 0)
        return direct;
    std::string key;
    if (!monomial_key(text, key))
        return -1;
    auto it = keys.find(key);
    return it == keys.end() ? -1 : it->second;
}

std::string trim(const std::string& s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

class Parser {
public:
    Parser(const Algebra& g, const std::string& s) : g_(g), s_(s), keys_(label_keys(g)) {}

    Cochain2 run()
    {
        Cochain2 c(g_.dim());
        skip();
        if (at_end())
            return c;
        while (true) {
            summand(c);
            skip();
            if (at_end())
                break;
            if (!eat("+"))
                fail("expected '+' between terms");
            skip();
            if (at_end())
                break; // trailing '+' before the end of an elided list
        }
        return c;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw CochainParseError(msg, i_); }
    bool at_end() const { return i_ >= s_.size(); }
    void skip()
    {
        while (!at_end()) {
            if (std::isspace(static_cast<unsigned char>(s_[i_])))
                ++i_;
            else if (s_.compare(i_, 2, "\\,") == 0)
                i_ += 2;
            else
                break;
        }
    }
    bool peek(const char* t) const { return s_.compare(i_, std::char_traits<char>::length(t), t) == 0; }
    bool eat(const char* t)
    {
        if (!peek(t))
            return false;
        i_ += std::char_traits<char>::length(t);
        return true;
    }
    bool eat_tensor() { return eat("(x)") || eat("\xe2\x8a\x97") || eat("\\otimes"); }
    bool peek_tensor() const { return peek("(x)") || peek("\xe2\x8a\x97") || peek("\\otimes"); }
    bool eat_wedge() { return eat("^") || eat("\xe2\x88\xa7") || eat("\\wedge"); }
    bool eat_ellipsis() { return eat("...") || eat("\xe2\x80\xa6") || eat("\\dots") || eat("\\cdots"); }

    int monomial(const std::string& text, std::size_t pos)
    {
        std::string t = trim(text);
        int k = lookup(g_, keys_, t);
        if (k < 0)
            throw CochainParseError(fmt::format("unknown monomial '{}'", t), pos);
        return k;
    }

    /// Sum of monomials up to the ')' matching an already consumed '('.
    std::vector<int> paren_sum()
    {
        std::vector<int> out;
        int depth = 0;
        std::size_t start = i_;
        while (true) {
            if (at_end())
                fail("unbalanced parenthesis");
            char ch = s_[i_];
            if (ch == '(' || ch == '{')
                ++depth;
            else if (ch == ')' || ch == '}') {
                if (depth == 0) {
                    out.push_back(monomial(s_.substr(start, i_ - start), start));
                    ++i_;
                    return out;
                }
                --depth;
            } else if (ch == '+' && depth == 0) {
                out.push_back(monomial(s_.substr(start, i_ - start), start));
                start = i_ + 1;
            }
            ++i_;
        }
    }

    std::vector<int> value_slot()
    {
        skip();
        if (peek("(") && !peek("(x)")) {
            ++i_;
            return paren_sum();
        }
        std::size_t start = i_;
        int depth = 0;
        while (!at_end()) {
            if (depth == 0 && peek_tensor())
                break;
            char ch = s_[i_];
            if (ch == '(' || ch == '{')
                ++depth;
            else if (ch == ')' || ch == '}')
                --depth;
            ++i_;
        }
        if (at_end())
            fail("missing tensor sign");
        return {monomial(s_.substr(start, i_ - start), start)};
    }

    std::vector<int> differential()
    {
        skip();
        if (!eat("d("))
            fail("expected d(");
        return paren_sum();
    }

    void wedge(std::vector<std::pair<std::vector<int>, std::vector<int>>>& out)
    {
        std::size_t pos = i_;
        auto y = differential();
        skip();
        if (!eat_wedge())
            fail("a 2-cochain needs exactly two differentials");
        auto z = differential();
        skip();
        std::size_t save = i_;
        if (eat_wedge()) {
            skip();
            if (peek("d("))
                throw CochainParseError("odd arity: more than two differentials", save);
            i_ = save;
        }
        for (int a : y)
            for (int b : z)
                if (a == b)
                    throw CochainParseError(fmt::format("repeated differential d({})", g_.label(a)), pos);
        out.push_back({y, z});
    }

    void summand(Cochain2& c)
    {
        if (eat_ellipsis()) {
            c.partial = true;
            return;
        }
        Elt coef = 1;
        if (eat("[")) {
            std::size_t start = i_;
            while (!at_end() && s_[i_] != ']')
                ++i_;
            if (at_end())
                fail("unterminated coefficient");
            try {
                coef = g_.field().parse_elt(trim(s_.substr(start, i_ - start)));
            } catch (const std::exception& e) {
                throw CochainParseError(e.what(), start);
            }
            ++i_;
        }
        auto xs = value_slot();
        if (!eat_tensor())
            fail("missing tensor sign");
        skip();
        std::vector<std::pair<std::vector<int>, std::vector<int>>> ws;
        if (peek("(") && !peek("(x)")) {
            ++i_;
            skip();
            while (true) {
                skip();
                if (eat_ellipsis()) {
                    c.partial = true;
                } else {
                    wedge(ws);
                }
                skip();
                if (eat(")"))
                    break;
                if (!eat("+"))
                    fail("expected '+' or ')' in a wedge sum");
            }
        } else {
            wedge(ws);
        }
        for (int x : xs)
            for (auto& [ys, zs] : ws)
                for (int y : ys)
                    for (int z : zs)
                        c.add_term(x, y, z, coef, g_.field());
    }

    const Algebra& g_;
    const std::string& s_;
    std::unordered_map<std::string, int> keys_;
    std::size_t i_ = 0;
};

}

Cochain2 parse_cochain(const Algebra& g, const std::string& text)
{
    return Parser(g, text).run();
}

int find_basis_monomial(const Algebra& g, const std::string& text)
{
    return lookup(g, label_keys(g), trim(text));
}

std::string format_cochain(const Algebra& g, const Cochain2& c)
{
    std::string out;
    const Field& F = g.field();
    for (auto& [ij, v] : c.terms)
        for (int k = 0; k < g.dim(); ++k) {
            Elt a = v[std::size_t(k)];
            if (!a)
                continue;
            if (!out.empty())
                out += " + ";
            if (a != 1)
                out += "[" + F.format(a) + "] ";
            out += fmt::format("{} (x) d({})^d({})", g.label(k), g.label(ij.first), g.label(ij.second));
        }
    if (c.partial)
        out += out.empty() ? "..." : " + ...";
    return out;
}

}
