#include "mlie/field.hpp"

#include <fmt/format.h>

#include <bit>
#include <cctype>

namespace mlie {

namespace {

// Conway polynomials over GF(2), index = k. A table entry that fails the
// irreducibility check falls back to the first irreducible of that degree.
constexpr std::uint64_t kDefaultModuli[] = {
    0,
    0x3,     // x+1
    0x7,     // x^2+x+1
    0xB,     // x^3+x+1
    0x13,    // x^4+x+1
    0x25,    // x^5+x^2+1
    0x5B,    // x^6+x^4+x^3+x+1
    0x83,    // x^7+x+1
    0x11D,   // x^8+x^4+x^3+x^2+1
    0x211,   // x^9+x^4+1
    0x46F,   // x^10+x^6+x^5+x^3+x^2+x+1
    0x805,   // x^11+x^2+1
    0x10EB,  // x^12+x^7+x^6+x^5+x^3+x+1
    0x201B,  // x^13+x^4+x^3+x+1
    0x40A9,  // x^14+x^7+x^5+x^3+1
    0x8035,  // x^15+x^5+x^4+x^2+1
    0x1002D, // x^16+x^5+x^3+x^2+1
};

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m)
{
    int dm = poly_degree(m);
    for (int d = poly_degree(a); d >= dm; d = poly_degree(a))
        a ^= m << (d - dm);
    return a;
}

std::uint64_t first_irreducible(int k)
{
    for (std::uint64_t tail = 1; tail < (std::uint64_t{1} << k); tail += 2) {
        std::uint64_t p = (std::uint64_t{1} << k) | tail;
        if (is_irreducible(p))
            return p;
    }
    throw FieldError(fmt::format("no irreducible polynomial of degree {}", k));
}

}

int poly_degree(std::uint64_t p)
{
    return p == 0 ? -1 : 63 - std::countl_zero(p);
}

bool is_irreducible(std::uint64_t p)
{
    int k = poly_degree(p);
    if (k < 1)
        return false;
    // trial division by every polynomial of degree 1..k/2
    for (int d = 1; 2 * d <= k; ++d)
        for (std::uint64_t q = std::uint64_t{1} << d; q < (std::uint64_t{1} << (d + 1)); ++q)
            if (poly_mod(p, q) == 0)
                return false;
    return true;
}

std::uint64_t default_modulus(int k)
{
    if (k < 1 || k > 31)
        throw FieldError(fmt::format("unsupported extension degree {}", k));
    if (k < int(std::size(kDefaultModuli)) && is_irreducible(kDefaultModuli[k]))
        return kDefaultModuli[k];
    return first_irreducible(k);
}

std::uint64_t clmul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod, int k)
{
    std::uint64_t r = 0;
    while (b) {
        if (b & 1)
            r ^= a;
        b >>= 1;
        a <<= 1;
        if (a >> k & 1)
            a ^= mod;
    }
    return r;
}

Field::Field(int k) : k_(k), mod_(default_modulus(k)) {}

Field::Field(int k, std::uint64_t modulus) : k_(k), mod_(modulus)
{
    if (k < 1 || k > 31)
        throw FieldError(fmt::format("unsupported extension degree {}", k));
    if (poly_degree(modulus) != k)
        throw FieldError(fmt::format("modulus {:#x} does not have degree {}", modulus, k));
    if (!is_irreducible(modulus))
        throw FieldError(fmt::format("modulus {:#x} is reducible", modulus));
}

Field Field::parse(const std::string& s)
{
    if (s == "gf2")
        return Field(1);
    if (s == "gf4")
        return Field(2);
    if (s.rfind("gf2k:", 0) == 0) {
        std::string rest = s.substr(5);
        auto colon = rest.find(':');
        int k = std::stoi(rest.substr(0, colon));
        if (colon == std::string::npos)
            return Field(k);
        return Field(k, std::stoull(rest.substr(colon + 1), nullptr, 16));
    }
    throw FieldError("unknown field descriptor '" + s + "'");
}

std::string Field::name() const
{
    if (mod_ != default_modulus(k_))
        return fmt::format("gf2k:{}:{:x}", k_, mod_);
    if (k_ == 1)
        return "gf2";
    if (k_ == 2)
        return "gf4";
    return fmt::format("gf2k:{}", k_);
}

Elt Field::mul(Elt a, Elt b) const
{
    if (k_ == 1)
        return a & b;
    return Elt(clmul_mod(a, b, mod_, k_));
}

Elt Field::pow(Elt a, std::uint64_t e) const
{
    Elt r = 1;
    while (e) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Elt Field::inv(Elt a) const
{
    if (a == 0)
        throw FieldError("inversion of zero");
    return pow(a, order() - 2);
}

Elt Field::sqrt(Elt a) const
{
    for (int i = 1; i < k_; ++i)
        a = sqr(a);
    return a;
}

std::string Field::format(Elt a) const
{
    return fmt::format("{:x}", a);
}

Elt Field::parse_elt(const std::string& s) const
{
    std::string t = s;
    if (t.rfind("0x", 0) == 0)
        t = t.substr(2);
    if (t.empty())
        throw FieldError("empty scalar");
    Elt v = Elt(std::stoul(t, nullptr, 16));
    if (!valid(v))
        throw FieldError("scalar '" + s + "' not in " + name());
    return v;
}

Poly Poly::constant(bool c)
{
    Poly p;
    if (c)
        p.w_ = {1};
    return p;
}

Poly Poly::monomial(int e)
{
    Poly p;
    p.set(e, true);
    return p;
}

Poly Poly::from_coeffs(const std::vector<int>& c)
{
    Poly p;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] & 1)
            p.set(int(i), true);
    return p;
}

int Poly::degree() const
{
    if (w_.empty())
        return -1;
    return int(64 * (w_.size() - 1)) + poly_degree(w_.back());
}

bool Poly::coeff(int i) const
{
    std::size_t q = std::size_t(i) / 64;
    return q < w_.size() && (w_[q] >> (i % 64) & 1);
}

void Poly::set(int i, bool v)
{
    std::size_t q = std::size_t(i) / 64;
    if (q >= w_.size()) {
        if (!v)
            return;
        w_.resize(q + 1, 0);
    }
    if (v)
        w_[q] |= std::uint64_t{1} << (i % 64);
    else
        w_[q] &= ~(std::uint64_t{1} << (i % 64));
    trim();
}

void Poly::trim()
{
    while (!w_.empty() && w_.back() == 0)
        w_.pop_back();
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.w_.size() > w_.size())
        w_.resize(o.w_.size(), 0);
    for (std::size_t i = 0; i < o.w_.size(); ++i)
        w_[i] ^= o.w_[i];
    trim();
    return *this;
}

Poly Poly::operator+(const Poly& o) const
{
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator*(const Poly& o) const
{
    Poly r;
    int da = degree(), db = o.degree();
    if (da < 0 || db < 0)
        return r;
    r.w_.assign(std::size_t(da + db) / 64 + 1, 0);
    for (int i = 0; i <= da; ++i) {
        if (!coeff(i))
            continue;
        for (int j = 0; j <= db; ++j)
            if (o.coeff(j))
                r.w_[std::size_t(i + j) / 64] ^= std::uint64_t{1} << ((i + j) % 64);
    }
    r.trim();
    return r;
}

Elt Poly::eval(const Field& F, Elt at) const
{
    Elt r = 0;
    for (int i = degree(); i >= 0; --i)
        r = F.add(F.mul(r, at), coeff(i) ? 1 : 0);
    return r;
}

std::string Poly::format() const
{
    std::string s = "[";
    int d = degree();
    if (d < 0)
        s += "0";
    for (int i = 0; i <= d; ++i) {
        if (i)
            s += ",";
        s += coeff(i) ? "1" : "0";
    }
    return s + "]";
}

Poly Poly::parse(const std::string& s)
{
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw FieldError("polynomial must look like [c0,c1,...]: '" + s + "'");
    Poly p;
    int i = 0;
    for (std::size_t pos = 1; pos + 1 < s.size(); ++pos) {
        char c = s[pos];
        if (c == ',')
            ++i;
        else if (c == '1')
            p.set(i, true);
        else if (c != '0' && !std::isspace(static_cast<unsigned char>(c)))
            throw FieldError("bad polynomial coefficient in '" + s + "'");
    }
    return p;
}

}
