#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlie {

using Elt = std::uint32_t;

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// GF(2^k), k <= 31, elements are bit-vectors of polynomials mod `modulus`.
class Field {
public:
    Field() : Field(1) {}
    explicit Field(int k);               // default (Conway-style) modulus
    Field(int k, std::uint64_t modulus); // throws FieldError if reducible

    static Field gf2() { return Field(1); }
    static Field parse(const std::string& s); // "gf2", "gf4", "gf2k:<k>[:<hexmod>]"

    int degree() const { return k_; }
    std::uint64_t modulus() const { return mod_; }
    std::uint64_t order() const { return std::uint64_t{1} << k_; }
    bool is_prime() const { return k_ == 1; }
    std::string name() const;

    Elt add(Elt a, Elt b) const { return a ^ b; }
    Elt mul(Elt a, Elt b) const;
    Elt sqr(Elt a) const { return mul(a, a); }
    Elt pow(Elt a, std::uint64_t e) const;
    Elt inv(Elt a) const;
    Elt sqrt(Elt a) const;
    bool valid(Elt a) const { return (std::uint64_t(a) >> k_) == 0; }
    /// Generator of the multiplicative group relative to the default modulus is x.
    Elt gen() const { return k_ == 1 ? 1 : 2; }

    std::string format(Elt a) const;
    Elt parse_elt(const std::string& s) const;

    bool operator==(const Field& o) const { return k_ == o.k_ && mod_ == o.mod_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    int k_;
    std::uint64_t mod_;
};

std::uint64_t default_modulus(int k);
bool is_irreducible(std::uint64_t poly);
int poly_degree(std::uint64_t p);
std::uint64_t clmul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod, int k);

/// Element of GF(2)[h], coefficient i stored in bit i.
class Poly {
public:
    Poly() = default;
    static Poly constant(bool c);
    static Poly monomial(int e);
    static Poly from_coeffs(const std::vector<int>& c);

    int degree() const; // -1 for zero
    bool coeff(int i) const;
    void set(int i, bool v);
    bool is_zero() const { return w_.empty(); }

    Poly operator+(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    bool operator==(const Poly& o) const { return w_ == o.w_; }
    bool operator!=(const Poly& o) const { return w_ != o.w_; }

    Elt eval(const Field& F, Elt at) const;
    std::string format() const; // "[c0,c1,...]"
    static Poly parse(const std::string& s);

private:
    void trim();
    std::vector<std::uint64_t> w_;
};

}
