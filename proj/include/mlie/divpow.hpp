#pragma once

#include "mlie/field.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace mlie {

/// Packed divided-power monomial: exponent r_i occupies N_i bits.
using Mono = std::uint64_t;

class DivPowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The shearing vector N of O[m;N] together with variable names.
class Shape {
public:
    Shape() = default;
    explicit Shape(std::vector<int> N, std::vector<std::string> names = {});

    int nvars() const { return int(N_.size()); }
    const std::vector<int>& N() const { return N_; }
    const std::vector<std::string>& names() const { return names_; }
    int total_bits() const { return bits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << bits_; }
    int max_exp(int i) const { return (1 << N_[std::size_t(i)]) - 1; }

    int exp(Mono m, int i) const
    {
        return int(m >> off_[std::size_t(i)] & std::uint64_t(max_exp(i)));
    }
    std::vector<int> exps(Mono m) const;
    Mono pack(const std::vector<int>& r) const; // throws if out of range
    Mono with_exp(Mono m, int i, int e) const;
    int degree(Mono m) const;

    /// All monomials in graded lexicographic order (total degree, then
    /// exponent vectors compared lexicographically with x1 > x2 > ...).
    std::vector<Mono> basis() const;
    bool grlex_less(Mono a, Mono b) const;

    std::string format(Mono m) const;      // "p^(3)*q", "1"
    Mono parse(const std::string& s) const; // inverse of format, lenient on spacing
    bool operator==(const Shape& o) const { return N_ == o.N_ && names_ == o.names_; }
    bool operator!=(const Shape& o) const { return !(*this == o); }

private:
    std::vector<int> N_;
    std::vector<int> off_;
    std::vector<std::string> names_;
    int bits_ = 0;
};

/// x^(r) x^(s) = prod binom(r_i+s_i, r_i) x^(r+s); in characteristic 2 the
/// coefficient is 1 exactly when every r_i and s_i share no binary digit,
/// in which case the sum never leaves the N_i-bit range.
inline bool mono_mul(Mono a, Mono b, Mono& out)
{
    if (a & b)
        return false;
    out = a | b;
    return true;
}

/// binom(n, k) mod 2 with the convention that meaningless arguments give 0.
inline int binom2(long n, long k)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    return (k & ~n) == 0 ? 1 : 0;
}

using ShapePtr = std::shared_ptr<const Shape>;

class DPoly {
public:
    DPoly() = default;
    DPoly(const Field& F, ShapePtr S) : F_(F), S_(std::move(S)) {}
    static DPoly mono(const Field& F, ShapePtr S, Mono m, Elt c = 1);
    static DPoly constant(const Field& F, ShapePtr S, Elt c);

    const Field& field() const { return F_; }
    const Shape& shape() const { return *S_; }
    const ShapePtr& shape_ptr() const { return S_; }
    const std::map<Mono, Elt>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    Elt coeff(Mono m) const;
    void add_term(Mono m, Elt c);

    DPoly& operator+=(const DPoly& o);
    DPoly operator+(const DPoly& o) const;
    DPoly operator*(const DPoly& o) const;
    DPoly scaled(Elt a) const;
    bool operator==(const DPoly& o) const { return t_ == o.t_; }
    bool operator!=(const DPoly& o) const { return t_ != o.t_; }

    DPoly partial(int i) const;
    DPoly partial_pow(int i, int k) const; // d_i^k
    DPoly f_alpha(Elt alpha) const;
    DPoly d_alpha(int i, Elt alpha) const;
    /// Multiply by the monomial m.
    DPoly times_mono(Mono m, Elt c = 1) const;

    std::string format() const;

private:
    Field F_;
    ShapePtr S_;
    std::map<Mono, Elt> t_;
};

/// O[m;N] -> O[2m; (1,..,1, N_1-1, .., N_m-1)]: x^(r) -> prod y_i^(r_i mod 2) y_{m+i}^(r_i div 2).
/// Variables with N_i = 1 keep a single coordinate y_i (no y_{m+i} factor).
struct Reindex {
    ShapePtr source;
    ShapePtr target;
    std::vector<int> second; // target index of y_{m+i}, -1 if N_i = 1

    explicit Reindex(ShapePtr src);
    Mono map(Mono m) const;
    DPoly map(const DPoly& f) const;
};

}
