#pragma once

#include "mlie/algebra.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>

namespace mlie {

class CochainParseError : public AlgebraError {
public:
    CochainParseError(const std::string& msg, std::size_t pos);
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// Alternating 2-cochain g x g -> g, stored on basis pairs i < j.
struct Cochain2 {
    int dim = 0;
    std::map<std::pair<int, int>, Vec> terms; // nonzero values only
    bool partial = false;                     // parsed text contained an ellipsis

    Cochain2() = default;
    explicit Cochain2(int n) : dim(n) {}

    /// c(e_i, e_j); zero for i == j, symmetric in char 2.
    Vec value(int i, int j) const;
    void add(int i, int j, const Vec& v, const Field& F);
    void add_term(int k, int i, int j, Elt c, const Field& F);
    Vec eval(const Field& F, const Vec& x, const Vec& y) const;
    bool is_zero() const { return terms.empty(); }
    int term_count() const;
    Cochain2 plus(const Cochain2& o, const Field& F) const;
    Cochain2 scaled(Elt a, const Field& F) const;
    bool operator==(const Cochain2& o) const { return dim == o.dim && terms == o.terms; }
};

/// Alternating 3-cochain stored on basis triples a < b < c.
struct Cochain3 {
    int dim = 0;
    std::map<std::array<int, 3>, Vec> terms;

    Cochain3() = default;
    explicit Cochain3(int n) : dim(n) {}
    void add(int a, int b, int c, const Vec& v, const Field& F); // any order of distinct a, b, c
    bool is_zero() const { return terms.empty(); }
};

/// Cochain given by the bracket itself.
Cochain2 bracket_cochain(const Algebra& g);

/// Text form "x (x) d(y)^d(z) + ...". Slots take sums of basis monomials,
/// "(x)" may be written as a tensor sign, "^" as a wedge sign, a wedge sum may
/// be parenthesized and "..." marks elided terms.
Cochain2 parse_cochain(const Algebra& g, const std::string& text);
std::string format_cochain(const Algebra& g, const Cochain2& c);

/// Resolve a monomial written as a product of factors against the basis labels.
int find_basis_monomial(const Algebra& g, const std::string& text);

}
