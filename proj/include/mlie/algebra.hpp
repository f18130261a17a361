#pragma once

#include "mlie/field.hpp"
#include "mlie/linalg.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mlie {

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Term {
    int k;
    Elt c;
    bool operator==(const Term& o) const { return k == o.k && c == o.c; }
};

using Terms = std::vector<Term>;

/// Weight vectors attached to basis elements. moduli[a] = 0 means the a-th
/// component is an integer, m > 0 means it is read modulo m.
struct Grading {
    std::vector<std::vector<int>> weights;
    std::vector<int> moduli;

    bool empty() const { return weights.empty(); }
    int arity() const { return int(moduli.size()); }
    std::vector<int> normalize(std::vector<int> w) const;
    std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b) const;
    bool operator==(const Grading& o) const { return weights == o.weights && moduli == o.moduli; }
};

/// Finite-dimensional anticommutative algebra over GF(2^k) given by
/// structure constants [e_i, e_j] for i < j.
class Algebra {
public:
    Algebra() = default;
    Algebra(const Field& F, int dim, std::vector<std::string> labels = {});

    const Field& field() const { return F_; }
    int dim() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[std::size_t(i)]; }
    int index_of(const std::string& label) const; // -1 if absent

    const Grading& grading() const { return grading_; }
    void set_grading(Grading g);
    const std::vector<int>& weight(int i) const { return grading_.weights[std::size_t(i)]; }

    /// [e_i, e_j]; empty for i == j.
    const Terms& bracket(int i, int j) const;
    void set_bracket(int i, int j, const Vec& v);
    void set_bracket(int i, int j, Terms t);
    Vec bracket_vec(int i, int j) const;
    Vec bracket(const Vec& x, const Vec& y) const;
    /// [e_i, y]
    Vec bracket_basis(int i, const Vec& y) const;
    /// Matrix of ad_x acting on column vectors.
    Mat ad(const Vec& x) const;

    Vec unit(int i) const { return unit_vec(n_, i); }
    std::string format_vec(const Vec& v) const;

    /// GF(2)-only fast path: brackets of bitmask vectors for dim <= 64.
    bool has_mask_table() const { return !mask_.empty(); }
    std::uint64_t bracket_mask(std::uint64_t x, std::uint64_t y) const;
    std::uint64_t bracket_mask_basis(int i, std::uint64_t y) const;

    nlohmann::ordered_json to_json() const;
    static Algebra from_json(const nlohmann::json& j);
    bool same_structure(const Algebra& o) const;

private:
    std::size_t idx(int i, int j) const
    {
        return std::size_t(i) * std::size_t(n_) - std::size_t(i) * std::size_t(i + 1) / 2 + std::size_t(j - i - 1);
    }
    void update_mask(int i, int j);

    Field F_;
    int n_ = 0;
    std::vector<std::string> labels_;
    std::vector<Terms> sc_;
    Grading grading_;
    // mask_[i*n+j] = [e_i,e_j] as bitmask (GF(2), n <= 64)
    std::vector<std::uint64_t> mask_;
};

/// Subspace given by a reduced row-echelon basis.
class Subspace {
public:
    Subspace() = default;
    Subspace(const Field& F, int ambient) : e_(F, ambient) {}
    static Subspace span(const Field& F, int ambient, const std::vector<Vec>& vecs);
    static Subspace full(const Field& F, int ambient);

    int ambient() const { return e_.ncols(); }
    int dim() const { return e_.rank(); }
    const std::vector<Vec>& basis() const { return e_.rows(); }
    const std::vector<int>& pivots() const { return e_.pivots(); }
    bool contains(const Vec& v) const { return e_.contains(v); }
    bool add(const Vec& v) { return e_.insert(v); }
    void reduce(Vec& v) const { e_.reduce(v); }
    bool contains(const Subspace& o) const;
    bool operator==(const Subspace& o) const { return dim() == o.dim() && contains(o); }
    /// Coordinates of v in basis(), or nullopt if v is outside.
    std::optional<Vec> coords(const Vec& v) const;

private:
    Echelon e_;
};

}
