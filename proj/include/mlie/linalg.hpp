#pragma once

#include "mlie/field.hpp"
#include "mlie/gf2.hpp"

#include <optional>
#include <vector>

namespace mlie {

using Vec = std::vector<Elt>;

Vec zero_vec(int n);
Vec unit_vec(int n, int i);
bool is_zero(const Vec& v);
void axpy(const Field& F, Vec& y, Elt a, const Vec& x); // y += a x
Vec scaled(const Field& F, Elt a, const Vec& x);
int first_nonzero(const Vec& v);
BitVec to_bits(const Vec& v);
Vec from_bits(const BitVec& b);

/// Incremental echelon form over an arbitrary GF(2^k). Stored rows are
/// normalized (pivot entry 1) with pivot at the lowest nonzero column.
class Echelon {
public:
    Echelon() = default;
    Echelon(const Field& F, int ncols, int ntrack = 0) : F_(F), ncols_(ncols), ntrack_(ntrack) {}

    const Field& field() const { return F_; }
    int ncols() const { return ncols_; }
    int rank() const { return int(rows_.size()); }
    int ntrack() const { return ntrack_; }
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<Vec>& tracks() const { return tracks_; }
    const std::vector<int>& pivots() const { return piv_; }
    const std::vector<Vec>& kernel() const { return kernel_; }

    void reduce(Vec& v) const;
    void reduce(Vec& v, Vec& t) const;
    bool contains(const Vec& v) const;
    bool insert(const Vec& v, int id = -1);
    bool insert_tracked(Vec v, Vec t);
    void make_reduced();
    /// Coefficients c with sum c_i * (inserted vector i) = v, if v lies in the span.
    std::optional<Vec> solve(const Vec& v) const;

private:
    Field F_;
    int ncols_ = 0;
    int ntrack_ = 0;
    std::vector<Vec> rows_;
    std::vector<Vec> tracks_;
    std::vector<int> piv_;
    std::vector<Vec> kernel_;
};

/// Row space accumulator that switches to bit-packed rows over GF(2).
class RowReducer {
public:
    RowReducer(const Field& F, int ncols);

    int ncols() const { return ncols_; }
    int rank() const;
    bool add(const Vec& row);
    bool add(const BitVec& row); // GF(2) only
    /// Sparse row given as (column, coefficient) pairs.
    bool add_sparse(const std::vector<std::pair<int, Elt>>& row);
    bool full() const { return rank() == ncols_; }
    /// Basis of {x : r . x = 0 for every added row r}.
    std::vector<Vec> nullspace();

private:
    Field F_;
    int ncols_;
    bool bits_;
    Echelon e_;
    BitEchelon b_;
};

/// Row-major matrix over a field.
struct Mat {
    Field F;
    int nrows = 0, ncols = 0;
    std::vector<Vec> a;

    Mat() = default;
    Mat(const Field& F_, int r, int c) : F(F_), nrows(r), ncols(c), a(std::size_t(r), zero_vec(c)) {}
    static Mat identity(const Field& F, int n);

    Elt& at(int i, int j) { return a[std::size_t(i)][std::size_t(j)]; }
    Elt at(int i, int j) const { return a[std::size_t(i)][std::size_t(j)]; }
    Vec col(int j) const;
    Vec apply(const Vec& x) const;
    Mat mul(const Mat& o) const;
    Mat transpose() const;
    int rank() const;
    std::vector<Vec> nullspace() const; // {x : a x = 0}
    std::optional<Mat> inverse() const;
    bool operator==(const Mat& o) const { return F == o.F && a == o.a; }
};

}
