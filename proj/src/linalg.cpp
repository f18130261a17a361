#include "mlie/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlie {

Vec zero_vec(int n)
{
    return Vec(std::size_t(n), 0);
}

Vec unit_vec(int n, int i)
{
    Vec v(std::size_t(n), 0);
    v[std::size_t(i)] = 1;
    return v;
}

bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](Elt x) { return x == 0; });
}

void axpy(const Field& F, Vec& y, Elt a, const Vec& x)
{
    if (a == 0)
        return;
    if (a == 1) {
        for (std::size_t i = 0; i < x.size(); ++i)
            y[i] ^= x[i];
        return;
    }
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i])
            y[i] ^= F.mul(a, x[i]);
}

Vec scaled(const Field& F, Elt a, const Vec& x)
{
    Vec y(x.size(), 0);
    axpy(F, y, a, x);
    return y;
}

int first_nonzero(const Vec& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i])
            return int(i);
    return -1;
}

BitVec to_bits(const Vec& v)
{
    BitVec b(int(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > 1)
            throw std::invalid_argument("to_bits: entry outside GF(2)");
        if (v[i])
            b.set(int(i));
    }
    return b;
}

Vec from_bits(const BitVec& b)
{
    Vec v(std::size_t(b.size()), 0);
    for (int i = b.next(0); i >= 0; i = b.next(i + 1))
        v[std::size_t(i)] = 1;
    return v;
}

void Echelon::reduce(Vec& v) const
{
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Elt c = v[std::size_t(piv_[r])];
        if (c)
            axpy(F_, v, c, rows_[r]);
    }
}

void Echelon::reduce(Vec& v, Vec& t) const
{
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Elt c = v[std::size_t(piv_[r])];
        if (c) {
            axpy(F_, v, c, rows_[r]);
            axpy(F_, t, c, tracks_[r]);
        }
    }
}

bool Echelon::contains(const Vec& v) const
{
    Vec w = v;
    reduce(w);
    return is_zero(w);
}

bool Echelon::insert(const Vec& v, int id)
{
    Vec t;
    if (ntrack_ > 0) {
        t = zero_vec(ntrack_);
        if (id >= 0)
            t[std::size_t(id)] = 1;
    }
    return insert_tracked(v, std::move(t));
}

bool Echelon::insert_tracked(Vec v, Vec t)
{
    if (ntrack_ > 0)
        reduce(v, t);
    else
        reduce(v);
    int p = first_nonzero(v);
    if (p < 0) {
        if (ntrack_ > 0)
            kernel_.push_back(std::move(t));
        return false;
    }
    Elt inv = F_.inv(v[std::size_t(p)]);
    if (inv != 1) {
        v = scaled(F_, inv, v);
        if (ntrack_ > 0)
            t = scaled(F_, inv, t);
    }
    // clear the new pivot column from the existing rows
    auto pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Elt c = rows_[r][std::size_t(p)];
        if (c) {
            axpy(F_, rows_[r], c, v);
            if (ntrack_ > 0)
                axpy(F_, tracks_[r], c, t);
        }
    }
    rows_.insert(rows_.begin() + pos, std::move(v));
    if (ntrack_ > 0)
        tracks_.insert(tracks_.begin() + pos, std::move(t));
    piv_.insert(piv_.begin() + pos, p);
    return true;
}

void Echelon::make_reduced()
{
    // insert() keeps every pivot column clear in the other rows already
}

std::optional<Vec> Echelon::solve(const Vec& v) const
{
    if (ntrack_ == 0)
        throw std::logic_error("Echelon::solve needs tracking");
    Vec w = v;
    Vec t = zero_vec(ntrack_);
    reduce(w, t);
    if (!is_zero(w))
        return std::nullopt;
    return t;
}

Mat Mat::identity(const Field& F, int n)
{
    Mat m(F, n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

Vec Mat::col(int j) const
{
    Vec c(std::size_t(nrows), 0);
    for (int i = 0; i < nrows; ++i)
        c[std::size_t(i)] = at(i, j);
    return c;
}

Vec Mat::apply(const Vec& x) const
{
    Vec y(std::size_t(nrows), 0);
    for (int j = 0; j < ncols; ++j) {
        Elt xj = x[std::size_t(j)];
        if (!xj)
            continue;
        for (int i = 0; i < nrows; ++i)
            if (at(i, j))
                y[std::size_t(i)] ^= F.mul(xj, at(i, j));
    }
    return y;
}

Mat Mat::mul(const Mat& o) const
{
    if (ncols != o.nrows)
        throw std::invalid_argument("Mat::mul: shape mismatch");
    Mat r(F, nrows, o.ncols);
    for (int i = 0; i < nrows; ++i)
        for (int k = 0; k < ncols; ++k)
            if (at(i, k))
                axpy(F, r.a[std::size_t(i)], at(i, k), o.a[std::size_t(k)]);
    return r;
}

Mat Mat::transpose() const
{
    Mat t(F, ncols, nrows);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

int Mat::rank() const
{
    Echelon e(F, ncols);
    for (auto& r : a)
        e.insert(r);
    return e.rank();
}

std::vector<Vec> Mat::nullspace() const
{
    Echelon e(F, ncols);
    for (auto& r : a)
        e.insert(r);
    std::vector<char> is_piv(std::size_t(ncols), 0);
    for (int p : e.pivots())
        is_piv[std::size_t(p)] = 1;
    std::vector<Vec> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[std::size_t(f)])
            continue;
        Vec x = zero_vec(ncols);
        x[std::size_t(f)] = 1;
        for (int r = 0; r < e.rank(); ++r)
            x[std::size_t(e.pivots()[std::size_t(r)])] = e.rows()[std::size_t(r)][std::size_t(f)];
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<Mat> Mat::inverse() const
{
    if (nrows != ncols)
        return std::nullopt;
    int n = nrows;
    Echelon e(F, n, n);
    for (int i = 0; i < n; ++i)
        e.insert(a[std::size_t(i)], i);
    if (e.rank() < n)
        return std::nullopt;
    // the reduced rows are unit vectors: e_piv = sum_i track_i * row_i(a)
    Mat inv(F, n, n);
    for (int r = 0; r < n; ++r)
        inv.a[std::size_t(e.pivots()[std::size_t(r)])] = e.tracks()[std::size_t(r)];
    return inv;
}

RowReducer::RowReducer(const Field& F, int ncols) : F_(F), ncols_(ncols), bits_(F.is_prime())
{
    if (bits_)
        b_ = BitEchelon(ncols);
    else
        e_ = Echelon(F, ncols);
}

int RowReducer::rank() const
{
    return bits_ ? b_.rank() : e_.rank();
}

bool RowReducer::add(const Vec& row)
{
    return bits_ ? b_.insert(to_bits(row)) : e_.insert(row);
}

bool RowReducer::add(const BitVec& row)
{
    if (!bits_)
        return e_.insert(from_bits(row));
    return b_.insert(row);
}

bool RowReducer::add_sparse(const std::vector<std::pair<int, Elt>>& row)
{
    if (bits_) {
        BitVec b(ncols_);
        for (auto& [c, x] : row)
            if (x & 1)
                b.flip(c);
        return b_.insert(b);
    }
    Vec v = zero_vec(ncols_);
    for (auto& [c, x] : row)
        v[std::size_t(c)] ^= x;
    return e_.insert(v);
}

std::vector<Vec> RowReducer::nullspace()
{
    std::vector<Vec> basis;
    std::vector<char> is_piv(std::size_t(ncols_), 0);
    if (bits_) {
        b_.make_reduced();
        for (int p : b_.pivots())
            is_piv[std::size_t(p)] = 1;
        for (int f = 0; f < ncols_; ++f) {
            if (is_piv[std::size_t(f)])
                continue;
            Vec x = zero_vec(ncols_);
            x[std::size_t(f)] = 1;
            for (int r = 0; r < b_.rank(); ++r)
                if (b_.rows()[std::size_t(r)].get(f))
                    x[std::size_t(b_.pivots()[std::size_t(r)])] = 1;
            basis.push_back(std::move(x));
        }
        return basis;
    }
    for (int p : e_.pivots())
        is_piv[std::size_t(p)] = 1;
    for (int f = 0; f < ncols_; ++f) {
        if (is_piv[std::size_t(f)])
            continue;
        Vec x = zero_vec(ncols_);
        x[std::size_t(f)] = 1;
        for (int r = 0; r < e_.rank(); ++r)
            x[std::size_t(e_.pivots()[std::size_t(r)])] = e_.rows()[std::size_t(r)][std::size_t(f)];
        basis.push_back(std::move(x));
    }
    return basis;
}

}
