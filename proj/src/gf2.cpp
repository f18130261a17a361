#include "mlie/gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlie {

bool BitVec::operator<(const BitVec& o) const
{
    if (n_ != o.n_)
        return n_ < o.n_;
    // lexicographic by coordinate index 0,1,2,...
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (w_[i] == o.w_[i])
            continue;
        std::uint64_t d = w_[i] ^ o.w_[i];
        return (o.w_[i] >> std::countr_zero(d)) & 1;
    }
    return false;
}

int BitEchelon::find_slot(int pivot) const
{
    return int(std::lower_bound(piv_.begin(), piv_.end(), pivot) - piv_.begin());
}

void BitEchelon::reduce(BitVec& v) const
{
    if (rows_.empty())
        return;
    std::size_t r = 0;
    for (int c = v.next(0); c >= 0; c = v.next(c + 1)) {
        while (r < piv_.size() && piv_[r] < c)
            ++r;
        if (r == piv_.size())
            break;
        if (piv_[r] == c)
            v.xor_from(rows_[r], c >> 6);
    }
}

void BitEchelon::reduce(BitVec& v, BitVec& t) const
{
    std::size_t r = 0;
    for (int c = v.next(0); c >= 0; c = v.next(c + 1)) {
        while (r < piv_.size() && piv_[r] < c)
            ++r;
        if (r == piv_.size())
            break;
        if (piv_[r] == c) {
            v.xor_from(rows_[r], c >> 6);
            t ^= tracks_[r];
        }
    }
}

bool BitEchelon::contains(const BitVec& v) const
{
    BitVec w = v;
    reduce(w);
    return w.is_zero();
}

bool BitEchelon::insert(const BitVec& v, int id)
{
    if (ntrack_ > 0) {
        BitVec t(ntrack_);
        if (id >= 0)
            t.set(id);
        return insert_tracked(v, std::move(t));
    }
    BitVec w = v;
    reduce(w);
    int p = w.next(0);
    if (p < 0)
        return false;
    int s = find_slot(p);
    rows_.insert(rows_.begin() + s, std::move(w));
    piv_.insert(piv_.begin() + s, p);
    return true;
}

bool BitEchelon::insert_tracked(BitVec v, BitVec t)
{
    reduce(v, t);
    int p = v.next(0);
    if (p < 0) {
        kernel_.push_back(std::move(t));
        return false;
    }
    int s = find_slot(p);
    rows_.insert(rows_.begin() + s, std::move(v));
    tracks_.insert(tracks_.begin() + s, std::move(t));
    piv_.insert(piv_.begin() + s, p);
    return true;
}

void BitEchelon::make_reduced()
{
    for (std::size_t i = rows_.size(); i-- > 0;) {
        int p = piv_[i];
        for (std::size_t j = 0; j < i; ++j)
            if (rows_[j].get(p)) {
                rows_[j] ^= rows_[i];
                if (ntrack_ > 0)
                    tracks_[j] ^= tracks_[i];
            }
    }
}

bool BitEchelon::solve(const BitVec& v, BitVec& combo) const
{
    if (ntrack_ == 0)
        throw std::logic_error("BitEchelon::solve needs tracking");
    BitVec w = v;
    combo = BitVec(ntrack_);
    reduce(w, combo);
    return w.is_zero();
}

int BitMatrix::rank() const
{
    BitEchelon e(ncols);
    for (auto& r : rows)
        e.insert(r);
    return e.rank();
}

std::vector<BitVec> BitMatrix::nullspace() const
{
    BitEchelon e(ncols);
    for (auto& r : rows)
        e.insert(r);
    e.make_reduced();
    std::vector<char> is_piv(std::size_t(ncols), 0);
    for (int p : e.pivots())
        is_piv[std::size_t(p)] = 1;
    std::vector<BitVec> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[std::size_t(f)])
            continue;
        BitVec x(ncols);
        x.set(f);
        for (int r = 0; r < e.rank(); ++r)
            if (e.rows()[std::size_t(r)].get(f))
                x.set(e.pivots()[std::size_t(r)]);
        basis.push_back(std::move(x));
    }
    return basis;
}

BitMatrix BitMatrix::transpose() const
{
    BitMatrix t(ncols, nrows);
    for (int i = 0; i < nrows; ++i)
        for (int j = rows[std::size_t(i)].next(0); j >= 0; j = rows[std::size_t(i)].next(j + 1))
            t.rows[std::size_t(j)].set(i);
    return t;
}

BitVec BitMatrix::apply(const BitVec& x) const
{
    BitVec y(nrows);
    for (int i = 0; i < nrows; ++i)
        if (rows[std::size_t(i)].dot(x))
            y.set(i);
    return y;
}

std::vector<BitVec> kernel_of_images(const std::vector<BitVec>& images, int target_dim)
{
    int n = int(images.size());
    BitEchelon e(target_dim, n);
    for (int i = 0; i < n; ++i)
        e.insert(images[std::size_t(i)], i);
    return e.kernel();
}

}
