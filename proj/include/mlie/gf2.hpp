#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace mlie {

/// Dense bit vector over GF(2), 64 coordinates per word.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int n) : n_(n), w_(std::size_t(n + 63) / 64, 0) {}

    int size() const { return n_; }
    int words() const { return int(w_.size()); }
    bool get(int i) const { return w_[std::size_t(i) >> 6] >> (i & 63) & 1; }
    void set(int i) { w_[std::size_t(i) >> 6] |= std::uint64_t{1} << (i & 63); }
    void clear(int i) { w_[std::size_t(i) >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void flip(int i) { w_[std::size_t(i) >> 6] ^= std::uint64_t{1} << (i & 63); }
    void assign(int i, bool v)
    {
        if (v)
            set(i);
        else
            clear(i);
    }

    BitVec& operator^=(const BitVec& o)
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            w_[i] ^= o.w_[i];
        return *this;
    }
    /// xor of o restricted to words >= from (caller guarantees lower words of o are zero)
    void xor_from(const BitVec& o, int from_word)
    {
        for (std::size_t i = std::size_t(from_word); i < w_.size(); ++i)
            w_[i] ^= o.w_[i];
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    bool is_zero() const
    {
        for (auto x : w_)
            if (x)
                return false;
        return true;
    }
    int popcount() const
    {
        int c = 0;
        for (auto x : w_)
            c += std::popcount(x);
        return c;
    }
    /// lowest set index >= from, or -1
    int next(int from = 0) const
    {
        if (from >= n_)
            return -1;
        std::size_t q = std::size_t(from) >> 6;
        std::uint64_t x = w_[q] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (x)
                return int(q * 64) + std::countr_zero(x);
            if (++q >= w_.size())
                return -1;
            x = w_[q];
        }
    }
    std::vector<int> support() const
    {
        std::vector<int> s;
        for (int i = next(0); i >= 0; i = next(i + 1))
            s.push_back(i);
        return s;
    }
    bool dot(const BitVec& o) const
    {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1;
    }
    std::uint64_t word(int i) const { return w_[std::size_t(i)]; }
    std::uint64_t& word(int i) { return w_[std::size_t(i)]; }
    bool operator<(const BitVec& o) const;

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Incremental row echelon form over GF(2). Each stored row has its pivot
/// at its lowest set column and no set bits below it. Optional tracking
/// records which inserted vectors were combined into each row.
class BitEchelon {
public:
    BitEchelon() = default;
    explicit BitEchelon(int ncols, int ntrack = 0) : ncols_(ncols), ntrack_(ntrack) {}

    int ncols() const { return ncols_; }
    int rank() const { return int(rows_.size()); }
    const std::vector<BitVec>& rows() const { return rows_; }
    const std::vector<BitVec>& tracks() const { return tracks_; }
    const std::vector<int>& pivots() const { return piv_; }

    /// Reduce v (and its track t if tracking) against the stored rows.
    void reduce(BitVec& v) const;
    void reduce(BitVec& v, BitVec& t) const;
    bool contains(const BitVec& v) const;

    /// Insert v; returns true if it was independent. With tracking, the track
    /// of v is the unit vector `id` (ignored otherwise). When v reduces to 0
    /// and tracking is on, the dependency is appended to `kernel()`.
    bool insert(const BitVec& v, int id = -1);
    bool insert_tracked(BitVec v, BitVec t);
    const std::vector<BitVec>& kernel() const { return kernel_; }

    /// Back-substitute so that pivot columns appear in exactly one row.
    void make_reduced();
    /// Express v (which must lie in the span) as combination of the tracks.
    bool solve(const BitVec& v, BitVec& combo) const;

private:
    int find_slot(int pivot) const;

    int ncols_ = 0;
    int ntrack_ = 0;
    std::vector<BitVec> rows_;
    std::vector<BitVec> tracks_;
    std::vector<int> piv_;
    std::vector<BitVec> kernel_;
};

/// Matrix with rows over GF(2); rows are equations on the column variables.
struct BitMatrix {
    int nrows = 0, ncols = 0;
    std::vector<BitVec> rows;

    BitMatrix() = default;
    BitMatrix(int r, int c) : nrows(r), ncols(c), rows(std::size_t(r), BitVec(c)) {}

    int rank() const;
    /// Basis of {x : Mx = 0}.
    std::vector<BitVec> nullspace() const;
    BitMatrix transpose() const;
    BitVec apply(const BitVec& x) const;
};

/// Kernel of the linear map whose images of the unit vectors are given.
std::vector<BitVec> kernel_of_images(const std::vector<BitVec>& images, int target_dim);

}
