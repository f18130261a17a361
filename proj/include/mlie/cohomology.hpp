#pragma once

#include "mlie/cochain.hpp"
#include "mlie/grading.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace mlie {

/// (d1 c)(x,y) = [c(x),y] + [x,c(y)] + c([x,y]); column i of c is c(e_i).
Cochain2 d1(const Algebra& g, const Mat& c);
/// (d2 c)(x,y,z) = [x,c(y,z)] + [y,c(z,x)] + [z,c(x,y)] + c([x,y],z) + c([y,z],x) + c([z,x],y).
Cochain3 d2(const Algebra& g, const Cochain2& c);
/// (a o b)(x,y,z) = a(b(x,y),z) + a(b(y,z),x) + a(b(z,x),y).
Cochain3 circle(const Algebra& g, const Cochain2& a, const Cochain2& b);
bool is_cocycle(const Algebra& g, const Cochain2& c);

/// Block of cochains of one full weight (all components of the grading).
struct H2Block {
    std::vector<int> weight; // full weight; empty for ungraded algebras
    int dim_c1 = 0, dim_c2 = 0;
    int dim_z = 0, dim_b = 0, dim_h = 0;
    std::vector<Cochain2> representatives;
};

struct H2Basis {
    WeightMode mode = WeightMode::z;
    std::vector<Cochain2> representatives;
    std::vector<std::vector<int>> weights; // in the requested mode
    int dim_z = 0, dim_b = 0, dim_h = 0;
    std::vector<H2Block> blocks;
};

struct H2Options {
    WeightMode mode = WeightMode::z;
    std::optional<std::vector<int>> weight; // in the requested mode
    std::int64_t budget = 20'000'000;       // max entries of one block matrix
};

/// Cocycles modulo coboundaries, weight block by weight block.
H2Basis compute_h2(const Algebra& g, const H2Options& opt = {});

struct H1Dims {
    int z = 0, b = 0, h = 0;
};
H1Dims compute_h1_dim(const Algebra& g);

/// Solve d1(b) = c; nullopt when c is not a coboundary.
std::optional<Mat> coboundary_primitive(const Algebra& g, const Cochain2& c);
bool is_coboundary(const Algebra& g, const Cochain2& c);

/// Split a cochain into its full-weight components.
std::vector<std::pair<std::vector<int>, Cochain2>> split_by_weight(const Algebra& g, const Cochain2& c);

/// Cocycles of one full weight whose coefficients at the given terms are
/// prescribed, i.e. completions of a partially printed cocycle.
struct Completion {
    bool consistent = false;         // some cocycle matches the printed terms
    bool non_coboundary = false;     // and some such cocycle is not a coboundary
    std::optional<Cochain2> example; // a matching cocycle, non-coboundary when possible
    int free_dim = 0;                // dimension of the affine family
    std::vector<Cochain2> directions; // homogeneous solutions spanning that family
};
Completion complete_printed(const Algebra& g, const Cochain2& printed, std::int64_t budget = 20'000'000);

/// Full weight of a cochain whose terms all share one full weight; nullopt
/// for inhomogeneous cochains, empty for ungraded algebras or zero cochains.
std::optional<std::vector<int>> full_weight_of(const Algebra& g, const Cochain2& c);

/// Cohomology of one full-weight block, with coordinates of classes.
class H2Classes {
public:
    H2Classes(const Algebra& g, const std::vector<int>& full_weight, std::int64_t budget = 20'000'000);
    const H2Block& block() const { return block_; }
    int dim() const { return block_.dim_h; }
    /// Coordinates of the class of c w.r.t. block().representatives; nullopt
    /// when c is not a cocycle supported in this block.
    std::optional<Vec> coords(const Cochain2& c) const;
    Cochain2 representative(const Vec& coords) const;

private:
    Field F_;
    int n_ = 0;
    std::vector<std::array<int, 3>> cells_;
    std::unordered_map<std::int64_t, int> index_;
    Subspace cycles_;
    Echelon basis_; // coboundary basis, then representatives, tracked
    int nb_ = 0;
    H2Block block_;
};

/// Independent coboundaries d1(e_i -> e_k) of one full-weight block.
std::vector<Cochain2> coboundary_generators(const Algebra& g, const std::vector<int>& full_weight);

/// Solve d2(x) = t weight block by weight block; nullopt when t is not a coboundary.
std::optional<Cochain2> d2_preimage(const Algebra& g, const Cochain3& t, std::int64_t budget = 20'000'000);

}
