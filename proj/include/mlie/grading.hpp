#pragma once

#include "mlie/algebra.hpp"
#include "mlie/cochain.hpp"
#include "mlie/liealg.hpp"

#include <string>
#include <vector>

namespace mlie {

/// Descending chain L_{-depth} ⊃ ... ⊃ L_0 ⊃ L_1 ⊃ ... ending at the first
/// layer that equals its successor.
struct Filtration {
    std::vector<Subspace> layers; // layers[k] = L_{k - depth}
    int depth = 0;
    bool maximality_checked = false;
    bool l0_maximal = false;

    int lowest() const { return -depth; }
    int highest() const { return int(layers.size()) - 1 - depth; }
    const Subspace& layer(int i) const { return layers[std::size_t(i + depth)]; }
    std::vector<int> dims() const;
};

/// Weisfeiler filtration of (g, L0). L_{-1} is the smallest L0-submodule
/// generated by one vector outside L0 (first candidate in enumeration order).
Filtration weisfeiler_filtration(const Algebra& g, const Subspace& L0);
/// Same with an explicitly supplied L_{-1}.
Filtration weisfeiler_filtration(const Algebra& g, const Subspace& L0, const Subspace& Lm1);
/// [L_i, L_j] ⊆ L_{i+j} for all stored layers.
bool check_filtration(const Algebra& g, const Filtration& f, std::string* why = nullptr);

struct Graded {
    Algebra algebra;         // Z-graded by the layer index
    std::vector<Vec> lifts;  // representative in g of every basis element
    std::vector<int> degree; // layer index of every basis element
};
Graded associated_graded(const Algebra& g, const Filtration& f);

/// Span of Y_i(0), Y_j(1) with i, j >= 0 inside build_jurman(g, h).
Subspace jurman_L0(const Algebra& jur, int g, int h);
/// Y_i(s) -> p^(b) q^(2a+1-s) with i = a 2^g - 1 - s + b, as a map from
/// the associated graded of j(g,h) to h'_Pi(2; g, h+1).
LinearMap jurman_graded_map(const Graded& gr, const Algebra& target, int g, int h);

/// Which weight components a cochain weight is read in: all of them, the
/// components taken modulo 2, or the integer (outer) components.
enum class WeightMode { z, mod2, outer };
WeightMode parse_weight_mode(const std::string& s);
std::string weight_mode_name(WeightMode m);
std::vector<int> select_components(const Grading& gr, WeightMode m);

/// wt(x) - wt(y) - wt(z) for the term x (x) d(y)^d(z), full arity, normalized.
std::vector<int> term_weight(const Algebra& g, int x, int y, int z);
/// Weight of a homogeneous cochain in the requested mode; throws with two
/// offending terms otherwise. The zero cochain has the zero weight.
std::vector<int> cochain_weight(const Algebra& g, const Cochain2& c, WeightMode mode);
std::vector<int> project_weight(const Grading& gr, const std::vector<int>& w, WeightMode mode);

}
