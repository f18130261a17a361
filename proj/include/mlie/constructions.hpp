#pragma once

#include "mlie/algebra.hpp"
#include "mlie/divpow.hpp"
#include "mlie/liealg.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mlie {

/// Symmetric bilinear form over GF(2) on GF(2)^n, rows stored as bitmasks.
/// Vectors of GF(2)^n are bitmasks with coordinate i at bit i.
struct BilinearForm {
    int n = 0;
    std::vector<std::uint64_t> rows;

    /// Alternate form pairing coordinate i with m+i (n = 2m).
    static BilinearForm Pi(int n);
    /// Identity matrix (non-alternate).
    static BilinearForm I(int n);
    static BilinearForm from_rows(std::vector<std::uint64_t> rows);

    int operator()(std::uint64_t u, std::uint64_t v) const;
    /// The functional B_u = B(u, .) as a bitmask.
    std::uint64_t functional(std::uint64_t u) const;
    bool symmetric() const;
    bool alternate() const;
    bool nondegenerate() const;
};

/// Quadratic form Q(u) = sum_i u_i d_i + sum_{i<j} u_i u_j B_ij with polar form B.
struct QuadraticForm {
    BilinearForm B;
    std::uint64_t diag = 0; // Q(e_i)

    int dim() const { return B.n; }
    int operator()(std::uint64_t u) const;
    /// Q_0 = sum u_i u_{m+i}; Q_1 = u_1 + u_{m+1} + Q_0.
    static QuadraticForm standard(int m, int A);
    /// Q(u+v) + Q(u) + Q(v) == B(u,v) for all u, v.
    bool polar_consistent() const;
};

int arf_invariant(const QuadraticForm& Q);

/// Set of nonzero (or, for Kap_{4,B}, all) vectors with the J-system property.
struct JSystem {
    BilinearForm B;
    std::vector<std::uint64_t> gamma; // sorted

    bool contains(std::uint64_t u) const;
    /// u, v in gamma distinct with B(u,v) = 1 implies u+v in gamma.
    bool closed(std::string* why = nullptr) const;
};

/// g_Gamma: basis e_u (u in gamma, in the stored order), [e_u,e_v] = B(u,v) e_{u+v}.
/// Graded by (Z/2)^n through u.
Algebra build_jsystem_algebra(const JSystem& J, const Field& F = Field::gf2());
std::string vector_label(std::uint64_t u, int n);

enum class Variant { full, derived, derived_mod_center };

Algebra derived_algebra(const Algebra& g);
Algebra mod_center(const Algebra& g);
Algebra apply_variant(const Algebra& g, Variant v);

using FunBracket = std::function<DPoly(const DPoly&, const DPoly&)>;
using FunWeight = std::function<std::vector<int>(Mono)>;

/// Algebra on the span of the given monomials with the bracket evaluated on
/// divided-power functions. With mod_constants the constant term of every
/// bracket is dropped (the basis must not contain 1).
Algebra function_algebra(const Field& F, ShapePtr S, const std::vector<Mono>& basis, const FunBracket& br, bool mod_constants,
                         const FunWeight& weight = {}, const std::vector<int>& moduli = {});

/// Variable names: p,q for two variables, otherwise p1..pm,q1..qm (Pi) or x1..xn (I).
ShapePtr poisson_shape(const std::vector<int>& N, bool pi);

/// [f,g] = sum B_ij d_i f d_j g on O[n;N]; B must be alternate.
Algebra build_poisson(const BilinearForm& B, const std::vector<int>& N, const Field& F = Field::gf2());
/// Functions modulo constants; derived variant takes the derived subalgebra.
/// For non-alternate B the bracket is well defined only modulo constants.
Algebra build_hamiltonian(const BilinearForm& B, const std::vector<int>& N, Variant v = Variant::full,
                          const Field& F = Field::gf2());
/// Functions f of h_I(n;N) with sum_i d_i^2 f = 0.
Algebra build_div_free_hI(int n, const std::vector<int>& N, Variant v = Variant::full, const Field& F = Field::gf2());

/// Jurman algebra j(g,h): basis Y_j(t), t in {0,1}, j = -1..2^(g+h)-3, ordered Y_j(0) then Y_j(1).
Algebra build_jurman(int g, int h, const Field& F = Field::gf2());
int jurman_index(int g, int h, int j, int t);
/// Coefficient of [Y_i(s), Y_j(t)] and the target index i+j+st(1-eta).
int jurman_coefficient(int g, int h, int i, int s, int j, int t, int* target = nullptr);

/// a(2;g,h) on O[2;(g+h,1)] with variables x, y.
Algebra build_a2gh(int g, int h, Variant v = Variant::full, const Field& F = Field::gf2());

enum class PairKind { Pi, I };
/// Multi-pair generalization on O[2k; (g_i+h_i, 1)...]. The Pi bracket lives on
/// all functions; the I bracket on functions modulo constants.
Algebra build_multipair(PairKind kind, const std::vector<std::pair<int, int>>& pairs, Variant v = Variant::full,
                        const Field& F = Field::gf2());

enum class KapFamily { K1, K2, K3, K4A, K4B };
struct KapSpec {
    KapFamily family = KapFamily::K2;
    int n = 4; // dim V (K1, K3) or 2m (K2, K4A, K4B)
    int arf = 0; // K4A only
};
KapSpec parse_kap_family(const std::string& name, int n, int arf);
/// J-system behind the Gamma-based families (K1, K2, K4A).
JSystem kaplansky_jsystem(const KapSpec& s);
Algebra build_kaplansky(const KapSpec& s, const Field& F = Field::gf2());

/// Kap_{4,B}(2m) on O[2m;1_s] with variables p1..pm,q1..qm (p,q for m = 1).
Algebra build_kap4b(int m, const Field& F = Field::gf2());
/// f_u = prod (1+p_i)^{u_i} (1+q_i)^{u_{m+i}} as a vector in the basis of build_kap4b.
Vec kap4b_fu(int m, std::uint64_t u, const Field& F = Field::gf2());
/// Kernel of the operator singling out Kap_{4,A}(2m) inside Kap_{4,B}(2m).
Subspace build_kap4_subalgebra(int m, int A, const Field& F = Field::gf2());
/// Functions of po_Pi(2m;1_s) with sum_{i in range} d_{p_i} d_{q_i} f = 0.
Subspace harmonic_subspace(int m, const std::vector<int>& range, const Field& F = Field::gf2());
/// harmonic_subspace as a subalgebra of build_poisson(Pi(2m), 1_s).
Algebra build_harmonic_po(int m, const std::vector<int>& range, const Field& F = Field::gf2());

/// 4-dim algebra with basis e00,e01,e10,e11 (e_{i,j}), optionally deformed by hbar.
Algebra build_tensor_example(Elt hbar, bool deformed, const Field& F = Field::gf2());

enum class ClassicalKind { gl, sl, psl, oI, oPi };
/// oPi uses the antidiagonal form (alternate for even n).
Algebra build_classical(ClassicalKind kind, int n, Variant v = Variant::full, const Field& F = Field::gf2());

/// L (x) O[m;1_s] with [l (x) a, l' (x) b] = [l,l'] (x) ab.
Algebra tensor_with_O(const Algebra& L, int m, const std::vector<std::string>& names = {});

/// Abelian algebra of the given dimension.
Algebra build_abelian(int dim, const Field& F = Field::gf2());

}
