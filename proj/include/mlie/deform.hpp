#pragma once

#include "mlie/cochain.hpp"
#include "mlie/cohomology.hpp"
#include "mlie/constructions.hpp"
#include "mlie/liealg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mlie {

/// Bracket [x,y] + sum_P t^P c_P(x,y) in formal parameters t_1..t_r over GF(2).
struct DeformFamily {
    struct Piece {
        std::vector<int> power; // exponent of every parameter, not all zero
        Cochain2 c;
    };
    Algebra base;
    std::vector<std::string> params;
    std::vector<Piece> pieces;

    /// Coefficient of e_k in [e_i, e_j] as a polynomial (one parameter only).
    Poly coefficient(int i, int j, int k) const;
    /// Substitute parameter values from F (the base is lifted to F).
    Algebra specialize(const Field& F, const std::vector<Elt>& values) const;
    Algebra specialize(const Field& F, Elt value) const { return specialize(F, std::vector<Elt>{value}); }
};

/// Same structure constants over a larger field of characteristic 2.
Algebra lift_field(const Algebra& g, const Field& F);
Cochain2 lift_field(const Cochain2& c, const Field& F);

/// [x,y] + h c(x,y); throws when c is not a cocycle.
DeformFamily deform_bracket(const Algebra& g, const Cochain2& c, const std::string& param = "h");
/// [x,y] + sum_k h^k c_k(x,y) with c_1 first.
DeformFamily deform_series(const Algebra& g, const std::vector<Cochain2>& cs, const std::string& param = "h");
/// [x,y] + sum_i t_i c_i(x,y), one parameter per cocycle.
DeformFamily deform_multi(const Algebra& g, const std::vector<Cochain2>& cs, const std::vector<std::string>& params);

enum class DeformVerdict { linear_global, obstructed, needs_correction, not_cocycle };
std::string verdict_name(DeformVerdict v);

/// Jacobiator of a family expanded by monomials in the parameters.
struct ObstructionReport {
    std::map<std::vector<int>, Cochain3> coefficients; // nonzero coefficients only
    DeformVerdict verdict = DeformVerdict::linear_global;
    std::vector<int> first_nonzero; // lowest total degree nonzero monomial
    bool class_nonzero = false;     // first nonzero coefficient is not a coboundary
};
ObstructionReport obstruction_poly(const DeformFamily& f, std::int64_t budget = 20'000'000);

/// Order-by-order solution of d2(c_n) = sum_{i+j=n} c_i o c_j starting at c_1 = c.
struct Integration {
    bool integrated = false;
    int failed_order = 0;          // order with no solution (0 when integrated)
    std::vector<Cochain2> series;  // c_1, c_2, ... up to the last nonzero term
    bool linear() const { return integrated && series.size() == 1; }
};
Integration integrate(const Algebra& g, const Cochain2& c, int max_order = 16, std::int64_t budget = 20'000'000);

/// c + d1(b) for b ranging over the 1-cochains of c's weight block (all
/// combinations of at most max_bits independent coboundaries, in Gray order).
std::vector<Cochain2> cohomologous_cocycles(const Algebra& g, const Cochain2& c, int max_bits = 14);
/// A cohomologous cocycle c' with c' o c' = 0, i.e. a linear global deform.
std::optional<Cochain2> linear_representative(const Algebra& g, const Cochain2& c, int max_bits = 14);

/// Class [c o c] of a cocycle is zero.
bool square_class_vanishes(const Algebra& g, const Cochain2& c, std::int64_t budget = 20'000'000);

/// Nilpotent operator candidate for semi-triviality certificates.
struct NamedOperator {
    std::string name;
    Mat op;
};
/// d_i^(2^s) on an algebra of divided-power functions (labels are monomials);
/// constant terms of images are dropped, operators leaving the basis are skipped.
std::vector<NamedOperator> derivative_operators(const Algebra& g, const ShapePtr& S);

struct Certificate {
    bool found = false;
    std::string strategy; // "F=id+sD", "F^-1", "search", "explicit"
    std::string detail;   // operator name and the scalar s
    Field field;
    Elt hbar = 0;
    LinearMap map;        // deform at hbar -> base, verified
    std::vector<std::string> tried;
};
/// Specialize at hbar and look for an isomorphism to the base: first
/// F = id + sD with s in {sqrt(hbar), hbar} for the supplied operators, then search.
Certificate semitrivial_certificate(const DeformFamily& f, const Field& F, Elt hbar,
                                    const std::vector<NamedOperator>& ops, std::int64_t budget = 2'000'000);
/// The 4-dim example with the map e_{i,1} -> e_{i,1} + sqrt(hbar) e_{i,0}.
Certificate tensor_example_certificate(const Field& F, Elt hbar);

/// Conjugation of the bracket by F_s = id + sD for a nilpotent derivation D:
/// F_s^{-1}[F_s x, F_s y] = [x,y] + sum_{k>=0} s^{k+2} D^k [Dx, Dy].
struct ConjugatedFamily {
    bool derivation = false;
    bool nilpotent = false;
    bool leading_in_class = false; // [Dx,Dy] - c is a coboundary
    bool polynomial_in_h = false;  // only even powers of s occur (h = s^2)
    DeformFamily family;           // parameter s
    Certificate cert;              // F_s at s = sqrt(hbar), deform -> base
};
ConjugatedFamily conjugated_family_certificate(const Algebra& g, const NamedOperator& D, const Cochain2& c,
                                               const Field& F, Elt hbar);

struct JurmanDeformReport {
    int g = 0, h = 0;
    std::string cocycle_name;
    bool cocycle = false;
    bool non_coboundary = false;
    bool linear = false; // Jacobi holds identically in the parameter
    bool isomorphic = false;
    std::string method;  // how the isomorphism was found
    bool template_map_ok = false;
    std::string template_note;
    LinearMap map; // deform at h = 1 -> j(g,h)
};
JurmanDeformReport jurman_deform_check(int g, int h, std::int64_t budget = 2'000'000);

struct QuantizationReport {
    bool cocycle = false;
    bool non_coboundary = false;
    bool linear = false;
    bool fingerprints_agree = false;
    std::string fingerprint_note;
    IsoResult iso;
};
QuantizationReport quantization_deform_check(int a = 2, std::int64_t budget = 2'000'000);

/// Integrability of the H^2 classes compatible with one printed table entry.
struct ClassIntegrability {
    std::string name;
    std::vector<int> full_weight;
    int block_dim = 0;      // dim of the H^2 block of that weight
    int classes = 0;        // nonzero classes matching the printed terms
    int obstructed = 0;     // [c o c] is not a coboundary
    int not_integrated = 0; // order-by-order integration stopped
    bool consistent = false;
};
std::vector<ClassIntegrability> catalog_integrability(const std::string& table, std::int64_t budget = 20'000'000);

/// [f,g] = sum B_ij D_{alpha,i} f D_{alpha,j} g on O[n;N].
Algebra poisson_family(const BilinearForm& B, const std::vector<int>& N, Elt alpha, const Field& F);
/// f -> F_alpha(f) as a map from poisson_family(alpha) to po_B (alpha != 0).
LinearMap f_alpha_map(const Algebra& fam, const ShapePtr& S, Elt alpha);
/// Reindexing iso from poisson_family(alpha = 0) to po_B(n;1_s) (x) O[m;1_s].
struct ReindexResult {
    Algebra target;
    LinearMap map;
    bool isomorphism = false;
};
ReindexResult reindex_iso(const BilinearForm& B, const std::vector<int>& N, const Field& F);

struct Kap4bDeformReport {
    int m = 0;
    bool family_valid = false;         // Jacobi at the sampled parameter values
    bool quadratic_cocycle = false;
    bool quadratic_non_coboundary = false;
    bool linear_coboundary = false;
    bool family_at_one_matches = false; // family at h = 1 has Kap_{4,B} structure constants
    std::string notes;
};
Kap4bDeformReport kap4b_as_deform(int m);

/// Jurman brackets of all partitions K = g + h (g >= 2, h >= 1) on one space:
/// even-even and even-odd brackets are shared, odd-odd brackets get one
/// parameter per partition.
DeformFamily jurman_multi_family(int K);

}
