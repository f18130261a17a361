#pragma once

#include "mlie/algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mlie {

struct ValidationReport {
    bool ok = true;
    bool alternation = true;
    bool jacobi = true;
    bool grading = true;
    std::vector<std::string> violations; // first few only
    std::int64_t triples_checked = 0;
};

ValidationReport validate(const Algebra& g, int max_reported = 8);

Subspace derived_subalgebra(const Algebra& g);
Subspace center(const Algebra& g);
/// [A, B] spanned by brackets of basis vectors.
Subspace bracket_span(const Algebra& g, const Subspace& A, const Subspace& B);
bool is_subalgebra(const Algebra& g, const Subspace& s);
bool is_ideal(const Algebra& g, const Subspace& s);
Subspace ideal_generated(const Algebra& g, const std::vector<Vec>& seeds);
Subspace ideal_generated(const Algebra& g, const Vec& seed);
Subspace subalgebra_generated(const Algebra& g, const std::vector<Vec>& seeds);

/// Algebra structure on a subalgebra, basis = s.basis(). Labels of unit
/// basis vectors are kept, other vectors are written out.
Algebra restrict_to(const Algebra& g, const Subspace& s);

struct Quotient {
    Algebra algebra;
    std::vector<int> complement; // basis indices of g representing the quotient basis
    /// Image of a vector of g in the quotient.
    Vec project(const Vec& v) const;
    Subspace ideal;
};
Quotient quotient(const Algebra& g, const Subspace& ideal);

Algebra direct_sum(const Algebra& a, const Algebra& b);

enum class Simplicity { simple, ideal_witness, probable_simple };
struct SimplicityResult {
    Simplicity verdict = Simplicity::simple;
    Subspace witness;       // proper nonzero ideal when verdict == ideal_witness
    std::int64_t seeds = 0; // number of spinning runs
    std::string to_string() const;
};
SimplicityResult simplicity_check(const Algebra& g, std::uint64_t random_seeds = 1000, std::uint64_t rng_seed = 0);

/// A linear map given by the images of the source basis vectors.
struct LinearMap {
    std::vector<Vec> images;
    Mat matrix(const Field& F, int target_dim) const; // columns are images
};

bool is_homomorphism(const Algebra& src, const Algebra& dst, const LinearMap& m, std::string* why = nullptr);
bool is_isomorphism(const Algebra& src, const Algebra& dst, const LinearMap& m, std::string* why = nullptr);

int derivation_dim(const Algebra& g);

struct Fingerprint {
    int dim = 0;
    std::vector<int> derived_series;
    std::vector<int> lower_central;
    int center = 0;
    int derivations = 0;
    std::vector<std::vector<int>> weights; // sorted torus weights, empty when ungraded
    bool operator==(const Fingerprint& o) const;
    std::string first_difference(const Fingerprint& o) const;
};
Fingerprint fingerprint(const Algebra& g, bool with_weights = false);

enum class IsoStatus { found, distinguished, exhausted, unsupported };
struct IsoResult {
    IsoStatus status = IsoStatus::exhausted;
    LinearMap map;
    std::string reason;
    std::int64_t nodes = 0;
    std::string status_name() const;
};
/// Fingerprint comparison followed by backtracking over generator images.
IsoResult search_isomorphism(const Algebra& a, const Algebra& b, std::int64_t budget = 2'000'000);

/// Graded isomorphism search: images of homogeneous generators are restricted
/// to the component of matching degree (degrees compared after scaling).
IsoResult search_graded_isomorphism(const Algebra& a, const std::vector<int>& deg_a, const Algebra& b,
                                    const std::vector<int>& deg_b, std::int64_t budget = 2'000'000);


struct FormReport {
    bool symmetric = true;
    bool invariant = true;
    int rank = 0;
    bool nondegenerate() const { return rank_full; }
    bool rank_full = false;
};
FormReport check_invariant_form(const Algebra& g, const Mat& K);

}
