#pragma once

#include "mlie/constructions.hpp"
#include "mlie/liealg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mlie {

/// g_Gamma (+) V* with [alpha, e_u] = alpha(u) e_u, alpha^[2] = alpha, e_u^[2] = B_u.
/// Basis: e_u in the order of J.gamma, then the coordinate functionals a1..an.
struct ClosureAlgebra {
    Algebra algebra;
    JSystem J;
    int base_dim = 0;
    std::vector<Vec> squares; // x^[2] of every basis element

    int index_of(std::uint64_t u) const; // -1 when u is not in gamma
    int functional_index(int i) const { return base_dim + i; }
    /// B_u = B(u, .) as a vector of the closure.
    Vec functional(std::uint64_t u) const;
};

/// Needs a J-system with an alternate form; throws otherwise.
ClosureAlgebra restricted_closure(const JSystem& J, const Field& F = Field::gf2());
/// Kap_2(2m) or Kap_{4,A}(2m); Kap_{4,0}(2) is rejected.
ClosureAlgebra restricted_closure(const KapSpec& s, const Field& F = Field::gf2());
/// [x^[2], y] = [x,[x,y]] for basis x, y, and Jacobi.
bool check_restricted(const ClosureAlgebra& c, std::string* why = nullptr);

struct SuperAlgebra {
    std::string name;
    Algebra algebra;
    std::vector<int> parity;  // 0 even, 1 odd, per basis element
    std::vector<Vec> squares; // x^[2] of odd basis elements, empty for even ones

    int dim_even() const;
    int dim_odd() const;
    bool is_odd(const Vec& x) const;
    bool is_even(const Vec& x) const;
    /// (sum a_i x_i)^[2] = sum a_i^2 x_i^[2] + sum_{i<j} a_i a_j [x_i, x_j] for odd x.
    Vec square(const Vec& x) const;
    nlohmann::ordered_json to_json() const;
};

struct SuperCheck {
    bool ok = true;
    bool parity_rules = true; // [ev,ev], [ev,od], [od,od] land in the right part
    bool jacobi = true;
    bool squaring = true;     // [x^[2], y] = [x,[x,y]] for odd basis x
    std::vector<std::string> violations;
};
SuperCheck check_super(const SuperAlgebra& s, int max_reported = 8);

/// Parity p(e_u) = B(v, u), V* even; throws for v = 0.
SuperAlgebra superize_linear(const ClosureAlgebra& c, std::uint64_t v);
/// Closure of Kap_2(2m): even part Kap_{4,A}(2m) (+) V* with Q(u) = 1, odd part Q(u) = 0.
/// Throws when Q does not polarize to the form of the J-system.
SuperAlgebra superize_nonlinear(const ClosureAlgebra& kap2, const QuadraticForm& Q);

enum class SuperKind { LS2, S2, S4 };
struct SuperSpec {
    SuperKind kind = SuperKind::LS2;
    int m = 2;
    int A = 0;           // Arf invariant (S2, S4)
    int eps = 0;         // Q(v) (S4)
    std::uint64_t v = 1; // parity vector (LS2)
};
/// v_{eps,A}; nullopt where it does not exist (m = 1 with eps != A).
std::optional<std::uint64_t> kap4_parity_vector(int m, int A, int eps);
SuperAlgebra build_superization(const SuperSpec& s, const Field& F = Field::gf2());
/// The specs of all seven families that exist for this m.
std::vector<SuperSpec> superization_families(int m);
std::string superization_name(const SuperSpec& s);

/// Linear map matches brackets, parities and squares.
bool is_super_isomorphism(const SuperAlgebra& a, const SuperAlgebra& b, const LinearMap& m, std::string* why = nullptr);

/// Search for M: V -> V preserving B (or Q when given) with M v = v2, and the
/// induced isomorphism e_u -> e_{Mu}, phi -> phi o M^{-1} between the two
/// linear superizations.
struct SuperEquivalence {
    bool found = false;
    bool exhaustive = true;          // false when the budget ran out
    std::vector<std::uint64_t> M;    // images of the coordinate vectors
    LinearMap map;                   // verified super-isomorphism when found
    std::int64_t nodes = 0;
    std::string note;
};
SuperEquivalence superization_equivalence(const ClosureAlgebra& c, const std::optional<QuadraticForm>& Q, std::uint64_t v,
                                          std::uint64_t v2, std::int64_t budget = 5'000'000);

/// Pair u, v of nonzero vectors on which u -> Q(u) + 1 fails additivity.
std::optional<std::pair<std::uint64_t, std::uint64_t>> nonlinearity_witness(const QuadraticForm& Q);

/// Restrict KapS_2 built from Q to the span of e_u with Q2(u) = 1 and V*, and
/// compare with the linear superization given by Q + Q2.
struct NonlinearReduction {
    bool additive = false;       // Q + Q2 is a linear function
    bool trivial = false;        // Q = Q2: everything even
    std::uint64_t v = 0;         // Q(u) + Q2(u) = B(v, u)
    bool subalgebra = false;     // the span is closed in KapS_2
    bool parities_match = false; // and carries the parity of superize_linear(v)
    std::string note;
};
NonlinearReduction nonlinear_reduction_check(int m, const QuadraticForm& Q, const QuadraticForm& Q2);

}
