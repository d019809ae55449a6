#ifndef DYNGCD_CLASSIFY_HPP
#define DYNGCD_CLASSIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dyngcd/bivariate.hpp"
#include "dyngcd/heights.hpp"
#include "dyngcd/polynomial.hpp"
#include "dyngcd/rational_map.hpp"

namespace dyngcd {

/* Distinct points of f^{-1}(alpha) in P^1(Qbar), counted without root finding:
 * the degree of the radical of  b F1 - a F2  plus one when infinity is a root. */
struct Fiber {
    int distinct = 0;
    /// The unique preimage when distinct == 1 (always rational).
    std::optional<ProjPoint> single;
};
Fiber preimage_fiber(const RationalMap& f, const ProjPoint& alpha);

/// Backward orbit of alpha finite.  Throws DomainError when deg f < 2.
bool is_exceptional(const RationalMap& f, const ProjPoint& alpha);

struct PreperiodicBudget {
    int max_steps = 256;
    std::size_t max_digits = 1'000'000;
    double tol = 1e-8;
};

/// Exact cycle detection, then the height escape bound, then a canonical
/// height bracket.  Throws Indeterminate when none decides.
bool is_preperiodic(const RationalMap& f, const ProjPoint& pt, const PreperiodicBudget& budget = {});

/// Non-parallel prime-exponent vectors (sign ignored).  +-1 counts as
/// dependent.  Throws DomainError on a zero argument.
bool mult_indep(const Rational& a, const Rational& b);

struct SpecialForm {
    enum class Tag { PowerConjugate, ChebyshevConjugate, NotSpecial };
    Tag tag = Tag::NotSpecial;
    /// sigma with sigma f sigma^{-1} = sign * x^d or sign * T_d, verified exactly.
    std::optional<Mobius> witness;
    int sign = 1;
    /// Set when f matches a family only after an irrational rescaling, which
    /// this search does not construct.
    bool caveat = false;
    std::string note;
};
std::string to_string(SpecialForm::Tag tag);

/// T_d in the normalization T_d(x + 1/x) = x^d + x^{-d}.
Polynomial chebyshev(int d);

/// Throws DomainError when deg < 2.
SpecialForm special_form(const Polynomial& p);

/// Least k in [1, k_max] with h o f^k = f^k o h.  Throws BudgetExceeded when
/// deg(f)^k deg(h) passes the symbolic budget.
std::optional<int> commutes(const Polynomial& h, const Polynomial& f, int k_max, const SymbolicBudget& budget = {});

/* The commuting-graph condition on pair data: h o f^k = f^k o h together
 * with h(a) = b and h(alpha) = beta. */
struct CommutingWitness {
    std::optional<int> k;
    bool maps_a_to_b = false;
    bool maps_alpha_to_beta = false;
    bool holds() const { return k && maps_a_to_b && maps_alpha_to_beta; }
};
CommutingWitness commuting_graph(const Polynomial& h, const Polynomial& f, const Rational& a, const Rational& b,
                                 const Rational& alpha, const Rational& beta, int k_max,
                                 const SymbolicBudget& budget = {});

struct CurveRelation {
    /// Primitive integer polynomial vanishing at every tested orbit point.
    BivariatePolynomial poly;
    /// Bound on the exponent of each variable in the search.
    int degree_bound = 0;
    int points_tested = 0;
};

struct ProbeOptions {
    std::uint64_t seed = 1;
    /// Rows required beyond the number of monomials at a stage.
    int margin = 2;
    int primes = 3;
    /// Skip the exact stage; a rank-deficient screen is then reported as
    /// `screen_deficient` with no relation.
    bool modular_only = false;
    OrbitBudget budget{};
};

struct GenericityProbe {
    std::optional<CurveRelation> relation;
    /// Largest total degree whose monomial set was screened.
    int max_total_degree_tested = 0;
    int points_used = 0;
    std::vector<std::uint64_t> primes;
    /// Orbit budget ran out before the exact check finished.
    bool truncated = false;
    bool screen_deficient = false;
};

/* Searches for a polynomial relation P(x, y) = 0 with deg_x, deg_y <= deg_max
 * along (f^n(a), g^n(b)), n = 1..n_points, by total degree t = 1, 2, ....
 * A stage runs only when n_points >= #monomials + margin.  Each stage is
 * screened modulo random primes near 2^61 (orbits iterated mod p); full rank
 * at any prime rules the stage out, otherwise the kernel is computed exactly
 * and verified before being returned. */
GenericityProbe probe_genericity(const RationalMap& f, const RationalMap& g, const ProjPoint& a, const ProjPoint& b,
                                 int deg_max, int n_points, const ProbeOptions& opts = {});

}  // namespace dyngcd

#endif
