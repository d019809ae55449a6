#ifndef DYNGCD_HEIGHTS_HPP
#define DYNGCD_HEIGHTS_HPP

#include <initializer_list>
#include <vector>

#include "dyngcd/exact_arith.hpp"
#include "dyngcd/log_value.hpp"
#include "dyngcd/rational_map.hpp"
#include "dyngcd/real.hpp"

namespace dyngcd {

/// A deduplicated, sorted set of finite places.
class PlaceSet {
  public:
    PlaceSet() = default;
    /// Throws DomainError if an entry is not prime.
    PlaceSet(std::initializer_list<long> primes);
    explicit PlaceSet(const std::vector<Integer>& primes);

    const std::vector<Integer>& primes() const { return primes_; }
    bool contains(const Integer& p) const;
    bool empty() const { return primes_.empty(); }
    std::size_t size() const { return primes_.size(); }
    friend bool operator==(const PlaceSet&, const PlaceSet&) = default;

  private:
    std::vector<Integer> primes_;
};

/// Weil height of [x : y] in lowest terms: log max(|x|, |y|).
Real weil_height(const ProjPoint& pt, mpfr_prec_t prec = kDefaultPrecision);

/* Explicit constants for |h(f(P)) - d h(P)| <= C_f.
 *
 * With F = (F1, F2) the degree-d homogeneous lift and z a primitive integer
 * vector,
 *     -log lower_arch <= log||F(z)||_inf - d log||z||_inf <= log upper_arch
 * where upper_arch = max(sum |coeffs F1|, sum |coeffs F2|) and lower_arch
 * comes from the cofactor identities X^(2d-1) = A1 F1 + A2 F2, Y^(2d-1) =
 * B1 F1 + B2 F2 (sum of absolute coefficients).  The cofactors have common
 * denominator `delta`; at a prime p, min v_p(F(z)) <= v_p(delta), so only
 * primes dividing delta can lose height.
 */
struct DiscrepancyData {
    int degree = 0;
    Rational upper_arch;   // U
    Rational lower_arch;   // K
    Integer delta;         // common denominator of the cofactors
    /// C_f = max(log U, log K + log delta), rounded up.
    Real bound;
    /// log U and log K, rounded up.
    Real log_upper;
    Real log_lower;
};

/// Throws DomainError when deg f < 2.
DiscrepancyData discrepancy_data(const RationalMap& f, mpfr_prec_t prec = kDefaultPrecision);
Real discrepancy_bound(const RationalMap& f, mpfr_prec_t prec = kDefaultPrecision);

struct HeightEstimate {
    Real value;
    /// value - error_bound <= h^ <= value + error_bound.
    Real error_bound;
    int iterations_used = 0;
    /// Exact zero certified by an orbit that revisits a point.
    bool preperiodic = false;
};

struct HeightOptions {
    mpfr_prec_t precision = kDefaultPrecision;
    mpfr_prec_t max_precision = 1 << 15;
    int max_iterations = 256;
    /// Exact orbit steps spent looking for a cycle before the analytic route.
    int cycle_scan_steps = 64;
    std::size_t cycle_scan_digits = 200'000;
};

/// h(f^N(P)) / d^N with rigorous tail and rounding bounds.  error_bound <= tol.
/// Throws DomainError (deg < 2, tol <= 0) or HeightBudgetExceeded.
HeightEstimate canonical_height(const RationalMap& f, const ProjPoint& pt, double tol, const HeightOptions& opts = {});

class HeightBudgetExceeded : public BudgetExceeded {
  public:
    HeightBudgetExceeded(const std::string& what, HeightEstimate best, std::size_t reached)
        : BudgetExceeded(what, reached), best_(std::move(best)) {}
    const HeightEstimate& best() const { return best_; }

  private:
    HeightEstimate best_;
};

/* Generalized gcd heights.  v^+(0) is +infinity at every place, so a zero
 * argument hands the minimum to the other argument.  Both zero is a
 * DomainError. */

/// Sum over all places of min(v^+(x), v^+(y)).
LogValue hgcd(const Rational& x, const Rational& y, mpfr_prec_t prec = kDefaultPrecision);
/// Finite places only.
LogValue hgcd_fin(const Rational& x, const Rational& y, mpfr_prec_t prec = kDefaultPrecision);
/// Finite places outside S.
LogValue hgcd_excluding(const PlaceSet& s, const Rational& x, const Rational& y, mpfr_prec_t prec = kDefaultPrecision);

/* Factorization-free forms.  hgcd_fin(x, y) = log G where G is the integer
 * returned here: gcd of the numerators (or |numerator| of the nonzero one). */
Integer hgcd_fin_integer(const Rational& x, const Rational& y);
Integer hgcd_excluding_integer(const PlaceSet& s, const Rational& x, const Rational& y);
/// min(v^+_inf(x), v^+_inf(y)) with the same zero convention.
Real hgcd_arch(const Rational& x, const Rational& y, mpfr_prec_t prec = kDefaultPrecision);

/// n with every prime of S removed.
Integer strip_places(const Integer& n, const PlaceSet& s);

/// Primes dividing a leading coefficient of num or den of either map.
PlaceSet bad_places(const RationalMap& f_depth, const RationalMap& g_depth);

}  // namespace dyngcd

#endif
