#ifndef DYNGCD_EXACT_ARITH_HPP
#define DYNGCD_EXACT_ARITH_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dyngcd/errors.hpp"
#include "dyngcd/log_value.hpp"
#include "dyngcd/real.hpp"

namespace dyngcd {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parse "p/q" or "p" (optional sign, decimal digits).  The result is in
/// lowest terms.  Throws DomainError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& v);
std::string to_string(const Rational& v);

/// Exact count of decimal digits of |v|; 1 for zero.
std::size_t decimal_digits(const Integer& v);

/// Deterministic Miller-Rabin for n < 3.3e24, Baillie-PSW above that.
bool is_prime(const Integer& n);

/// True when is_prime() is a proof (not merely BPSW) for this size.
bool primality_is_deterministic(const Integer& n);

/// A place of Q: a finite place (a prime) or the archimedean place.
class Place {
  public:
    /// Throws DomainError unless p is prime.
    static Place finite(const Integer& p);
    static Place archimedean() { return Place(); }

    bool is_archimedean() const { return prime_ == 0; }
    /// Throws DomainError for the archimedean place.
    const Integer& prime() const;

    std::string to_string() const;
    friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }

  private:
    Place() = default;
    explicit Place(Integer p) : prime_(std::move(p)) {}
    Integer prime_ = 0;
};

struct Factorization {
    int sign = 1;
    /// Strictly increasing primes with positive exponents.
    std::vector<std::pair<Integer, unsigned long>> factors;

    Integer product() const;
    friend bool operator==(const Factorization&, const Factorization&) = default;
};

struct FactorOptions {
    /// Pollard-Brent iterations allowed across the whole call.
    std::uint64_t rho_budget = 20'000'000;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// Thrown when the rho budget runs out.  Carries the part factored so far;
/// `cofactor` is the composite remainder (never reported as a prime).
class FactorizationIncomplete : public BudgetExceeded {
  public:
    FactorizationIncomplete(Factorization partial, Integer cofactor, std::size_t iterations);
    const Factorization& partial() const { return partial_; }
    const Integer& cofactor() const { return cofactor_; }

  private:
    Factorization partial_;
    Integer cofactor_;
};

/// Prime factorization of n != 0.  Trial division to 10^6, then Pollard-Brent
/// with a seeded start.  Throws DomainError on n == 0.
Factorization factor(const Integer& n, const FactorOptions& opts = {});

/// v_p(x) = v_p(num) - v_p(den).  Throws DomainError if x == 0 or p < 2.
long valuation(const Integer& p, const Rational& x);
/// v_p of an integer, n != 0.
unsigned long valuation(const Integer& p, const Integer& n);

/// v^+(x) = max(0, -log|x|_v).  At a prime p this is max(0, v_p(x)) log p;
/// at infinity it is max(0, -log|x|).  Throws DomainError on x == 0.
LogValue v_plus(const Place& place, const Rational& x, mpfr_prec_t prec = kDefaultPrecision);

/// sum over finite places of min(v^+(a), v^+(b)) for nonzero integers.
/// The finite coefficients are the prime exponents of gcd(|a|, |b|).
LogValue log_gcd_places(const Integer& a, const Integer& b, mpfr_prec_t prec = kDefaultPrecision);

}  // namespace dyngcd

#endif
