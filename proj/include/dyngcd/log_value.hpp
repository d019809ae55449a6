#ifndef DYNGCD_LOG_VALUE_HPP
#define DYNGCD_LOG_VALUE_HPP

#include <map>
#include <string>

#include <gmpxx.h>

#include "dyngcd/real.hpp"

namespace dyngcd {

/* A real number written as  sum_p c_p log p  +  arch,  with exact rational
 * coefficients c_p on primes and a floating archimedean remainder.  Keeping
 * the finite part symbolic makes identities such as
 *     log gcd(a,b) = sum_p min(v_p^+(a), v_p^+(b))
 * checkable with zero tolerance.
 *
 * Invariant: no stored coefficient is zero.
 */
class LogValue {
  public:
    explicit LogValue(mpfr_prec_t prec = kDefaultPrecision);

    static LogValue log_prime(const mpz_class& p, const mpq_class& coeff, mpfr_prec_t prec = kDefaultPrecision);
    static LogValue archimedean(const Real& value);

    const std::map<mpz_class, mpq_class>& finite_coeffs() const { return finite_; }
    const Real& arch() const { return arch_; }
    mpfr_prec_t precision() const { return arch_.precision(); }

    /// Coefficient of log p, zero when absent.
    mpq_class coeff(const mpz_class& p) const;
    void add_log_prime(const mpz_class& p, const mpq_class& coeff);
    void set_arch(const Real& value);

    LogValue& operator+=(const LogValue& rhs);
    LogValue& operator-=(const LogValue& rhs);
    friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
    friend LogValue operator-(LogValue a, const LogValue& b) { return a -= b; }

    LogValue finite_part() const;
    bool finite_is_zero() const { return finite_.empty(); }
    bool is_zero() const { return finite_.empty() && arch_.is_zero(); }

    /// sum_p c_p log p evaluated at the value's precision.
    Real finite_real() const;
    Real to_real() const;

    /// "log 2 + log 3", "2*log 5 - 1/2*log 7", "0" when empty.
    std::string finite_string() const;
    /// finite_string() plus " + <arch>" when the archimedean part is nonzero.
    std::string to_string(int digits = 12) const;

  private:
    std::map<mpz_class, mpq_class> finite_;
    Real arch_;
};

/// Finite parts equal exactly.
bool finite_equal(const LogValue& a, const LogValue& b);

/// Finite parts equal exactly and archimedean parts within 2^(-prec/2),
/// prec being the smaller of the two precisions.
bool approx_equal(const LogValue& a, const LogValue& b);

}  // namespace dyngcd

#endif
