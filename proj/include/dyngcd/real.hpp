#ifndef DYNGCD_REAL_HPP
#define DYNGCD_REAL_HPP

#include <compare>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace dyngcd {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/* Owning wrapper around an mpfr_t.  The precision travels with the value;
 * binary operators produce a result at the larger of the two precisions.
 * Rounding is to nearest unless a function takes an explicit mode.
 */
class Real {
  public:
    explicit Real(mpfr_prec_t prec = kDefaultPrecision);
    Real(double v, mpfr_prec_t prec);
    Real(const mpz_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    Real(const mpq_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    static Real positive_infinity(mpfr_prec_t prec = kDefaultPrecision);

    /// log |v| for nonzero v.
    static Real log_abs(const mpz_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real log_abs(const mpq_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    Real with_precision(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) const;

    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    bool is_inf() const { return mpfr_inf_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    /// Fixed-point rendering with `digits` digits after the point.
    std::string to_string(int digits = 12) const;

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);
    Real operator-() const;
    Real abs() const;

    friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
    friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
    friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
    friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);
    friend std::partial_ordering operator<=>(const Real& a, double b);

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }

  private:
    void grow_to(mpfr_prec_t prec);

    mpfr_t value_;
};

Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

}  // namespace dyngcd

#endif
