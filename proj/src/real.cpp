#include "dyngcd/real.hpp"

#include <cstdio>
#include <utility>
#include <vector>

namespace dyngcd {

Real::Real(mpfr_prec_t prec)
{
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

Real::Real(double v, mpfr_prec_t prec)
{
    mpfr_init2(value_, prec);
    mpfr_set_d(value_, v, MPFR_RNDN);
}

Real::Real(const mpz_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd)
{
    mpfr_init2(value_, prec);
    mpfr_set_z(value_, v.get_mpz_t(), rnd);
}

Real::Real(const mpq_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd)
{
    mpfr_init2(value_, prec);
    mpfr_set_q(value_, v.get_mpq_t(), rnd);
}

Real::Real(const Real& other)
{
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept
{
    /* Leave `other` as a valid tiny zero so its destructor stays legal. */
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other)
{
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept
{
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::positive_infinity(mpfr_prec_t prec)
{
    Real r(prec);
    mpfr_set_inf(r.value_, 1);
    return r;
}

Real Real::log_abs(const mpz_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd)
{
    /* mpfr_set_z rounds huge integers; take the log through a mantissa /
     * exponent split so the input size never dictates the working precision. */
    Real r(prec);
    mpz_class a = ::abs(v);
    if (a == 0) {
        mpfr_set_inf(r.value_, -1);
        return r;
    }
    long exp2 = 0;
    Real mant(prec + 16);
    mpfr_set_z_2exp(mant.value_, a.get_mpz_t(), 0, rnd);
    exp2 = mpfr_get_exp(mant.value_);
    mpfr_set_exp(mant.value_, 0);  // mant in [1/2, 1)
    Real l2(prec + 16);
    mpfr_const_log2(l2.value_, rnd);
    mpfr_mul_si(l2.value_, l2.value_, exp2, rnd);
    mpfr_log(mant.value_, mant.value_, rnd);
    mpfr_add(r.value_, mant.value_, l2.value_, rnd);
    return r;
}

Real Real::log_abs(const mpq_class& v, mpfr_prec_t prec, mpfr_rnd_t rnd)
{
    mpfr_rnd_t opposite = rnd;
    if (rnd == MPFR_RNDU) opposite = MPFR_RNDD;
    else if (rnd == MPFR_RNDD) opposite = MPFR_RNDU;
    Real num = log_abs(mpz_class(v.get_num()), prec + 8, rnd);
    Real den = log_abs(mpz_class(v.get_den()), prec + 8, opposite);
    Real r(prec);
    mpfr_sub(r.value_, num.value_, den.value_, rnd);
    return r;
}

Real Real::with_precision(mpfr_prec_t prec, mpfr_rnd_t rnd) const
{
    Real r(prec);
    mpfr_set(r.value_, value_, rnd);
    return r;
}

std::string Real::to_string(int digits) const
{
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    char* out = nullptr;
    if (mpfr_asprintf(&out, "%.*Rf", digits, value_) < 0 || out == nullptr) return "nan";
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

void Real::grow_to(mpfr_prec_t prec)
{
    if (prec > precision()) mpfr_prec_round(value_, prec, MPFR_RNDN);
}

Real& Real::operator+=(const Real& rhs)
{
    grow_to(rhs.precision());
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& rhs)
{
    grow_to(rhs.precision());
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& rhs)
{
    grow_to(rhs.precision());
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& rhs)
{
    grow_to(rhs.precision());
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const
{
    Real r(*this);
    mpfr_neg(r.value_, r.value_, MPFR_RNDN);
    return r;
}

Real Real::abs() const
{
    Real r(*this);
    mpfr_abs(r.value_, r.value_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b)
{
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.value_, b.value_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, double b)
{
    if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp_d(a.value_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real min(const Real& a, const Real& b) { return (b < a) ? b : a; }
Real max(const Real& a, const Real& b) { return (b > a) ? b : a; }

}  // namespace dyngcd
