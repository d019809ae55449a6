#include "dyngcd/log_value.hpp"

#include <algorithm>
#include <sstream>

namespace dyngcd {

LogValue::LogValue(mpfr_prec_t prec) : arch_(prec) {}

LogValue LogValue::log_prime(const mpz_class& p, const mpq_class& coeff, mpfr_prec_t prec)
{
    LogValue v(prec);
    v.add_log_prime(p, coeff);
    return v;
}

LogValue LogValue::archimedean(const Real& value)
{
    LogValue v(value.precision());
    v.arch_ = value;
    return v;
}

mpq_class LogValue::coeff(const mpz_class& p) const
{
    auto it = finite_.find(p);
    return it == finite_.end() ? mpq_class(0) : it->second;
}

void LogValue::add_log_prime(const mpz_class& p, const mpq_class& coeff)
{
    if (coeff == 0) return;
    auto [it, inserted] = finite_.try_emplace(p, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) finite_.erase(it);
    }
}

void LogValue::set_arch(const Real& value) { arch_ = value; }

LogValue& LogValue::operator+=(const LogValue& rhs)
{
    for (const auto& [p, c] : rhs.finite_) add_log_prime(p, c);
    arch_ += rhs.arch_;
    return *this;
}

LogValue& LogValue::operator-=(const LogValue& rhs)
{
    for (const auto& [p, c] : rhs.finite_) add_log_prime(p, -c);
    arch_ -= rhs.arch_;
    return *this;
}

LogValue LogValue::finite_part() const
{
    LogValue v(precision());
    v.finite_ = finite_;
    return v;
}

Real LogValue::finite_real() const
{
    const mpfr_prec_t prec = precision();
    Real sum(prec);
    for (const auto& [p, c] : finite_) {
        Real term = Real::log_abs(p, prec + 8);
        term *= Real(c, prec + 8);
        sum += term;
    }
    return sum.with_precision(prec);
}

Real LogValue::to_real() const
{
    Real r = finite_real();
    r += arch_;
    return r;
}

std::string LogValue::finite_string() const
{
    if (finite_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, c] : finite_) {
        mpq_class mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (mag != 1) out << mag.get_str() << "*";
        out << "log " << p.get_str();
        first = false;
    }
    return out.str();
}

std::string LogValue::to_string(int digits) const
{
    if (arch_.is_zero()) return finite_string();
    if (finite_.empty()) return arch_.to_string(digits);
    return finite_string() + " + " + arch_.to_string(digits);
}

bool finite_equal(const LogValue& a, const LogValue& b)
{
    return a.finite_coeffs() == b.finite_coeffs();
}

bool approx_equal(const LogValue& a, const LogValue& b)
{
    if (!finite_equal(a, b)) return false;
    const mpfr_prec_t prec = std::min(a.precision(), b.precision());
    Real diff = (a.arch() - b.arch()).abs();
    Real tol(1.0, prec);
    mpfr_div_2si(tol.get(), tol.get(), static_cast<long>(prec / 2), MPFR_RNDN);
    return diff <= tol;
}

}  // namespace dyngcd
