#include "dyngcd/exact_arith.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace dyngcd {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

/* "[+-]digits" */
Integer parse_signed(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw DomainError("malformed rational: '" + std::string(whole) + "'");
    Integer v(std::string(s), 10);
    return negative ? Integer(-v) : v;
}

}  // namespace

Integer parse_integer(std::string_view text)
{
    return parse_signed(text, text);
}

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_signed(text, text));
    Integer num = parse_signed(text.substr(0, slash), text);
    Integer den = parse_signed(text.substr(slash + 1), text);
    if (den == 0) throw DomainError("zero denominator: '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(const Rational& v) { return v.get_str(); }

std::size_t decimal_digits(const Integer& v)
{
    if (v == 0) return 1;
    std::size_t est = mpz_sizeinbase(v.get_mpz_t(), 10);
    /* sizeinbase may overshoot by one. */
    Integer pow;
    mpz_ui_pow_ui(pow.get_mpz_t(), 10, est - 1);
    return (abs(v) < pow) ? est - 1 : est;
}

Place Place::finite(const Integer& p)
{
    if (!is_prime(p)) throw DomainError("place requires a prime, got " + p.get_str());
    return Place(p);
}

const Integer& Place::prime() const
{
    if (is_archimedean()) throw DomainError("archimedean place has no prime");
    return prime_;
}

std::string Place::to_string() const
{
    return is_archimedean() ? std::string("inf") : prime_.get_str();
}

Integer Factorization::product() const
{
    Integer n = sign;
    for (const auto& [p, e] : factors) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        n *= pe;
    }
    return n;
}

FactorizationIncomplete::FactorizationIncomplete(Factorization partial, Integer cofactor, std::size_t iterations)
    : BudgetExceeded("factorization budget exhausted; composite cofactor " + cofactor.get_str() + " left", iterations),
      partial_(std::move(partial)), cofactor_(std::move(cofactor))
{
}

unsigned long valuation(const Integer& p, const Integer& n)
{
    if (n == 0) throw DomainError("valuation of zero is +infinity");
    if (p < 2) throw DomainError("valuation base must be a prime");
    Integer rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

long valuation(const Integer& p, const Rational& x)
{
    if (x == 0) throw DomainError("valuation of zero is +infinity");
    const long up = static_cast<long>(valuation(p, Integer(x.get_num())));
    const long down = static_cast<long>(valuation(p, Integer(x.get_den())));
    return up - down;
}

LogValue v_plus(const Place& place, const Rational& x, mpfr_prec_t prec)
{
    if (x == 0) throw DomainError("v^+ of zero is +infinity; callers must special-case it");
    LogValue out(prec);
    if (place.is_archimedean()) {
        Real l = Real::log_abs(x, prec);
        if (l.sign() < 0) out.set_arch(-l);
        return out;
    }
    const long v = valuation(place.prime(), x);
    if (v > 0) out.add_log_prime(place.prime(), v);
    return out;
}

LogValue log_gcd_places(const Integer& a, const Integer& b, mpfr_prec_t prec)
{
    if (a == 0 || b == 0) throw DomainError("log_gcd_places needs nonzero integers");
    /* Only primes dividing both can have min(v^+(a), v^+(b)) > 0; find that
     * support, then take the place-wise minimum of the two valuations. */
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    LogValue out(prec);
    if (g == 1) return out;
    for (const auto& [p, e_unused] : factor(g).factors) {
        (void)e_unused;
        const unsigned long m = std::min(valuation(p, a), valuation(p, b));
        out.add_log_prime(p, static_cast<long>(m));
    }
    return out;
}

}  // namespace dyngcd
