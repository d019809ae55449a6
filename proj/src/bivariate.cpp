#include "dyngcd/bivariate.hpp"

#include <algorithm>
#include <vector>

namespace dyngcd {

BivariatePolynomial::BivariatePolynomial(std::map<Exponent, Rational> terms) : terms_(std::move(terms))
{
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.first < 0 || it->first.second < 0) throw DomainError("negative exponent in bivariate polynomial");
        it = it->second == 0 ? terms_.erase(it) : std::next(it);
    }
}

namespace {
BivariatePolynomial monomial(int i, int j, const Rational& c)
{
    std::map<BivariatePolynomial::Exponent, Rational> t;
    t.emplace(BivariatePolynomial::Exponent{i, j}, c);
    return BivariatePolynomial(std::move(t));
}
}  // namespace

BivariatePolynomial BivariatePolynomial::x() { return monomial(1, 0, 1); }
BivariatePolynomial BivariatePolynomial::y() { return monomial(0, 1, 1); }
BivariatePolynomial BivariatePolynomial::constant(const Rational& c) { return monomial(0, 0, c); }

Rational BivariatePolynomial::coeff(int i, int j) const
{
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
}

int BivariatePolynomial::total_degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
}

Rational BivariatePolynomial::operator()(const Rational& x, const Rational& y) const
{
    Rational out = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < e.first; ++i) t *= x;
        for (int j = 0; j < e.second; ++j) t *= y;
        out += t;
    }
    return out;
}

BivariatePolynomial BivariatePolynomial::translate(const Rational& dx, const Rational& dy) const
{
    const BivariatePolynomial sx = x() + constant(dx), sy = y() + constant(dy);
    BivariatePolynomial out;
    for (const auto& [e, c] : terms_)
        out += c * (pow(sx, static_cast<unsigned>(e.first)) * pow(sy, static_cast<unsigned>(e.second)));
    return out;
}

BivariatePolynomial BivariatePolynomial::primitive() const
{
    if (is_zero()) return {};
    Integer l = 1, g = 0;
    for (const auto& [e, c] : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::map<Exponent, Rational> t;
    for (const auto& [e, c] : terms_) {
        Rational v = c * l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
        t[e] = v;
    }
    if (t.rbegin()->second < 0) g = -g;
    for (auto& [e, c] : t) c /= g;
    return BivariatePolynomial(std::move(t));
}

BivariatePolynomial& BivariatePolynomial::operator+=(const BivariatePolynomial& rhs)
{
    for (const auto& [e, c] : rhs.terms_) {
        Rational& slot = terms_[e];
        slot += c;
        if (slot == 0) terms_.erase(e);
    }
    return *this;
}

BivariatePolynomial& BivariatePolynomial::operator*=(const BivariatePolynomial& rhs)
{
    std::map<Exponent, Rational> out;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : rhs.terms_) out[{e1.first + e2.first, e1.second + e2.second}] += c1 * c2;
    *this = BivariatePolynomial(std::move(out));
    return *this;
}

BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b)
{
    return a + Rational(-1) * b;
}

BivariatePolynomial operator*(const Rational& c, const BivariatePolynomial& p)
{
    std::map<BivariatePolynomial::Exponent, Rational> t;
    for (const auto& [e, v] : p.terms_) t[e] = v * c;
    return BivariatePolynomial(std::move(t));
}

BivariatePolynomial pow(const BivariatePolynomial& p, unsigned k)
{
    BivariatePolynomial out = BivariatePolynomial::constant(1), base = p;
    while (k) {
        if (k & 1) out *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return out;
}

std::string BivariatePolynomial::to_string() const
{
    if (terms_.empty()) return "0";
    std::string out;
    /* Highest total degree first. */
    std::vector<std::pair<Exponent, Rational>> t(terms_.begin(), terms_.end());
    std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
        const int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
        return da != db ? da > db : a.first.first > b.first.first;
    });
    for (const auto& [e, c] : t) {
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        std::string mono;
        auto var = [&](const char* v, int k) {
            if (k == 0) return;
            if (!mono.empty()) mono += "*";
            mono += v;
            if (k > 1) mono += "^" + std::to_string(k);
        };
        var("x", e.first);
        var("y", e.second);
        if (mono.empty()) out += mag.get_str();
        else if (mag == 1) out += mono;
        else out += mag.get_str() + "*" + mono;
    }
    return out;
}

}  // namespace dyngcd
