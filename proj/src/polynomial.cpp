#include "dyngcd/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dyngcd {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    for (auto& c : c_) c.canonicalize();
    trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t k)
{
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

const Rational& Polynomial::leading() const
{
    if (c_.empty()) throw DomainError("zero polynomial has no leading coefficient");
    return c_.back();
}

Rational Polynomial::operator()(const Rational& x) const
{
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Polynomial Polynomial::derivative() const
{
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const
{
    if (c_.empty()) return {};
    Polynomial r(*this);
    const Rational inv = 1 / c_.back();
    for (auto& c : r.c_) c *= inv;
    return r;
}

Polynomial Polynomial::compose(const Polynomial& inner) const
{
    Polynomial r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r *= inner;
        r += constant(*it);
    }
    return r;
}

bool Polynomial::has_integer_coeffs() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

Polynomial Polynomial::primitive() const
{
    if (c_.empty()) return {};
    Integer l = 1, g = 0;
    for (const auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Rational> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        out[i] = c_[i] * l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_num_mpz_t());
    }
    if (c_.back() < 0) g = -g;
    for (auto& c : out) c /= g;
    return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs)
{
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size());
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs)
{
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size());
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] -= rhs.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs)
{
    if (c_.empty() || rhs.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<Rational> out(c_.size() + rhs.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.c_.size(); ++j) out[i + j] += c_[i] * rhs.c_[j];
    }
    c_ = std::move(out);
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s)
{
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

std::string Polynomial::to_string(const std::string& var) const
{
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Rational& c = c_[k];
        if (c == 0) continue;
        const Rational mag = abs(c);
        if (first) out << (c < 0 ? "-" : "");
        else out << (c < 0 ? " - " : " + ");
        first = false;
        if (k == 0) {
            out << mag.get_str();
            continue;
        }
        if (mag != 1) out << mag.get_str() << "*";
        out << var;
        if (k > 1) out << "^" << k;
    }
    return out.str();
}

Polynomial pow(const Polynomial& p, unsigned k)
{
    Polynomial result = Polynomial::constant(1), base = p;
    while (k) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return result;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial(), a};
    std::vector<Rational> rem = a.coeffs();
    const auto db = static_cast<std::size_t>(b.degree());
    std::vector<Rational> quo(rem.size() - db);
    const Rational inv = 1 / b.leading();
    for (std::size_t k = rem.size(); k-- > db;) {
        if (rem[k] == 0) continue;
        const Rational q = rem[k] * inv;
        quo[k - db] = q;
        for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= q * b.coeffs()[j];
    }
    rem.resize(db);
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b)
{
    /* Euclid on primitive integer representatives keeps coefficient growth
     * to a single division step. */
    Polynomial x = a.primitive(), y = b.primitive();
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).second;
        x = std::move(y);
        y = r.primitive();
    }
    return x.monic();
}

std::vector<Polynomial> squarefree_decomposition(const Polynomial& p)
{
    if (p.is_zero()) throw DomainError("squarefree decomposition of zero");
    std::vector<Polynomial> out;
    if (p.is_constant()) return out;
    /* Yun's algorithm (characteristic zero). */
    const Polynomial dp = p.derivative();
    Polynomial a = gcd(p, dp);
    Polynomial b = divmod(p, a).first;
    Polynomial c = divmod(dp, a).first;
    Polynomial d = c - b.derivative();
    while (!b.is_constant()) {
        Polynomial s = gcd(b, d);
        out.push_back(s.monic());
        b = divmod(b, s).first;
        c = divmod(d, s).first;
        d = c - b.derivative();
    }
    while (!out.empty() && out.back().is_constant()) out.pop_back();
    return out;
}

int max_root_multiplicity(const Polynomial& p)
{
    return static_cast<int>(squarefree_decomposition(p).size());
}

Polynomial radical(const Polynomial& p)
{
    if (p.is_zero()) throw DomainError("radical of the zero polynomial");
    if (p.is_constant()) return Polynomial::constant(1);
    return divmod(p, gcd(p, p.derivative())).first.monic();
}

int multiplicity_at(const Polynomial& p, const Rational& q)
{
    if (p.is_zero()) throw DomainError("multiplicity in the zero polynomial");
    const Polynomial lin({-q, 1});
    Polynomial cur = p;
    int m = 0;
    while (cur.degree() >= 1) {
        auto [quo, rem] = divmod(cur, lin);
        if (!rem.is_zero()) break;
        cur = std::move(quo);
        ++m;
    }
    return m;
}

namespace {

std::vector<Integer> divisors(const Integer& n)
{
    std::vector<Integer> out{1};
    for (const auto& [p, e] : factor(n).factors) {
        const std::size_t base = out.size();
        Integer pk = 1;
        for (unsigned long k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

}  // namespace

std::vector<Rational> rational_roots(const Polynomial& p)
{
    if (p.is_zero()) throw DomainError("roots of the zero polynomial");
    std::set<Rational> roots;
    Polynomial q = p.primitive();
    if (q.coeff(0) == 0) {
        roots.insert(0);
        std::size_t k = 0;
        while (q.coeff(k) == 0) ++k;
        q = Polynomial(std::vector<Rational>(q.coeffs().begin() + static_cast<long>(k), q.coeffs().end()));
    }
    if (q.degree() >= 1) {
        const Integer a0 = abs(q.coeff(0).get_num());
        const Integer an = abs(q.leading().get_num());
        const auto num_div = divisors(a0);
        const auto den_div = divisors(an);
        for (const auto& u : num_div)
            for (const auto& v : den_div)
                for (int s : {1, -1}) {
                    Rational cand(Integer(s * u), v);
                    cand.canonicalize();
                    if (q(cand) == 0) roots.insert(cand);
                }
    }
    return {roots.begin(), roots.end()};
}

}  // namespace dyngcd
