#include "dyngcd/rational_map.hpp"

#include <algorithm>
#include <sstream>

namespace dyngcd {

ProjPoint ProjPoint::from_homogeneous(Integer x, Integer y)
{
    if (x == 0 && y == 0) throw DomainError("[0 : 0] is not a point of P^1");
    Integer g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    x /= g;
    y /= g;
    if (y < 0 || (y == 0 && x < 0)) {
        x = -x;
        y = -y;
    }
    return ProjPoint(std::move(x), std::move(y));
}

ProjPoint ProjPoint::parse(std::string_view text)
{
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    return ProjPoint(parse_rational(text));
}

Rational ProjPoint::value() const
{
    if (is_infinity()) throw DomainError("infinity has no affine value");
    Rational q(x_, y_);
    q.canonicalize();
    return q;
}

std::string ProjPoint::to_string() const
{
    return is_infinity() ? std::string("inf") : value().get_str();
}

std::size_t point_digits(const ProjPoint& pt)
{
    return decimal_digits(pt.hx()) + decimal_digits(pt.hy());
}

RationalMap::RationalMap(const Polynomial& num, const Polynomial& den)
{
    if (den.is_zero()) throw DomainError("rational map with zero denominator");
    if (num.is_zero()) throw DomainError("constant rational map");
    Polynomial g = gcd(num, den);
    Polynomial n = divmod(num, g).first;
    Polynomial d = divmod(den, g).first;
    /* Clear denominators jointly, then strip the joint content. */
    Integer l = 1, c = 0;
    for (const auto* p : {&n, &d})
        for (const auto& q : p->coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    n *= Rational(l);
    d *= Rational(l);
    for (const auto* p : {&n, &d})
        for (const auto& q : p->coeffs()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), q.get_num_mpz_t());
    if (d.leading() < 0) c = -c;
    n *= Rational(1, 1) / Rational(c);
    d *= Rational(1, 1) / Rational(c);
    num_ = std::move(n);
    den_ = std::move(d);
    if (degree() < 1) throw DomainError("constant rational map");
}

bool RationalMap::is_integral_polynomial() const
{
    return den_.degree() == 0 && den_.leading() == 1;
}

Polynomial RationalMap::as_polynomial() const
{
    if (!is_polynomial()) throw DomainError("map " + to_string() + " is not a polynomial");
    return num_ * (1 / den_.leading());
}

std::string RationalMap::to_string() const
{
    if (den_.degree() == 0 && den_.leading() == 1) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

Mobius::Mobius(Rational p, Rational q, Rational r, Rational s)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), s_(std::move(s))
{
    if (determinant() == 0) throw DomainError("Mobius transformation with zero determinant");
}

Mobius Mobius::parse(std::string_view text)
{
    if (text == "id" || text == "x") return identity();
    if (text == "1/x") return inversion();
    if (text.size() > 2 && text.substr(0, 2) == "x+") return translation(parse_rational(text.substr(2)));
    if (text.size() > 2 && text.substr(0, 2) == "x-") return translation(-parse_rational(text.substr(2)));
    if (text.size() > 2 && text.substr(text.size() - 2) == "*x")
        return dilation(parse_rational(text.substr(0, text.size() - 2)));
    std::vector<Rational> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        parts.push_back(parse_rational(text.substr(start, comma - start)));
        start = comma + 1;
    }
    if (parts.size() != 4) throw DomainError("Mobius needs four entries p,q,r,s");
    return {parts[0], parts[1], parts[2], parts[3]};
}

ProjPoint Mobius::operator()(const ProjPoint& pt) const
{
    /* Scale the matrix to integers so the image stays a projective pair. */
    Integer l = 1;
    for (const auto* e : {&p_, &q_, &r_, &s_}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e->get_den_mpz_t());
    const Integer a = Integer(p_ * l), b = Integer(q_ * l), c = Integer(r_ * l), d = Integer(s_ * l);
    return ProjPoint::from_homogeneous(a * pt.hx() + b * pt.hy(), c * pt.hx() + d * pt.hy());
}

Mobius Mobius::inverse() const { return {s_, -q_, -r_, p_}; }

Mobius Mobius::after(const Mobius& in) const
{
    return {p_ * in.p_ + q_ * in.r_, p_ * in.q_ + q_ * in.s_, r_ * in.p_ + s_ * in.r_, r_ * in.q_ + s_ * in.s_};
}

RationalMap Mobius::as_map() const { return {Polynomial({q_, p_}), Polynomial({s_, r_})}; }

std::string Mobius::to_string() const
{
    return p_.get_str() + "," + q_.get_str() + "," + r_.get_str() + "," + s_.get_str();
}

Integer eval_homogeneous(const Polynomial& p, int deg, const Integer& x, const Integer& y)
{
    if (p.is_zero()) return 0;
    const int k = p.degree();
    if (y == 1) {
        Integer h = 0;
        for (int i = k; i >= 0; --i) h = h * x + p.coeffs()[static_cast<std::size_t>(i)].get_num();
        return h;
    }
    /* h = sum c_i x^i y^(k-i), then times y^(deg-k). */
    Integer h = p.leading().get_num();
    Integer ypow = 1;
    for (int i = k - 1; i >= 0; --i) {
        ypow *= y;
        h = h * x + p.coeffs()[static_cast<std::size_t>(i)].get_num() * ypow;
    }
    for (int i = k; i < deg; ++i) h *= y;
    return h;
}

ProjPoint evaluate(const RationalMap& f, const ProjPoint& pt)
{
    const int d = f.degree();
    Integer a = eval_homogeneous(f.num(), d, pt.hx(), pt.hy());
    Integer b = eval_homogeneous(f.den(), d, pt.hx(), pt.hy());
    return ProjPoint::from_homogeneous(std::move(a), std::move(b));
}

std::vector<ProjPoint> iterate(const RationalMap& f, const ProjPoint& pt, std::size_t n, const OrbitBudget& budget)
{
    std::vector<ProjPoint> orbit{pt};
    orbit.reserve(n + 1);
    std::size_t held = point_digits(pt);
    for (std::size_t i = 0; i < n; ++i) {
        orbit.push_back(evaluate(f, orbit.back()));
        held += point_digits(orbit.back());
        if (held > budget.max_total_digits)
            throw BudgetExceeded("orbit digit budget exceeded after " + std::to_string(i + 1) + " steps (" +
                                     std::to_string(held) + " digits held)",
                                 held);
    }
    return orbit;
}

RationalMap compose(const RationalMap& outer, const RationalMap& inner, const SymbolicBudget& budget)
{
    const int d = outer.degree();
    const int e = inner.degree();
    if (static_cast<long long>(d) * e > budget.max_degree)
        throw BudgetExceeded("symbolic degree " + std::to_string(static_cast<long long>(d) * e) + " exceeds budget " +
                                 std::to_string(budget.max_degree),
                             static_cast<std::size_t>(d) * static_cast<std::size_t>(e));
    /* F(G1, G2) with F homogenized to degree d. */
    const Polynomial& g1 = inner.num();
    const Polynomial& g2 = inner.den();
    std::vector<Polynomial> p1(static_cast<std::size_t>(d) + 1), p2(static_cast<std::size_t>(d) + 1);
    p1[0] = p2[0] = Polynomial::constant(1);
    for (std::size_t i = 1; i <= static_cast<std::size_t>(d); ++i) {
        p1[i] = p1[i - 1] * g1;
        p2[i] = p2[i - 1] * g2;
    }
    auto lift = [&](const Polynomial& f) {
        Polynomial out;
        for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
            if (f.coeffs()[i] == 0) continue;
            out += f.coeffs()[i] * (p1[i] * p2[static_cast<std::size_t>(d) - i]);
        }
        return out;
    };
    return {lift(outer.num()), lift(outer.den())};
}

RationalMap self_compose(const RationalMap& f, int depth, const SymbolicBudget& budget)
{
    if (depth < 1) throw DomainError("self_compose needs depth >= 1");
    RationalMap acc = f;
    for (int i = 1; i < depth; ++i) acc = compose(f, acc, budget);
    return acc;
}

RationalMap conjugate(const RationalMap& f, const Mobius& sigma)
{
    SymbolicBudget unlimited{1 << 30};
    return compose(sigma.as_map(), compose(f, sigma.inverse().as_map(), unlimited), unlimited);
}

}  // namespace dyngcd
