#include "dyngcd/surface.hpp"

#include <climits>

namespace dyngcd {

std::string DivisorClass::to_string() const
{
    std::string out = "(" + a.get_str() + ", " + b.get_str();
    for (std::size_t i = 0; i < mults.size(); ++i) out += (i == 0 ? "; " : ", ") + mults[i].get_str();
    return out + ")";
}

DivisorClass operator+(const DivisorClass& d1, const DivisorClass& d2)
{
    if (d1.mults.size() != d2.mults.size()) throw DomainError("divisor classes live on different blowups");
    DivisorClass out{d1.a + d2.a, d1.b + d2.b, d1.mults};
    for (std::size_t i = 0; i < out.mults.size(); ++i) out.mults[i] += d2.mults[i];
    return out;
}

DivisorClass operator*(const Rational& c, const DivisorClass& d)
{
    DivisorClass out{c * d.a, c * d.b, d.mults};
    for (auto& m : out.mults) m *= c;
    return out;
}

BlowupSurface::BlowupSurface(int s) : s_(s)
{
    if (s < 0) throw DomainError("number of blown-up points must be >= 0");
}

DivisorClass BlowupSurface::pullback(const Rational& a, const Rational& b) const
{
    return {a, b, std::vector<Rational>(static_cast<std::size_t>(s_), 0)};
}

DivisorClass BlowupSurface::exceptional_curve(int i) const
{
    if (i < 0 || i >= s_) throw DomainError("exceptional curve index out of range");
    DivisorClass d = pullback(0, 0);
    d.mults[static_cast<std::size_t>(i)] = -1;
    return d;
}

DivisorClass BlowupSurface::strict_transform(const Rational& a, const Rational& b, const std::vector<Rational>& mu) const
{
    if (static_cast<int>(mu.size()) != s_) throw DomainError("multiplicity list length differs from s");
    return {a, b, mu};
}

Rational intersect(const BlowupSurface& x, const DivisorClass& d1, const DivisorClass& d2)
{
    const auto s = static_cast<std::size_t>(x.s());
    if (d1.mults.size() != s || d2.mults.size() != s) throw DomainError("divisor classes live on different blowups");
    Rational out = d1.a * d2.b + d2.a * d1.b;
    for (std::size_t i = 0; i < s; ++i) out -= d1.mults[i] * d2.mults[i];
    return out;
}

DivisorClass canonical_class(const BlowupSurface& x)
{
    /* +Y_i is a subtracted coefficient of -1. */
    return {-2, -2, std::vector<Rational>(static_cast<std::size_t>(x.s()), -1)};
}

DivisorClass perturbed_ample(const BlowupSurface& x, long n)
{
    if (n < 1) throw DomainError("N must be >= 1");
    return {1, 1, std::vector<Rational>(static_cast<std::size_t>(x.s()), Rational(1, n))};
}

std::string AmpleWitness::describe() const
{
    switch (kind) {
    case Kind::Curve:
        return "curve of total type " + std::to_string(curve_total) + " with multiplicity " +
               std::to_string(point_mult) + " at every point: A.C = " + value.get_str();
    case Kind::Exceptional:
        return "exceptional curve: A.Y = " + value.get_str();
    case Kind::SelfIntersection:
        return "self-intersection: A^2 = " + value.get_str();
    }
    return {};
}

namespace {

int mult_cap(int t) { return t == 1 ? 1 : t - 1; }

}  // namespace

AmpleResult is_ample_lemma(const BlowupSurface& x, long n)
{
    const DivisorClass a = perturbed_ample(x, n);
    const int s = x.s();
    AmpleResult r;
    r.self_intersection = intersect(x, a, a);
    r.exceptional_pairing = s > 0 ? intersect(x, a, x.exceptional_curve(0)) : Rational(1, n);

    auto curve_value = [&](int t) {
        const int mu = mult_cap(t);
        const DivisorClass c = x.strict_transform(t, 0, std::vector<Rational>(static_cast<std::size_t>(s), mu));
        return intersect(x, a, c);
    };
    /* Candidates t = 1, 2 cover s <= N; for s > N the value at t = 1 is
     * already 1 - s/N < 0. */
    int best_t = 1;
    Rational best = curve_value(1);
    if (const Rational v2 = curve_value(2); v2 < best) {
        best = v2;
        best_t = 2;
    }
    r.curve_minimum = best;

    r.ample = best > 0 && r.exceptional_pairing > 0 && r.self_intersection > 0;
    if (best <= 0 || r.ample) {
        r.witness = {AmpleWitness::Kind::Curve, best, best_t, s == 0 ? 0 : mult_cap(best_t)};
        if (r.ample) {
            /* Report the tightest of the three positive numbers. */
            if (r.exceptional_pairing < r.witness.value)
                r.witness = {AmpleWitness::Kind::Exceptional, r.exceptional_pairing, 0, 0};
            if (r.self_intersection < r.witness.value)
                r.witness = {AmpleWitness::Kind::SelfIntersection, r.self_intersection, 0, 0};
        }
    } else if (r.exceptional_pairing <= 0) {
        r.witness = {AmpleWitness::Kind::Exceptional, r.exceptional_pairing, 0, 0};
    } else {
        r.witness = {AmpleWitness::Kind::SelfIntersection, r.self_intersection, 0, 0};
    }
    return r;
}

int curve_multiplicity_at(const BivariatePolynomial& f, const Rational& px, const Rational& py)
{
    if (f.is_zero()) throw DomainError("multiplicity of the zero polynomial");
    const BivariatePolynomial g = f.translate(px, py);
    int r = INT_MAX;
    for (const auto& [e, c] : g.terms()) r = std::min(r, e.first + e.second);
    return r;
}

}  // namespace dyngcd
