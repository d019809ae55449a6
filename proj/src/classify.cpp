#include "dyngcd/classify.hpp"

#include <cmath>
#include <map>
#include <set>

namespace dyngcd {

Fiber preimage_fiber(const RationalMap& f, const ProjPoint& alpha)
{
    const int d = f.degree();
    /* Homogeneous form hy F1 - hx F2, dehomogenized in x. */
    std::vector<Rational> c(static_cast<std::size_t>(d) + 1, 0);
    for (int i = 0; i <= d; ++i)
        c[static_cast<std::size_t>(i)] = Rational(alpha.hy()) * f.num().coeff(i) - Rational(alpha.hx()) * f.den().coeff(i);
    const Polynomial h(std::move(c));
    if (h.is_zero()) throw DomainError("constant map has no fibers");
    const int at_infinity = d - h.degree();
    Fiber out;
    out.distinct = radical(h).degree() + (at_infinity > 0 ? 1 : 0);
    if (out.distinct == 1) {
        if (at_infinity > 0) out.single = ProjPoint::infinity();
        else out.single = ProjPoint(-h.coeff(d - 1) / (Rational(d) * h.coeff(d)));
    }
    return out;
}

bool is_exceptional(const RationalMap& f, const ProjPoint& alpha)
{
    if (f.degree() < 2) throw DomainError("exceptional points need degree >= 2");
    const Fiber first = preimage_fiber(f, alpha);
    if (first.distinct != 1) return false;
    const ProjPoint& beta = *first.single;
    if (beta == alpha) return true;
    const Fiber second = preimage_fiber(f, beta);
    return second.distinct == 1 && *second.single == alpha;
}

bool is_preperiodic(const RationalMap& f, const ProjPoint& pt, const PreperiodicBudget& budget)
{
    const int d = f.degree();
    if (d < 2) throw DomainError("preperiodicity test needs degree >= 2");
    /* h^ >= h - C/(d-1), so a point above that level has positive height. */
    Real escape = discrepancy_bound(f) / Real(static_cast<double>(d - 1), kDefaultPrecision);
    escape += Real(std::ldexp(1.0, -100), kDefaultPrecision);

    std::set<ProjPoint> seen;
    ProjPoint cur = pt;
    std::size_t held = 0;
    for (int n = 0; n <= budget.max_steps; ++n) {
        if (!seen.insert(cur).second) return true;
        if (weil_height(cur) > escape) return false;
        held += point_digits(cur);
        if (held > budget.max_digits) break;
        cur = evaluate(f, cur);
    }
    try {
        const HeightEstimate h = canonical_height(f, pt, budget.tol);
        if (h.preperiodic) return true;
        if (h.value - h.error_bound > 0) return false;
    } catch (const BudgetExceeded&) {
    }
    throw Indeterminate("preperiodicity of " + pt.to_string() + " under " + f.to_string() +
                        " is undecided within the budget");
}

bool mult_indep(const Rational& a, const Rational& b)
{
    if (a == 0 || b == 0) throw DomainError("multiplicative independence of zero is undefined");
    std::map<Integer, std::pair<long, long>> vec;
    auto add = [&](const Rational& x, bool first) {
        for (const auto* part : {&x.get_num(), &x.get_den()}) {
            const Integer n = abs(Integer(*part));
            if (n == 1) continue;
            const long sign = part == &x.get_num() ? 1 : -1;
            for (const auto& [p, e] : factor(n).factors) {
                auto& slot = vec[p];
                (first ? slot.first : slot.second) += sign * static_cast<long>(e);
            }
        }
    };
    add(a, true);
    add(b, false);
    bool a_trivial = true, b_trivial = true;
    for (const auto& [p, e] : vec) {
        a_trivial = a_trivial && e.first == 0;
        b_trivial = b_trivial && e.second == 0;
    }
    if (a_trivial || b_trivial) return false;
    /* Parallel iff every 2x2 minor vanishes. */
    std::vector<std::pair<long, long>> v;
    for (const auto& [p, e] : vec) v.push_back(e);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (Integer(v[i].first) * v[j].second != Integer(v[i].second) * v[j].first) return true;
    return false;
}

std::string to_string(SpecialForm::Tag tag)
{
    switch (tag) {
    case SpecialForm::Tag::PowerConjugate: return "PowerConjugate";
    case SpecialForm::Tag::ChebyshevConjugate: return "ChebyshevConjugate";
    case SpecialForm::Tag::NotSpecial: return "NotSpecial";
    }
    return {};
}

Polynomial chebyshev(int d)
{
    if (d < 0) throw DomainError("Chebyshev index must be >= 0");
    Polynomial prev = Polynomial::constant(2), cur = Polynomial::x();
    if (d == 0) return prev;
    for (int k = 1; k < d; ++k) {
        Polynomial next = Polynomial::x() * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace {

/// Exact k-th root of a rational, sign allowed for odd k.
std::optional<Rational> rational_root(const Rational& v, unsigned k)
{
    if (v < 0 && k % 2 == 0) return std::nullopt;
    Integer n = abs(Integer(v.get_num())), d = v.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k) || !mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k)) return std::nullopt;
    Rational r(rn, rd);
    r.canonicalize();
    return v < 0 ? Rational(-r) : r;
}

Rational rpow(const Rational& v, int k)
{
    Rational out = 1;
    for (int i = 0; i < k; ++i) out *= v;
    return out;
}

bool verify(const Polynomial& p, const Mobius& sigma, const Polynomial& target)
{
    return conjugate(RationalMap(p), sigma) == RationalMap(target);
}

}  // namespace

SpecialForm special_form(const Polynomial& p)
{
    const int d = p.degree();
    if (d < 2) throw DomainError("special form needs degree >= 2");
    const auto du = static_cast<unsigned>(d);
    /* Translate away the x^(d-1) term: g(y) = p(y - s) + s. */
    const Rational s = p.coeff(d - 1) / (Rational(d) * p.coeff(d));
    const Polynomial shift_in = Polynomial({-s, Rational(1)});
    const Polynomial g = p.compose(shift_in) + Polynomial::constant(s);
    const Rational gd = g.coeff(d);
    SpecialForm out;

    auto witness = [&](const Rational& lambda) { return Mobius(lambda, lambda * s, 0, 1); };

    bool lower_zero = true;
    for (int j = 0; j < d; ++j) lower_zero = lower_zero && g.coeff(j) == 0;
    if (lower_zero) {
        /* lambda^(d-1) = sign * g_d  gives  sign * x^d. */
        for (int sign : {1, -1}) {
            const auto lambda = rational_root(Rational(sign) * gd, du - 1);
            if (!lambda) continue;
            const Mobius sigma = witness(*lambda);
            if (verify(p, sigma, Rational(sign) * Polynomial::monomial(1, du))) {
                out.tag = SpecialForm::Tag::PowerConjugate;
                out.witness = sigma;
                out.sign = sign;
                return out;
            }
        }
        out.caveat = true;
        out.note = "power map after an irrational rescaling";
        return out;
    }

    const Rational gd2 = g.coeff(d - 2);
    if (gd2 == 0) return out;
    const Polynomial t = chebyshev(d);
    const Rational r = -Rational(d) * gd / gd2;  // lambda^2
    if (d % 2 == 1) {
        /* g_j = eps t_j r^((j-1)/2). */
        const Rational eps = gd / rpow(r, (d - 1) / 2);
        if (eps != 1 && eps != -1) return out;
        for (int j = 0; j < d; ++j)
            if (g.coeff(j) != (j % 2 == 1 ? eps * t.coeff(j) * rpow(r, (j - 1) / 2) : Rational(0))) return out;
        const auto lambda = rational_root(r, 2);
        if (!lambda) {
            out.caveat = true;
            out.note = "Chebyshev map after an irrational rescaling";
            return out;
        }
        const int sign = eps == 1 ? 1 : -1;
        const Mobius sigma = witness(*lambda);
        if (verify(p, sigma, Rational(sign) * t)) {
            out.tag = SpecialForm::Tag::ChebyshevConjugate;
            out.witness = sigma;
            out.sign = sign;
        }
        return out;
    }
    /* Even d: with kappa = eps lambda, g_j = t_j r^(j/2) / kappa. */
    const Rational kappa = rpow(r, d / 2) / gd;
    if (kappa * kappa != r) return out;
    for (int j = 0; j < d; ++j)
        if (g.coeff(j) != (j % 2 == 0 ? t.coeff(j) * rpow(r, j / 2) / kappa : Rational(0))) return out;
    const Mobius sigma = witness(kappa);
    if (verify(p, sigma, t)) {
        out.tag = SpecialForm::Tag::ChebyshevConjugate;
        out.witness = sigma;
    }
    return out;
}

std::optional<int> commutes(const Polynomial& h, const Polynomial& f, int k_max, const SymbolicBudget& budget)
{
    if (h.degree() < 1) throw DomainError("h must have degree >= 1");
    if (f.degree() < 2) throw DomainError("f must have degree >= 2");
    if (k_max < 1) throw DomainError("k_max must be >= 1");
    Polynomial fk = f;
    long long deg = f.degree();
    for (int k = 1; k <= k_max; ++k) {
        if (deg * h.degree() > budget.max_degree)
            throw BudgetExceeded("commutation check at k = " + std::to_string(k) + " needs degree " +
                                     std::to_string(deg * h.degree()),
                                 static_cast<std::size_t>(deg * h.degree()));
        if (h.compose(fk) == fk.compose(h)) return k;
        if (k < k_max) {
            fk = f.compose(fk);
            deg *= f.degree();
        }
    }
    return std::nullopt;
}

CommutingWitness commuting_graph(const Polynomial& h, const Polynomial& f, const Rational& a, const Rational& b,
                                 const Rational& alpha, const Rational& beta, int k_max, const SymbolicBudget& budget)
{
    CommutingWitness w;
    w.k = commutes(h, f, k_max, budget);
    w.maps_a_to_b = h(a) == b;
    w.maps_alpha_to_beta = h(alpha) == beta;
    return w;
}

}  // namespace dyngcd
