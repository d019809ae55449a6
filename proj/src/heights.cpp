#include "dyngcd/heights.hpp"

#include <algorithm>

#include "dyngcd/linalg.hpp"

namespace dyngcd {

PlaceSet::PlaceSet(std::initializer_list<long> primes)
    : PlaceSet([&] {
          std::vector<Integer> v;
          for (long p : primes) v.emplace_back(p);
          return v;
      }())
{
}

PlaceSet::PlaceSet(const std::vector<Integer>& primes) : primes_(primes)
{
    for (const auto& p : primes_)
        if (!is_prime(p)) throw DomainError("place set entry " + p.get_str() + " is not prime");
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

bool PlaceSet::contains(const Integer& p) const
{
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

Real weil_height(const ProjPoint& pt, mpfr_prec_t prec)
{
    const Integer m = std::max(abs(pt.hx()), abs(pt.hy()));
    return Real::log_abs(m, prec);
}

namespace {

/* Coefficients of the degree-d homogeneous lift: index i <-> X^i Y^(d-i). */
std::vector<Integer> lift_coeffs(const Polynomial& p, int d)
{
    std::vector<Integer> c(static_cast<std::size_t>(d) + 1, 0);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i] = p.coeffs()[i].get_num();
    return c;
}

/* Solve  target = A1 F1 + A2 F2  with deg A_i = d - 1 (homogeneous). */
std::vector<Rational> cofactors(const std::vector<Integer>& f1, const std::vector<Integer>& f2, int d, std::size_t target)
{
    const std::size_t n = 2 * static_cast<std::size_t>(d);
    const std::size_t du = static_cast<std::size_t>(d);
    RationalMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < du; ++j) {
            if (k >= j && k - j <= du) {
                m(k, j) = f1[k - j];
                m(k, du + j) = f2[k - j];
            }
        }
    std::vector<Rational> rhs(n, 0);
    rhs[target] = 1;
    auto sol = solve(std::move(m), std::move(rhs));
    if (!sol) throw DomainError("homogeneous lift has a common zero; map is not a morphism of P^1");
    return *sol;
}

}  // namespace

DiscrepancyData discrepancy_data(const RationalMap& f, mpfr_prec_t prec)
{
    const int d = f.degree();
    if (d < 2) throw DomainError("discrepancy bound needs degree >= 2");
    const auto f1 = lift_coeffs(f.num(), d);
    const auto f2 = lift_coeffs(f.den(), d);

    DiscrepancyData out;
    out.degree = d;
    Integer u1 = 0, u2 = 0;
    for (const auto& c : f1) u1 += abs(c);
    for (const auto& c : f2) u2 += abs(c);
    out.upper_arch = Rational(std::max(u1, u2));

    out.delta = 1;
    Rational k = 0;
    for (std::size_t target : {2 * static_cast<std::size_t>(d) - 1, std::size_t{0}}) {
        Rational l1 = 0;
        for (const auto& c : cofactors(f1, f2, d, target)) {
            l1 += abs(c);
            mpz_lcm(out.delta.get_mpz_t(), out.delta.get_mpz_t(), c.get_den_mpz_t());
        }
        k = std::max(k, l1);
    }
    out.lower_arch = k;

    out.log_upper = Real::log_abs(out.upper_arch, prec, MPFR_RNDU);
    out.log_lower = Real::log_abs(out.lower_arch, prec, MPFR_RNDU);
    Real lower_total = Real::log_abs(Rational(out.lower_arch * out.delta), prec, MPFR_RNDU);
    out.bound = max(out.log_upper, lower_total);
    if (out.bound.sign() < 0) out.bound = Real(prec);
    return out;
}

Real discrepancy_bound(const RationalMap& f, mpfr_prec_t prec)
{
    return discrepancy_data(f, prec).bound;
}

Integer hgcd_fin_integer(const Rational& x, const Rational& y)
{
    if (x == 0 && y == 0) throw DomainError("hgcd(0, 0) is excluded; the caller applies gcd(0,0) = 0");
    if (x == 0) return abs(Integer(y.get_num()));
    if (y == 0) return abs(Integer(x.get_num()));
    Integer g;
    mpz_gcd(g.get_mpz_t(), x.get_num_mpz_t(), y.get_num_mpz_t());
    return g;
}

Integer strip_places(const Integer& n, const PlaceSet& s)
{
    Integer out = n;
    for (const auto& p : s.primes())
        if (out != 0) mpz_remove(out.get_mpz_t(), out.get_mpz_t(), p.get_mpz_t());
    return out;
}

Integer hgcd_excluding_integer(const PlaceSet& s, const Rational& x, const Rational& y)
{
    return strip_places(hgcd_fin_integer(x, y), s);
}

Real hgcd_arch(const Rational& x, const Rational& y, mpfr_prec_t prec)
{
    if (x == 0 && y == 0) throw DomainError("hgcd(0, 0) is excluded; the caller applies gcd(0,0) = 0");
    const Place inf = Place::archimedean();
    if (x == 0) return v_plus(inf, y, prec).arch();
    if (y == 0) return v_plus(inf, x, prec).arch();
    return min(v_plus(inf, x, prec).arch(), v_plus(inf, y, prec).arch());
}

namespace {

/* Place-by-place minimum over the primes where both v^+ can be positive. */
LogValue finite_sum(const Rational& x, const Rational& y, const PlaceSet* exclude, mpfr_prec_t prec)
{
    LogValue out(prec);
    const Integer support = hgcd_fin_integer(x, y);
    if (support == 1) return out;
    for (const auto& [p, e_unused] : factor(support).factors) {
        (void)e_unused;
        if (exclude && exclude->contains(p)) continue;
        const Place v = Place::finite(p);
        if (x == 0) {
            out += v_plus(v, y, prec);
        } else if (y == 0) {
            out += v_plus(v, x, prec);
        } else {
            const mpq_class a = v_plus(v, x, prec).coeff(p);
            const mpq_class b = v_plus(v, y, prec).coeff(p);
            out.add_log_prime(p, std::min(a, b));
        }
    }
    return out;
}

}  // namespace

LogValue hgcd(const Rational& x, const Rational& y, mpfr_prec_t prec)
{
    LogValue out = finite_sum(x, y, nullptr, prec);
    out.set_arch(hgcd_arch(x, y, prec));
    return out;
}

LogValue hgcd_fin(const Rational& x, const Rational& y, mpfr_prec_t prec)
{
    return finite_sum(x, y, nullptr, prec);
}

LogValue hgcd_excluding(const PlaceSet& s, const Rational& x, const Rational& y, mpfr_prec_t prec)
{
    return finite_sum(x, y, &s, prec);
}

PlaceSet bad_places(const RationalMap& f_depth, const RationalMap& g_depth)
{
    std::vector<Integer> primes;
    for (const auto* m : {&f_depth, &g_depth})
        for (const auto* p : {&m->num(), &m->den()}) {
            const Integer lc = abs(Integer(p->leading().get_num()));
            for (const auto& [q, e] : factor(lc).factors) {
                (void)e;
                primes.push_back(q);
            }
        }
    return PlaceSet(primes);
}

}  // namespace dyngcd
