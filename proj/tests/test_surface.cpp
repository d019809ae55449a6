#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dyngcd/bivariate.hpp"
#include "dyngcd/surface.hpp"

using namespace dyngcd;

namespace {

Rational frac(long a, long b)
{
    Rational q(a, b);
    q.canonicalize();
    return q;
}

DivisorClass random_class(std::mt19937_64& rng, int s)
{
    std::uniform_int_distribution<int> d(-6, 6);
    DivisorClass c{d(rng), d(rng), {}};
    for (int i = 0; i < s; ++i) {
        Rational m(d(rng), 1 + (d(rng) + 6) % 3);
        m.canonicalize();
        c.mults.push_back(m);
    }
    return c;
}

/* Brute-force ampleness over explicit curve types: every (a, b) with
 * a + b <= 60, every point at its multiplicity cap, plus the exceptional
 * curves and the self-intersection. */
bool brute_ample(int s, long n)
{
    const Rational inv = frac(1, n);
    if (inv <= 0) return false;
    if (2 - frac(s, n * n) <= 0) return false;
    for (int a = 0; a <= 60; ++a)
        for (int b = 0; a + b <= 60; ++b) {
            if (a + b == 0) continue;
            const int cap = a + b == 1 ? 1 : a + b - 1;
            for (int k = 0; k <= s; ++k) {
                Rational ac = a + b;
                ac -= inv * cap * k;
                if (ac <= 0) return false;
            }
        }
    return true;
}

}  // namespace

TEST_CASE("intersection form on the generators")
{
    const BlowupSurface x(3);
    const DivisorClass h1 = x.pullback(1, 0), h2 = x.pullback(0, 1);
    CHECK(intersect(x, h1, h1) == 0);
    CHECK(intersect(x, h2, h2) == 0);
    CHECK(intersect(x, h1, h2) == 1);
    for (int i = 0; i < 3; ++i) {
        CHECK(intersect(x, x.exceptional_curve(i), x.exceptional_curve(i)) == -1);
        CHECK(intersect(x, x.exceptional_curve(i), h1) == 0);
        for (int j = i + 1; j < 3; ++j) CHECK(intersect(x, x.exceptional_curve(i), x.exceptional_curve(j)) == 0);
    }
    CHECK_THROWS_AS(intersect(x, BlowupSurface(2).pullback(1, 1), h1), DomainError);
    CHECK_THROWS_AS(BlowupSurface(-1), DomainError);
}

TEST_CASE("intersection form is symmetric and bilinear")
{
    std::mt19937_64 rng(41);
    for (int t = 0; t < 300; ++t) {
        const int s = t % 6;
        const BlowupSurface x(s);
        const DivisorClass d1 = random_class(rng, s), d2 = random_class(rng, s), d3 = random_class(rng, s);
        Rational c(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 4));
        c.canonicalize();
        CHECK(intersect(x, d1, d2) == intersect(x, d2, d1));
        CHECK(intersect(x, d1 + d2, d3) == intersect(x, d1, d3) + intersect(x, d2, d3));
        CHECK(intersect(x, c * d1, d2) == c * intersect(x, d1, d2));
    }
}

TEST_CASE("perturbed ample class pairings")
{
    for (int s = 0; s <= 8; ++s)
        for (long n = 1; n <= 12; ++n) {
            const BlowupSurface x(s);
            const DivisorClass a = perturbed_ample(x, n);
            CHECK(intersect(x, a, a) == 2 - frac(s, n * n));
            for (int i = 0; i < s; ++i) CHECK(intersect(x, a, x.exceptional_curve(i)) == frac(1, n));
        }
    CHECK_THROWS_AS(perturbed_ample(BlowupSurface(1), 0), DomainError);
}

TEST_CASE("canonical class is K of P1 x P1 plus the exceptional curves")
{
    for (int s = 0; s <= 8; ++s) {
        const BlowupSurface x(s);
        DivisorClass expect = x.pullback(-2, -2);
        for (int i = 0; i < s; ++i) expect = expect + x.exceptional_curve(i);
        const DivisorClass k = canonical_class(x);
        CHECK(k == expect);
        CHECK(intersect(x, k, k) == 8 - s);
        for (int i = 0; i < s; ++i) {
            const DivisorClass e = x.exceptional_curve(i);
            CHECK(intersect(x, k, e) == -1);
            /* adjunction for a smooth rational curve */
            CHECK(intersect(x, e, e) + intersect(x, k, e) == -2);
        }
    }
}

TEST_CASE("adjunction for strict transforms of smooth (1,1) curves")
{
    for (int s = 0; s <= 6; ++s) {
        const BlowupSurface x(s);
        for (int k = 0; k <= s; ++k) {
            std::vector<Rational> mu(static_cast<std::size_t>(s), 0);
            for (int i = 0; i < k; ++i) mu[static_cast<std::size_t>(i)] = 1;
            const DivisorClass c = x.strict_transform(1, 1, mu);
            CHECK(intersect(x, c, c) + intersect(x, canonical_class(x), c) == -2);
            CHECK(intersect(x, c, c) == 2 - k);
        }
    }
}

TEST_CASE("ampleness matches the brute-force curve enumeration and N > s")
{
    for (int s = 0; s <= 8; ++s)
        for (long n = 1; n <= 12; ++n) {
            const AmpleResult r = is_ample_lemma(BlowupSurface(s), n);
            CHECK(r.ample == (n > s));
            CHECK(r.ample == brute_ample(s, n));
            CHECK(r.exceptional_pairing == frac(1, n));
            CHECK(r.self_intersection == 2 - frac(s, n * n));
            CHECK_FALSE(r.witness.describe().empty());
        }
}

TEST_CASE("ample witness for s = 4, N = 5")
{
    const AmpleResult r = is_ample_lemma(BlowupSurface(4), 5);
    CHECK(r.ample);
    CHECK(r.curve_minimum == Rational(1, 5));
    CHECK(r.self_intersection == Rational(46, 25));
    const AmpleResult bad = is_ample_lemma(BlowupSurface(5), 5);
    CHECK_FALSE(bad.ample);
    CHECK(bad.witness.value <= 0);
}

TEST_CASE("curve multiplicity at a point")
{
    const auto x = BivariatePolynomial::x(), y = BivariatePolynomial::y();
    const auto cusp = pow(x, 2) - pow(y, 3);
    CHECK(curve_multiplicity_at(cusp, 0, 0) == 2);
    CHECK(curve_multiplicity_at(cusp, 1, 1) == 1);
    CHECK(curve_multiplicity_at(pow(x - y, 3), 2, 2) == 3);
    CHECK(curve_multiplicity_at(cusp, 5, 0) == 0);
    CHECK_THROWS_AS(curve_multiplicity_at(BivariatePolynomial{}, 0, 0), DomainError);
}
