#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dyngcd/poly_io.hpp"
#include "dyngcd/polynomial.hpp"
#include "dyngcd/rational_map.hpp"
#include "oracles.hpp"

using namespace dyngcd;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int deg, long bound)
{
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(oracle::random_rational(rng, bound));
    return Polynomial(c);
}

std::vector<mpq_class> coeffs_of(const Polynomial& p)
{
    return {p.coeffs().begin(), p.coeffs().end()};
}

}  // namespace

TEST_CASE("polynomial ring identities on random inputs")
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 100; ++t) {
        const Polynomial a = random_poly(rng, 1 + t % 5, 20), b = random_poly(rng, 1 + t % 3, 20);
        const Rational x = oracle::random_rational(rng, 30);
        CHECK((a * b)(x) == a(x) * b(x));
        CHECK((a + b)(x) == a(x) + b(x));
        CHECK(a.compose(b)(x) == a(b(x)));
        CHECK(a(x) == oracle::horner(coeffs_of(a), x));
        const auto [q, r] = divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("gcd divides both inputs and finds planted factors")
{
    std::mt19937_64 rng(22);
    for (int t = 0; t < 50; ++t) {
        const Polynomial c = random_poly(rng, 2, 9), a = random_poly(rng, 2, 9) * c, b = random_poly(rng, 3, 9) * c;
        const Polynomial g = gcd(a, b);
        CHECK(divmod(a, g).second.is_zero());
        CHECK(divmod(b, g).second.is_zero());
        CHECK(divmod(g, c.monic()).second.is_zero());
        CHECK(g.leading() == 1);
    }
    CHECK(gcd(Polynomial{}, Polynomial{}).is_zero());
}

TEST_CASE("squarefree decomposition reassembles the input")
{
    const Polynomial x = Polynomial::x();
    const Polynomial p = Rational(3) * pow(x - Polynomial::constant(1), 3) * pow(x + Polynomial::constant(2), 2) *
                         (x * x + Polynomial::constant(1));
    const auto parts = squarefree_decomposition(p);
    Polynomial prod = Polynomial::constant(p.leading());
    for (std::size_t i = 0; i < parts.size(); ++i) prod *= pow(parts[i], static_cast<unsigned>(i + 1));
    CHECK(prod == p);
    CHECK(max_root_multiplicity(p) == 3);
    CHECK(multiplicity_at(p, 1) == 3);
    CHECK(multiplicity_at(p, -2) == 2);
    CHECK(multiplicity_at(p, 0) == 0);
    CHECK(radical(p).degree() == 4);
    CHECK(rational_roots(p) == std::vector<Rational>{-2, 1});
}

TEST_CASE("rational map evaluation agrees with direct arithmetic")
{
    const RationalMap f(Polynomial{1, 0, 1}, Polynomial{-1, 0, 2});
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        const Rational x = oracle::random_rational(rng, 1000);
        const Rational den = 2 * x * x - 1;
        if (den == 0) continue;
        CHECK(evaluate(f, x) == ProjPoint((x * x + 1) / den));
    }
    CHECK(evaluate(f, ProjPoint::infinity()) == ProjPoint(Rational(1, 2)));
    const RationalMap g(Polynomial{0, 0, 1});
    CHECK(evaluate(g, ProjPoint::infinity()).is_infinity());
}

TEST_CASE("iterate matches a Horner orbit")
{
    const std::vector<mpq_class> c{0, 1, 0, 1};
    const auto expect = oracle::poly_orbit(c, 2, 6);
    const auto orbit = iterate(RationalMap(Polynomial{0, 1, 0, 1}), ProjPoint(2), 6);
    REQUIRE(orbit.size() == 7);
    for (int i = 0; i <= 6; ++i) CHECK(orbit[static_cast<std::size_t>(i)].value() == expect[static_cast<std::size_t>(i)]);
}

TEST_CASE("iterate respects the digit budget")
{
    OrbitBudget tiny{50};
    CHECK_THROWS_AS(iterate(RationalMap(Polynomial{0, 0, 1}), ProjPoint(3), 20, tiny), BudgetExceeded);
}

TEST_CASE("compose and self_compose agree with repeated evaluation")
{
    const RationalMap f(Polynomial{1, 0, 1}, Polynomial{-1, 0, 2});
    const RationalMap f3 = self_compose(f, 3);
    CHECK(f3.degree() == 8);
    std::mt19937_64 rng(24);
    for (int t = 0; t < 30; ++t) {
        const ProjPoint x = oracle::random_rational(rng, 50);
        CHECK(evaluate(f3, x) == evaluate(f, evaluate(f, evaluate(f, x))));
    }
    CHECK_THROWS_AS(self_compose(f, 20, SymbolicBudget{64}), BudgetExceeded);
}

TEST_CASE("conjugation intertwines the Mobius map")
{
    const RationalMap f(Polynomial{-2, 0, 1});
    std::mt19937_64 rng(25);
    for (const char* s : {"x+3", "2*x", "1/x", "1,2,3,5"}) {
        const Mobius sigma = Mobius::parse(s);
        const RationalMap fs = conjugate(f, sigma);
        for (int t = 0; t < 20; ++t) {
            const ProjPoint x = oracle::random_rational(rng, 40);
            CHECK(evaluate(fs, sigma(x)) == sigma(evaluate(f, x)));
        }
        CHECK(sigma.inverse()(sigma(ProjPoint(Rational(7, 3)))) == ProjPoint(Rational(7, 3)));
    }
    CHECK_THROWS_AS(Mobius(1, 2, 2, 4), DomainError);
}

TEST_CASE("json formats round-trip")
{
    const RationalMap f(Polynomial{1, 0, 1}, Polynomial{-1, 0, 2});
    CHECK(map_from_json(to_json(f)) == f);
    const Polynomial p{Rational(1, 3), 0, -7};
    CHECK(polynomial_from_json(to_json(p)) == p);
    CHECK(map_from_json(nlohmann::json::parse(R"({"coeffs": ["0", "0", "1"]})")) == RationalMap(Polynomial{0, 0, 1}));
    CHECK_THROWS_AS(map_from_json(nlohmann::json::parse(R"({"coeffs": ["a"]})")), DomainError);
    CHECK_THROWS_AS(load_map("/nonexistent/map.json"), DomainError);
    CHECK(load_map(std::string(DYNGCD_DATA_DIR) + "/maps/x3_plus_x.json") == RationalMap(Polynomial{0, 1, 0, 1}));
}

TEST_CASE("projective points parse and print")
{
    CHECK(ProjPoint::parse("inf").is_infinity());
    CHECK(ProjPoint::parse("-6/4").to_string() == "-3/2");
    CHECK(ProjPoint::parse("inf").to_string() == "inf");
    CHECK_THROWS_AS(ProjPoint::infinity().value(), DomainError);
}
