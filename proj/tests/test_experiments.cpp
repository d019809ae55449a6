#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <sstream>

#include "dyngcd/experiments.hpp"
#include "oracles.hpp"

using namespace dyngcd;

namespace {

GcdSeriesConfig power_config(int n_max)
{
    GcdSeriesConfig c;
    c.a = 125;
    c.b = 25;
    c.alpha = 1;
    c.beta = 1;
    c.n_max = n_max;
    return c;
}

Integer five_pow_two_pow(int n)
{
    Integer e = 1;
    for (int i = 0; i < n; ++i) e *= 2;
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), Integer(5).get_mpz_t(), e.get_ui());
    return out;
}

std::set<int> union_of(const std::vector<Progression>& ps, int n_max)
{
    std::set<int> out;
    for (const auto& p : ps)
        for (int k = p.start; k <= n_max; k += p.step) out.insert(k);
    return out;
}

}  // namespace

TEST_CASE("power-map example: 5^(2^n) - 1 divides the gcd")
{
    const GcdSeriesReport r = gcd_series(power_config(6));
    REQUIRE(r.rows.size() == 7);
    CHECK(r.integral);
    CHECK(r.rows[1].gcd == 24);
    CHECK(r.rows[2].gcd == 624);
    CHECK(r.rows[3].gcd == 390624);
    for (int n = 1; n <= 6; ++n) {
        const Integer m = five_pow_two_pow(n) - 1;
        CHECK(r.rows[static_cast<std::size_t>(n)].gcd % m == 0);
    }
}

TEST_CASE("odd-symmetry example: the gcd is the whole value")
{
    GcdSeriesConfig c;
    c.f = c.g = RationalMap(Polynomial{0, 1, 0, 1});
    c.a = 2;
    c.b = -2;
    c.alpha = 1;
    c.beta = -1;
    c.n_max = 5;
    const GcdSeriesReport r = gcd_series(c);
    const auto orbit = oracle::poly_orbit({0, 1, 0, 1}, 2, 5);
    for (int n = 1; n <= 5; ++n) CHECK(r.rows[static_cast<std::size_t>(n)].gcd == abs(orbit[static_cast<std::size_t>(n)] - 1));
    CHECK(r.rows[1].gcd == 9);
    CHECK(r.rows[2].gcd == 1009);
}

TEST_CASE("integral rows match an independent Euclidean recomputation")
{
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<long> small(-5, 5);
    for (int t = 0; t < 40; ++t) {
        const long cf = small(rng), cg = small(rng);
        GcdSeriesConfig c;
        c.f = RationalMap(Polynomial{cf, 0, 1});
        c.g = RationalMap(Polynomial{cg, 1, 1});
        c.a = small(rng);
        c.b = small(rng);
        c.alpha = small(rng);
        c.beta = small(rng);
        c.n_max = 6;
        const GcdSeriesReport r = gcd_series(c);
        const auto of = oracle::poly_orbit({cf, 0, 1}, c.a.value(), 6), og = oracle::poly_orbit({cg, 1, 1}, c.b.value(), 6);
        REQUIRE(r.rows.size() == 7);
        for (int n = 0; n <= 6; ++n) {
            const auto& row = r.rows[static_cast<std::size_t>(n)];
            const mpz_class x = mpz_class(of[static_cast<std::size_t>(n)] - c.alpha);
            const mpz_class y = mpz_class(og[static_cast<std::size_t>(n)] - c.beta);
            CHECK(row.gcd == oracle::euclid(x, y));
            CHECK(row.excluded == (x == 0 || y == 0));
            if (row.gcd > 0 && !row.excluded) {
                CHECK(row.log_gcd.to_double() == doctest::Approx(oracle::log_z(row.gcd)));
                CHECK(row.ratio.to_double() == doctest::Approx(oracle::log_z(row.gcd) / std::pow(2.0, n)));
            }
        }
    }
}

TEST_CASE("zero collisions follow the gcd(0, y) = |y| convention and are excluded")
{
    GcdSeriesConfig c;
    c.a = 1;
    c.b = 3;
    c.alpha = 1;
    c.beta = 1;
    c.n_max = 3;
    const GcdSeriesReport r = gcd_series(c);
    for (const auto& row : r.rows) {
        CHECK(row.excluded);
        CHECK(std::find(row.flags.begin(), row.flags.end(), "zero-collision") != row.flags.end());
    }
    CHECK(r.rows[1].gcd == 8);
    c.b = 1;
    const GcdSeriesReport both = gcd_series(c);
    CHECK(both.rows[2].gcd == 0);
    CHECK(std::find(both.rows[2].flags.begin(), both.rows[2].flags.end(), "both-zero") != both.rows[2].flags.end());
    CHECK(gcd_with_conventions(0, 0) == 0);
    CHECK(gcd_with_conventions(0, -12) == 12);
}

TEST_CASE("rational configs use hgcd with the archimedean part")
{
    GcdSeriesConfig c;
    c.f = c.g = RationalMap(Polynomial{1, 0, 1}, Polynomial{-1, 0, 2});
    c.a = Rational(1, 2);
    c.b = 3;
    c.alpha = 0;
    c.beta = 0;
    c.n_max = 3;
    const GcdSeriesReport r = gcd_series(c);
    CHECK_FALSE(r.integral);
    const auto of = iterate(c.f, c.a, 3), og = iterate(c.g, c.b, 3);
    for (int n = 0; n <= 3; ++n) {
        const Rational x = of[static_cast<std::size_t>(n)].value(), y = og[static_cast<std::size_t>(n)].value();
        CHECK(r.rows[static_cast<std::size_t>(n)].log_gcd.to_double() ==
              doctest::Approx(hgcd(x, y).to_real().to_double()));
    }
}

TEST_CASE("exclusions strip their primes from hgcd_S")
{
    GcdSeriesConfig c = power_config(3);
    c.exclusions = PlaceSet{2, 3};
    const GcdSeriesReport r = gcd_series(c);
    CHECK(r.rows[1].hgcd_S.is_zero());  // 24 = 2^3 3
    CHECK(r.rows[2].hgcd_S.to_double() == doctest::Approx(std::log(13.0)));  // 624 = 2^4 3 13
}

TEST_CASE("config validation and budget truncation")
{
    GcdSeriesConfig c = power_config(3);
    c.g = RationalMap(Polynomial{0, 0, 0, 1});
    CHECK_THROWS_AS(gcd_series(c), DomainError);
    c = power_config(0);
    CHECK_THROWS_AS(gcd_series(c), DomainError);
    c = power_config(20);
    c.digit_budget = 200;
    int seen = 0;
    c.on_row = [&](const GcdRow&) { ++seen; };
    const GcdSeriesReport r = gcd_series(c);
    CHECK(r.truncated);
    CHECK(r.last_completed == static_cast<int>(r.rows.size()) - 1);
    CHECK(seen == static_cast<int>(r.rows.size()));
    CHECK(r.last_completed < 20);
    CHECK_FALSE(r.note.empty());
}

TEST_CASE("fiber multiplicity counts infinity")
{
    CHECK(max_fiber_multiplicity(RationalMap(Polynomial{0, 0, 1}), 1) == 1);
    CHECK(max_fiber_multiplicity(RationalMap(Polynomial{0, 0, 1}), 0) == 2);
    const RationalMap m(Polynomial{1, 0, 1}, Polynomial{-1, 0, 2});
    CHECK(max_fiber_multiplicity(m, Rational(1, 2)) == 2);
    CHECK(max_fiber_multiplicity(m, 1) == 1);
}

TEST_CASE("choose_depth returns the least depth and replays")
{
    const RationalMap sq(Polynomial{0, 0, 1});
    const DepthCertificate cert = choose_depth(sq, sq, 3, 2, 1, 1, 0.1);
    CHECK(replay(cert));
    CHECK(cert.m_prime == 1);
    /* independent recomputation from the recorded numbers */
    const double sum = 4 * (cert.hhat_f.to_double() + cert.hhat_f_err.to_double()) +
                       4 * (cert.hhat_g.to_double() + cert.hhat_g_err.to_double()) + cert.c.to_double();
    CHECK(cert.m_prime * sum / std::pow(2.0, cert.depth) < 0.05);
    CHECK(cert.m_prime * sum / std::pow(2.0, cert.depth - 1) >= 0.05);
    CHECK(cert.hhat_f.to_double() == doctest::Approx(std::log(3.0)));
    CHECK(cert.depth == 8);

    DepthCertificate forged = cert;
    forged.depth -= 1;
    CHECK_FALSE(replay(forged));

    CHECK_THROWS_AS(choose_depth(sq, sq, 3, 2, 0, 1, 0.1), HypothesisViolation);
    CHECK_THROWS_AS(choose_depth(sq, sq, 3, 2, 1, 0, 0.1), HypothesisViolation);
    DepthOptions tight;
    tight.budget.max_degree = 16;
    CHECK_THROWS_AS(choose_depth(sq, sq, 3, 2, 1, 1, 0.1, tight), BudgetExceeded);
}

TEST_CASE("ap_structure on the documented windows")
{
    IndexSet all{{}, 30};
    for (int i = 0; i <= 30; ++i) all.indices.push_back(i);
    const ApStructure s = ap_structure(all);
    REQUIRE(s.progressions.size() == 1);
    CHECK(s.progressions[0] == Progression{0, 1});
    CHECK(s.residual.empty());
    CHECK(s.label == "window-consistent");

    IndexSet odd{{}, 40};
    for (int i = 1; i <= 40; i += 2) odd.indices.push_back(i);
    const ApStructure so = ap_structure(odd);
    REQUIRE(so.progressions.size() == 1);
    CHECK(so.progressions[0] == Progression{1, 2});

    IndexSet two{{}, 60};
    for (int i = 2; i <= 60; ++i)
        if (i % 3 == 2 || i % 3 == 0) two.indices.push_back(i);
    const ApStructure st = ap_structure(two);
    CHECK(union_of(st.progressions, 60) == std::set<int>(two.indices.begin(), two.indices.end()));
    CHECK(st.residual.empty());
    CHECK(st.expand() == two.indices);
}

TEST_CASE("ap_structure reproduces random unions exactly")
{
    std::mt19937_64 rng(62);
    for (int t = 0; t < 200; ++t) {
        const int n_max = 20 + static_cast<int>(rng() % 181);
        std::vector<Progression> ps;
        const int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i) ps.push_back({static_cast<int>(rng() % 30), 1 + static_cast<int>(rng() % 12)});
        std::set<int> truth = union_of(ps, n_max);
        if (t % 4 == 0) truth.insert(static_cast<int>(rng() % (n_max + 1)));
        const IndexSet set{{truth.begin(), truth.end()}, n_max};
        const ApStructure s = ap_structure(set);
        CHECK(s.expand() == set.indices);
        /* no progression overcounts */
        for (const auto& p : s.progressions)
            for (int i = p.start; i <= n_max; i += p.step) CHECK(truth.count(i) == 1);
    }
    CHECK_THROWS_AS(ap_structure(IndexSet{{5}, 3}), DomainError);
}

TEST_CASE("large index set thresholds log gcd against eta d^n")
{
    const GcdSeriesReport r = gcd_series(power_config(6));
    const IndexSet s = large_index_set(r, 0.5);
    for (const auto& row : r.rows) {
        const bool big = oracle::log_z(row.gcd) >= 0.5 * std::pow(2.0, row.n);
        CHECK((std::find(s.indices.begin(), s.indices.end(), row.n) != s.indices.end()) == big);
    }
    CHECK_THROWS_AS(large_index_set(r, 0), DomainError);
}

TEST_CASE("Mobius distortion constant")
{
    CHECK(mobius_lemma_constant(Mobius::inversion(), 2, 2).finite_string() == "2*log 2");
    CHECK(mobius_lemma_constant(Mobius::translation(5), 2, 7).is_zero());
    CHECK(mobius_lemma_constant(Mobius::dilation(Rational(1, 3)), 1, 1).finite_string() == "log 3");
    CHECK_THROWS_AS(mobius_lemma_constant(Mobius::inversion(), 0, 2), DomainError);
}

TEST_CASE("Mobius probe: translations and dilations are free, inversion is bounded")
{
    std::mt19937_64 rng(63);
    const RationalMap sq(Polynomial{0, 0, 1});
    std::vector<std::pair<ProjPoint, ProjPoint>> samples;
    for (int i = 0; i < 50; ++i) {
        const Rational x = oracle::random_rational(rng, 1000), t = oracle::random_rational(rng, 50);
        samples.emplace_back(x, Rational(2 + (x - 2) * t));
    }
    CHECK(mobius_invariance_probe(sq, sq, Mobius::identity(), Mobius::identity(), 2, 2, samples, 2).max_deviation.is_zero());
    CHECK(mobius_invariance_probe(sq, sq, Mobius::translation(1), Mobius::translation(1), 2, 2, samples, 2)
              .max_deviation.is_zero());
    const MobiusProbeResult inv =
        mobius_invariance_probe(sq, sq, Mobius::inversion(), Mobius::inversion(), 2, 2, samples, 0);
    const double bound = mobius_lemma_constant(Mobius::inversion(), 2, 2).to_real().to_double();
    CHECK(inv.max_deviation.to_double() <= bound + 1e-12);
    CHECK(inv.per_sample.size() == samples.size());
}

TEST_CASE("report and config serialization round-trip")
{
    GcdSeriesConfig c = power_config(4);
    c.exclusions = PlaceSet{2};
    c.seed = 17;
    const GcdSeriesConfig back = config_from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));

    const GcdSeriesReport r = gcd_series(c);
    const GcdSeriesReport rr = report_from_json(to_json(r));
    REQUIRE(rr.rows.size() == r.rows.size());
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        CHECK(rr.rows[i].gcd == r.rows[i].gcd);
        CHECK(rr.rows[i].flags == r.rows[i].flags);
        CHECK(rr.rows[i].log_gcd.to_double() == r.rows[i].log_gcd.to_double());
    }
    CHECK(to_json(rr) == to_json(r));

    const std::string csv = to_csv(r);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,digits_f,digits_g,gcd,log_gcd,ratio,hgcd_fin,hgcd_S,flags");
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 5);

    ReportFormat tiny;
    tiny.json_elide_digits = 3;
    tiny.csv_elide_digits = 3;
    const auto j = to_json(r, tiny);
    CHECK(j["rows"][3]["gcd"].is_null());
    CHECK(j["rows"][3]["gcd_elided"] == true);
    CHECK(to_csv(r, tiny).find("elided:6digits") != std::string::npos);

    const std::string plot = to_plot_data(r);
    CHECK(plot.rfind("# n ratio\n", 0) == 0);
    CHECK(std::count(plot.begin(), plot.end(), '\n') == 6);
    CHECK_THROWS_AS(report_from_json(nlohmann::json::parse(R"({"rows": 3})")), DomainError);
}
