#include <random>
#include <set>

#include "dyngcd/classify.hpp"
#include "dyngcd/linalg.hpp"

namespace dyngcd {

namespace {

using Monomial = std::pair<int, int>;

std::vector<Monomial> monomials(int deg_max, int total)
{
    std::vector<Monomial> out;
    for (int t = 0; t <= total; ++t)
        for (int i = std::min(t, deg_max); i >= 0 && t - i <= deg_max; --i) out.emplace_back(i, t - i);
    return out;
}

std::uint64_t reduce(const Integer& v, std::uint64_t p)
{
    return mpz_fdiv_ui(v.get_mpz_t(), p);
}

/* Affine orbit values f^n(a) mod p for n = 1..count, or nullopt when the
 * orbit meets infinity or the lift collapses mod p. */
std::optional<std::vector<std::uint64_t>> orbit_mod_p(const RationalMap& f, const ProjPoint& a, int count,
                                                        std::uint64_t p)
{
    const int d = f.degree();
    std::vector<std::uint64_t> c1, c2;
    for (int i = 0; i <= d; ++i) {
        c1.push_back(reduce(f.num().coeff(static_cast<std::size_t>(i)).get_num(), p));
        c2.push_back(reduce(f.den().coeff(static_cast<std::size_t>(i)).get_num(), p));
    }
    auto eval = [&](const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t y) {
        std::uint64_t h = c[static_cast<std::size_t>(d)], ypow = 1;
        for (int k = d - 1; k >= 0; --k) {
            ypow = mul_mod(ypow, y, p);
            h = (mul_mod(h, x, p) + mul_mod(c[static_cast<std::size_t>(k)], ypow, p)) % p;
        }
        return h;
    };
    std::uint64_t x = reduce(a.hx(), p), y = reduce(a.hy(), p);
    std::vector<std::uint64_t> out;
    for (int n = 1; n <= count; ++n) {
        const std::uint64_t nx = eval(c1, x, y), ny = eval(c2, x, y);
        x = nx;
        y = ny;
        if (y == 0) return std::nullopt;
        out.push_back(mul_mod(x, inv_mod(y, p), p));
    }
    return out;
}

std::uint64_t random_prime(std::mt19937_64& rng, const std::set<std::uint64_t>& used)
{
    const std::uint64_t top = std::uint64_t{1} << 61;
    while (true) {
        std::uint64_t c = (top - (rng() % (std::uint64_t{1} << 40))) | 1;
        while (!is_prime(Integer(static_cast<unsigned long>(c)))) c -= 2;
        if (!used.count(c)) return c;
    }
}

std::uint64_t pow_u(std::uint64_t v, int k, std::uint64_t p)
{
    return pow_mod(v, static_cast<std::uint64_t>(k), p);
}

}  // namespace

GenericityProbe probe_genericity(const RationalMap& f, const RationalMap& g, const ProjPoint& a, const ProjPoint& b,
                                 int deg_max, int n_points, const ProbeOptions& opts)
{
    if (deg_max < 1) throw DomainError("deg_max must be >= 1");
    if (n_points < 1) throw DomainError("n_points must be >= 1");
    GenericityProbe out;
    std::mt19937_64 rng(opts.seed);
    std::set<std::uint64_t> used;

    /* Modular orbits, rerolling primes of bad reduction. */
    struct Screen {
        std::uint64_t p;
        std::vector<std::uint64_t> xs, ys;
    };
    std::vector<Screen> screens;
    for (int attempts = 0; static_cast<int>(screens.size()) < opts.primes; ++attempts) {
        if (attempts > 64 * opts.primes) throw DomainError("no prime of good reduction found for the orbit pair");
        const std::uint64_t p = random_prime(rng, used);
        used.insert(p);
        auto xs = orbit_mod_p(f, a, n_points, p);
        auto ys = xs ? orbit_mod_p(g, b, n_points, p) : std::nullopt;
        if (!xs || !ys) continue;
        screens.push_back({p, std::move(*xs), std::move(*ys)});
        out.primes.push_back(p);
    }

    std::optional<std::vector<ProjPoint>> fx, gy;
    for (int t = 1; t <= 2 * deg_max; ++t) {
        const auto mono = monomials(deg_max, t);
        if (n_points < static_cast<int>(mono.size()) + opts.margin) break;
        out.max_total_degree_tested = t;
        out.points_used = n_points;

        bool deficient = true;
        for (const auto& sc : screens) {
            std::vector<std::vector<std::uint64_t>> rows;
            for (int n = 0; n < n_points; ++n) {
                std::vector<std::uint64_t> row;
                for (const auto& [i, j] : mono)
                    row.push_back(mul_mod(pow_u(sc.xs[static_cast<std::size_t>(n)], i, sc.p),
                                          pow_u(sc.ys[static_cast<std::size_t>(n)], j, sc.p), sc.p));
                rows.push_back(std::move(row));
            }
            if (rank_mod_p(std::move(rows), sc.p) == mono.size()) {
                deficient = false;
                break;
            }
        }
        if (!deficient) continue;
        if (opts.modular_only) {
            out.screen_deficient = true;
            return out;
        }

        if (!fx) {
            try {
                fx = iterate(f, a, static_cast<std::size_t>(n_points), opts.budget);
                gy = iterate(g, b, static_cast<std::size_t>(n_points), opts.budget);
            } catch (const BudgetExceeded&) {
                out.truncated = true;
                return out;
            }
            for (int n = 1; n <= n_points; ++n)
                if ((*fx)[static_cast<std::size_t>(n)].is_infinity() || (*gy)[static_cast<std::size_t>(n)].is_infinity())
                    throw DomainError("orbit reaches infinity; no affine relation to test");
        }
        RationalMatrix m(static_cast<std::size_t>(n_points), mono.size());
        for (int n = 0; n < n_points; ++n) {
            const Rational x = (*fx)[static_cast<std::size_t>(n) + 1].value();
            const Rational y = (*gy)[static_cast<std::size_t>(n) + 1].value();
            for (std::size_t k = 0; k < mono.size(); ++k) {
                Rational v = 1;
                for (int e = 0; e < mono[k].first; ++e) v *= x;
                for (int e = 0; e < mono[k].second; ++e) v *= y;
                m(static_cast<std::size_t>(n), k) = v;
            }
        }
        for (const auto& vec : kernel(std::move(m))) {
            std::map<BivariatePolynomial::Exponent, Rational> terms;
            for (std::size_t k = 0; k < mono.size(); ++k) terms[mono[k]] = vec[k];
            const BivariatePolynomial rel = BivariatePolynomial(std::move(terms)).primitive();
            bool ok = !rel.is_zero();
            for (int n = 1; ok && n <= n_points; ++n)
                ok = rel((*fx)[static_cast<std::size_t>(n)].value(), (*gy)[static_cast<std::size_t>(n)].value()) == 0;
            if (ok) {
                out.relation = CurveRelation{rel, deg_max, n_points};
                return out;
            }
        }
    }
    return out;
}

}  // namespace dyngcd
