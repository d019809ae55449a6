#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "dyngcd/exact_arith.hpp"

namespace dyngcd {

namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

/* Primes below kTrialLimit.  Function-local static: initialization is
 * thread-safe and the table is immutable afterwards. */
const std::vector<std::uint32_t>& small_primes()
{
    static const std::vector<std::uint32_t> table = [] {
        std::vector<bool> composite(kTrialLimit + 1, false);
        std::vector<std::uint32_t> primes;
        for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
            if (composite[i]) continue;
            primes.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialLimit; j += i) composite[j] = true;
        }
        return primes;
    }();
    return table;
}

/* Miller-Rabin with the first 13 prime bases is a proof below this bound
 * (Sorenson & Webster). */
const Integer& deterministic_bound()
{
    static const Integer bound("3317044064679887385961981", 10);
    return bound;
}

bool miller_rabin(const Integer& n, unsigned long base)
{
    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Integer x;
    Integer a = base;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Integer nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

struct FactorState {
    std::vector<std::pair<Integer, unsigned long>> found;
    std::uint64_t budget;
    std::uint64_t used = 0;
    std::mt19937_64 rng;
};

/* Brent's cycle variant of Pollard rho.  Returns a nontrivial divisor of
 * the composite n, or 0 when the budget runs out. */
Integer pollard_brent(const Integer& n, FactorState& st)
{
    if (mpz_even_p(n.get_mpz_t())) return 2;
    constexpr std::uint64_t kBatch = 128;
    while (st.used < st.budget) {
        Integer y = Integer(static_cast<unsigned long>(st.rng() >> 1)) % n;
        const Integer c = Integer(static_cast<unsigned long>(st.rng() >> 1)) % (n - 1) + 1;
        Integer g = 1, q = 1, x, ys;
        std::uint64_t r = 1;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                const std::uint64_t steps = std::min(kBatch, r - k);
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                st.used += steps;
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += steps;
                if (st.used >= st.budget && g == 1) return 0;
            }
            r *= 2;
        }
        if (g == n) {
            /* Batched product overshot; back up one step at a time. */
            do {
                ys = (ys * ys + c) % n;
                Integer diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
                ++st.used;
            } while (g == 1);
        }
        if (g != n) return g;
        /* Degenerate cycle: retry with a new polynomial. */
    }
    return 0;
}

void add_factor(FactorState& st, const Integer& p, unsigned long e)
{
    for (auto& [q, k] : st.found)
        if (q == p) {
            k += e;
            return;
        }
    st.found.emplace_back(p, e);
}

/* Fully factor n > 1 with no prime factor below kTrialLimit. */
void split(const Integer& n, FactorState& st, std::vector<Integer>& stuck)
{
    if (n == 1) return;
    if (is_prime(n)) {
        add_factor(st, n, 1);
        return;
    }
    /* Perfect powers defeat rho; peel them first. */
    for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2) / 20 + 1; ++k) {
        Integer root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
            std::vector<Integer> sub_stuck;
            FactorState sub{{}, st.budget - std::min(st.budget, st.used), 0, std::mt19937_64(st.rng())};
            split(root, sub, sub_stuck);
            st.used += sub.used;
            for (const auto& [p, e] : sub.found) add_factor(st, p, e * k);
            for (auto& s : sub_stuck) {
                Integer pw;
                mpz_pow_ui(pw.get_mpz_t(), s.get_mpz_t(), k);
                stuck.push_back(pw);
            }
            return;
        }
    }
    Integer d = pollard_brent(n, st);
    if (d == 0) {
        stuck.push_back(n);
        return;
    }
    split(d, st, stuck);
    split(Integer(n / d), st, stuck);
}

}  // namespace

bool primality_is_deterministic(const Integer& n)
{
    return abs(n) < deterministic_bound();
}

bool is_prime(const Integer& n)
{
    if (n < 2) return false;
    if (n < kTrialLimit) {
        const auto& ps = small_primes();
        return std::binary_search(ps.begin(), ps.end(), static_cast<std::uint32_t>(n.get_ui()));
    }
    static constexpr std::array<unsigned long, 13> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned long b : kBases)
        if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
    if (n < deterministic_bound()) {
        for (unsigned long b : kBases)
            if (!miller_rabin(n, b)) return false;
        return true;
    }
    /* GMP >= 6.2 runs Baillie-PSW followed by extra Miller-Rabin rounds. */
    return mpz_probab_prime_p(n.get_mpz_t(), 24) != 0;
}

Factorization factor(const Integer& n, const FactorOptions& opts)
{
    if (n == 0) throw DomainError("factor(0) is undefined");
    Factorization out;
    out.sign = n < 0 ? -1 : 1;
    Integer m = abs(n);

    FactorState st{{}, opts.rho_budget, 0, std::mt19937_64(opts.seed)};

    if (m.fits_ulong_p()) {
        unsigned long u = m.get_ui();
        for (std::uint32_t p : small_primes()) {
            if (std::uint64_t(p) * p > u) break;
            if (u % p != 0) continue;
            unsigned long e = 0;
            while (u % p == 0) {
                u /= p;
                ++e;
            }
            st.found.emplace_back(Integer(static_cast<unsigned long>(p)), e);
        }
        m = u;
    } else {
        for (std::uint32_t p : small_primes()) {
            if (m == 1) break;
            if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
            Integer pz = static_cast<unsigned long>(p);
            const unsigned long e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t());
            st.found.emplace_back(pz, e);
        }
    }

    std::vector<Integer> stuck;
    if (m > 1) {
        const bool below_square = m < Integer(static_cast<unsigned long>(kTrialLimit)) * kTrialLimit;
        if (below_square) add_factor(st, m, 1);  // no factor <= 10^6, so prime
        else split(m, st, stuck);
    }

    std::sort(st.found.begin(), st.found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.factors = std::move(st.found);
    if (!stuck.empty()) {
        Integer cofactor = 1;
        for (const auto& s : stuck) cofactor *= s;
        throw FactorizationIncomplete(out, cofactor, st.used);
    }
    return out;
}

}  // namespace dyngcd
