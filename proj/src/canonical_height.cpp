#include <algorithm>
#include <climits>
#include <stdexcept>
#include <map>

#include "dyngcd/heights.hpp"

namespace dyngcd {

namespace {

/* Closed interval with outward rounding. */
struct Interval {
    Real lo, hi;
    explicit Interval(mpfr_prec_t prec) : lo(prec), hi(prec) {}
};

Interval from_integer(const Integer& v, mpfr_prec_t prec)
{
    Interval out(prec);
    mpfr_set_z(out.lo.get(), v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(out.hi.get(), v.get_mpz_t(), MPFR_RNDU);
    return out;
}

Interval mul(const Interval& a, const Interval& b, mpfr_prec_t prec)
{
    Interval out(prec);
    Real t(prec);
    bool first = true;
    for (const Real* x : {&a.lo, &a.hi})
        for (const Real* y : {&b.lo, &b.hi}) {
            mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), out.lo.get())) mpfr_set(out.lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), out.hi.get())) mpfr_set(out.hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    return out;
}

void add_scaled(Interval& acc, const Interval& a, const Integer& c)
{
    const mpfr_prec_t prec = acc.lo.precision();
    Real lo(prec), hi(prec);
    if (c >= 0) {
        mpfr_mul_z(lo.get(), a.lo.get(), c.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(hi.get(), a.hi.get(), c.get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_mul_z(lo.get(), a.hi.get(), c.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(hi.get(), a.lo.get(), c.get_mpz_t(), MPFR_RNDU);
    }
    mpfr_add(acc.lo.get(), acc.lo.get(), lo.get(), MPFR_RNDD);
    mpfr_add(acc.hi.get(), acc.hi.get(), hi.get(), MPFR_RNDU);
}

/// Lower and upper bounds of |v| over the interval.
void magnitude(const Interval& a, Real& mig, Real& mag)
{
    Real alo = a.lo.abs(), ahi = a.hi.abs();
    mag = max(alo, ahi);
    if (a.lo.sign() <= 0 && a.hi.sign() >= 0) mig = Real(mag.precision());
    else mig = min(alo, ahi);
}

long exponent_of(const Interval& a)
{
    Real mig(a.lo.precision()), mag(a.lo.precision());
    magnitude(a, mig, mag);
    return mag.is_zero() ? LONG_MIN : mpfr_get_exp(mag.get());
}

std::vector<Integer> lift(const Polynomial& p, int d)
{
    std::vector<Integer> c(static_cast<std::size_t>(d) + 1, 0);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i] = p.coeffs()[i].get_num();
    return c;
}

Interval eval_lift(const std::vector<Integer>& c, const std::vector<Interval>& xp, const std::vector<Interval>& yp,
                   mpfr_prec_t prec)
{
    const std::size_t d = c.size() - 1;
    Interval acc(prec);
    mpfr_set_zero(acc.lo.get(), 1);
    mpfr_set_zero(acc.hi.get(), 1);
    for (std::size_t i = 0; i <= d; ++i) {
        if (c[i] == 0) continue;
        add_scaled(acc, mul(xp[i], yp[d - i], prec), c[i]);
    }
    return acc;
}

/* Bounds on log||F^N(z)||_inf / d^N.  Returns false when the enclosure
 * loses the origin (precision too low). */
bool arch_bounds(const std::vector<Integer>& f1, const std::vector<Integer>& f2, const ProjPoint& pt, int n,
                 mpfr_prec_t prec, Real& lo_out, Real& hi_out)
{
    const std::size_t d = f1.size() - 1;
    Interval x = from_integer(pt.hx(), prec), y = from_integer(pt.hy(), prec);
    long shift = 0;
    auto rescale = [&] {
        const long e = std::max(exponent_of(x), exponent_of(y));
        if (e == LONG_MIN) return false;
        for (Interval* v : {&x, &y}) {
            mpfr_mul_2si(v->lo.get(), v->lo.get(), -e, MPFR_RNDD);
            mpfr_mul_2si(v->hi.get(), v->hi.get(), -e, MPFR_RNDU);
        }
        shift += e;
        return true;
    };
    if (!rescale()) return false;
    for (int step = 0; step < n; ++step) {
        std::vector<Interval> xp, yp;
        xp.reserve(d + 1);
        yp.reserve(d + 1);
        xp.push_back(from_integer(1, prec));
        yp.push_back(from_integer(1, prec));
        for (std::size_t i = 1; i <= d; ++i) {
            xp.push_back(mul(xp.back(), x, prec));
            yp.push_back(mul(yp.back(), y, prec));
        }
        Interval nx = eval_lift(f1, xp, yp, prec), ny = eval_lift(f2, xp, yp, prec);
        x = std::move(nx);
        y = std::move(ny);
        /* Homogeneity: F(2^s w) = 2^(d s) F(w). */
        shift *= static_cast<long>(d);
        if (!rescale()) return false;
    }
    Real mig_x(prec), mag_x(prec), mig_y(prec), mag_y(prec);
    magnitude(x, mig_x, mag_x);
    magnitude(y, mig_y, mag_y);
    Real lower = max(mig_x, mig_y), upper = max(mag_x, mag_y);
    if (lower.sign() <= 0) return false;

    Real l2_lo(prec), l2_hi(prec);
    mpfr_const_log2(l2_lo.get(), MPFR_RNDD);
    mpfr_const_log2(l2_hi.get(), MPFR_RNDU);
    Real s_lo(prec), s_hi(prec);
    if (shift >= 0) {
        mpfr_mul_si(s_lo.get(), l2_lo.get(), shift, MPFR_RNDD);
        mpfr_mul_si(s_hi.get(), l2_hi.get(), shift, MPFR_RNDU);
    } else {
        mpfr_mul_si(s_lo.get(), l2_hi.get(), shift, MPFR_RNDD);
        mpfr_mul_si(s_hi.get(), l2_lo.get(), shift, MPFR_RNDU);
    }
    Real log_lo(prec), log_hi(prec);
    mpfr_log(log_lo.get(), lower.get(), MPFR_RNDD);
    mpfr_log(log_hi.get(), upper.get(), MPFR_RNDU);
    mpfr_add(log_lo.get(), log_lo.get(), s_lo.get(), MPFR_RNDD);
    mpfr_add(log_hi.get(), log_hi.get(), s_hi.get(), MPFR_RNDU);

    Integer dn;
    mpz_ui_pow_ui(dn.get_mpz_t(), d, static_cast<unsigned long>(n));
    lo_out = Real(prec);
    hi_out = Real(prec);
    mpfr_div_z(lo_out.get(), log_lo.get(), dn.get_mpz_t(), MPFR_RNDD);
    mpfr_div_z(hi_out.get(), log_hi.get(), dn.get_mpz_t(), MPFR_RNDU);
    return true;
}

Integer eval_mod(const std::vector<Integer>& c, const Integer& x, const Integer& y, const Integer& m)
{
    const std::size_t d = c.size() - 1;
    /* Horner in x with y powers accumulated from the top. */
    Integer h = c[d] % m, ypow = 1;
    for (std::size_t k = d; k-- > 0;) {
        ypow = ypow * y % m;
        h = (h * x + c[k] * ypow) % m;
    }
    if (h < 0) h += m;
    return h;
}

/* -sum_n e_n / d^n where p^(e_n) is the content lost at step n. */
Rational padic_loss(const std::vector<Integer>& f1, const std::vector<Integer>& f2, const ProjPoint& pt, int n,
                    const Integer& p, unsigned long vdelta)
{
    const long d = static_cast<long>(f1.size()) - 1;
    long width = static_cast<long>(vdelta) * (n + 1) + 2;
    Integer mod;
    mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(width));
    Integer x = pt.hx() % mod, y = pt.hy() % mod;
    Rational loss = 0;
    Integer dn = 1;
    for (int step = 1; step <= n; ++step) {
        Integer a = eval_mod(f1, x, y, mod), b = eval_mod(f2, x, y, mod);
        auto val = [&](const Integer& v) {
            return v == 0 ? width : static_cast<long>(valuation(p, v));
        };
        const long e = std::min(val(a), val(b));
        if (e > static_cast<long>(vdelta) || e >= width)
            throw std::logic_error("p-adic content loss exceeds the resultant bound");
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
        width -= e;
        mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(width));
        x = (a / pe) % mod;
        y = (b / pe) % mod;
        dn *= d;
        loss -= Rational(e, dn);
    }
    loss.canonicalize();
    return loss;
}

}  // namespace

HeightEstimate canonical_height(const RationalMap& f, const ProjPoint& pt, double tol, const HeightOptions& opts)
{
    const int d = f.degree();
    if (d < 2) throw DomainError("canonical height needs degree >= 2");
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    const mpfr_prec_t prec0 = opts.precision;

    const DiscrepancyData data = discrepancy_data(f, prec0);

    /* An orbit that revisits a point certifies h^ = 0 exactly. */
    {
        std::map<ProjPoint, int> seen;
        ProjPoint cur = pt;
        std::size_t held = 0;
        const double escape = data.bound.to_double() / (d - 1) + 1e-9;
        for (int k = 0; k <= opts.cycle_scan_steps; ++k) {
            if (seen.count(cur)) return {Real(prec0), Real(prec0), k, true};
            seen.emplace(cur, k);
            held += point_digits(cur);
            if (held > opts.cycle_scan_digits || weil_height(cur, 53).to_double() > escape + 1.0) break;
            cur = evaluate(f, cur);
        }
    }

    /* Tail: |h^ - h(F^N z)/d^N| <= (C_inf + log delta) / ((d-1) d^N). */
    Real tail_const = max(data.log_upper, data.log_lower);
    if (tail_const.sign() < 0) tail_const = Real(prec0);
    tail_const += Real::log_abs(data.delta, prec0, MPFR_RNDU);
    Real tail = tail_const / Real(static_cast<double>(d - 1), prec0);
    const Real half_tol(tol / 2, prec0);
    int n = 0;
    bool truncated = false;
    while (tail > half_tol) {
        if (n == opts.max_iterations) {
            truncated = true;
            break;
        }
        tail /= Real(static_cast<double>(d), prec0);
        ++n;
    }

    const auto f1 = lift(f.num(), d), f2 = lift(f.den(), d);

    /* Finite places: only primes of delta can shrink the content. */
    std::vector<std::pair<Integer, Rational>> losses;
    if (data.delta != 1)
        for (const auto& [p, e] : factor(data.delta).factors) {
            Rational c = padic_loss(f1, f2, pt, n, p, e);
            if (c != 0) losses.emplace_back(p, c);
        }

    mpfr_prec_t prec = prec0;
    HeightEstimate best{Real(prec0), Real::positive_infinity(prec0), n, false};
    while (true) {
        Real lo(prec), hi(prec);
        const bool ok = arch_bounds(f1, f2, pt, n, prec, lo, hi);
        if (ok) {
            for (const auto& [p, c] : losses) {
                Real lp_lo = Real::log_abs(p, prec, MPFR_RNDD), lp_hi = Real::log_abs(p, prec, MPFR_RNDU);
                /* c < 0 always. */
                Real add_lo(prec), add_hi(prec);
                mpfr_mul_q(add_lo.get(), lp_hi.get(), c.get_mpq_t(), MPFR_RNDD);
                mpfr_mul_q(add_hi.get(), lp_lo.get(), c.get_mpq_t(), MPFR_RNDU);
                mpfr_add(lo.get(), lo.get(), add_lo.get(), MPFR_RNDD);
                mpfr_add(hi.get(), hi.get(), add_hi.get(), MPFR_RNDU);
            }
            Real value(prec), err(prec);
            mpfr_add(value.get(), lo.get(), hi.get(), MPFR_RNDN);
            mpfr_div_2ui(value.get(), value.get(), 1, MPFR_RNDN);
            Real w1(prec), w2(prec);
            mpfr_sub(w1.get(), value.get(), lo.get(), MPFR_RNDU);
            mpfr_sub(w2.get(), hi.get(), value.get(), MPFR_RNDU);
            err = max(w1, w2);
            mpfr_add(err.get(), err.get(), tail.with_precision(prec, MPFR_RNDU).get(), MPFR_RNDU);
            /* h^ >= 0, so clip the enclosure from below. */
            if (value.sign() < 0 && err > value.abs()) {
                Real upper = value + err;
                value = upper / Real(2.0, prec);
                err = value;
            }
            best = {value, err, n, false};
            if (!truncated && err <= Real(tol, prec)) return best;
            if (truncated) break;
        }
        if (prec * 2 > opts.max_precision) break;
        prec *= 2;
    }
    throw HeightBudgetExceeded("canonical height could not reach tolerance within the iteration/precision budget",
                               best, static_cast<std::size_t>(prec));
}

}  // namespace dyngcd
