#include "dyngcd/experiments.hpp"

#include <algorithm>

#include "dyngcd/classify.hpp"

namespace dyngcd {

void validate(const GcdSeriesConfig& c)
{
    if (c.n_max < 1) throw DomainError("n_max must be >= 1");
    if (!(c.epsilon > 0)) throw DomainError("epsilon must be positive");
    if (c.f.degree() != c.g.degree())
        throw DomainError("deg f != deg g; the gcd bound is trivial for unequal degrees");
    if (c.f.degree() < 2) throw DomainError("maps must have degree >= 2");
}

Integer gcd_with_conventions(const Rational& x, const Rational& y)
{
    if (x == 0 && y == 0) return 0;
    return hgcd_fin_integer(x, y);
}

namespace {

Integer power(long d, int n)
{
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(n));
    return out;
}

std::size_t value_digits(const Rational& v)
{
    return v.get_den() == 1 ? decimal_digits(Integer(v.get_num())) : decimal_digits(Integer(v.get_num())) + decimal_digits(Integer(v.get_den()));
}

Real log_or_zero(const Integer& g)
{
    return g == 0 ? Real(kDefaultPrecision) : Real::log_abs(g, kDefaultPrecision);
}

bool is_integer(const ProjPoint& p) { return !p.is_infinity() && p.hy() == 1; }

}  // namespace

GcdSeriesReport gcd_series(const GcdSeriesConfig& c)
{
    validate(c);
    GcdSeriesReport r;
    r.degree = c.f.degree();
    r.n_max = c.n_max;
    r.integral = c.f.is_integral_polynomial() && c.g.is_integral_polynomial() && is_integer(c.a) && is_integer(c.b) &&
                 c.alpha.get_den() == 1 && c.beta.get_den() == 1;

    ProjPoint pf = c.a, pg = c.b;
    for (int n = 0; n <= c.n_max; ++n) {
        if (n > 0) {
            pf = evaluate(c.f, pf);
            pg = evaluate(c.g, pg);
        }
        if (pf.is_infinity() || pg.is_infinity())
            throw DomainError("orbit reaches infinity at n = " + std::to_string(n));
        const Rational x = pf.value() - c.alpha;
        const Rational y = pg.value() - c.beta;
        GcdRow row;
        row.n = n;
        row.digits_f = value_digits(x);
        row.digits_g = value_digits(y);
        if (row.digits_f + row.digits_g > c.digit_budget) {
            r.truncated = true;
            r.note = "digit budget " + std::to_string(c.digit_budget) + " exceeded at n = " + std::to_string(n) + " (" +
                     std::to_string(row.digits_f + row.digits_g) + " digits)";
            break;
        }
        if (!r.integral) row.flags.push_back("rational");
        if (x == 0 || y == 0) {
            row.flags.push_back("zero-collision");
            if (x == 0 && y == 0) row.flags.push_back("both-zero");
            row.excluded = true;
        }
        if (x == 0 && y == 0) {
            row.gcd = 0;
            row.log_gcd = row.ratio = row.hgcd_fin = row.hgcd_S = Real(kDefaultPrecision);
        } else {
            if (r.integral) {
                mpz_gcd(row.gcd.get_mpz_t(), x.get_num_mpz_t(), y.get_num_mpz_t());
            } else {
                row.gcd = hgcd_fin_integer(x, y);
            }
            row.hgcd_fin = log_or_zero(row.gcd);
            row.hgcd_S = log_or_zero(strip_places(row.gcd, c.exclusions));
            row.log_gcd = row.hgcd_fin;
            if (!r.integral) row.log_gcd += hgcd_arch(x, y);
            row.ratio = row.log_gcd / Real(power(r.degree, n), kDefaultPrecision);
        }
        r.rows.push_back(row);
        r.last_completed = n;
        if (c.on_row) c.on_row(r.rows.back());
    }
    return r;
}

int max_fiber_multiplicity(const RationalMap& map, const Rational& alpha)
{
    const Polynomial h = map.num() - alpha * map.den();
    if (h.is_zero()) throw DomainError("map is constant");
    const int at_infinity = map.degree() - h.degree();
    return std::max(max_root_multiplicity(h), at_infinity);
}

namespace {

Real depth_lhs(int m_prime, int degree, int depth, const Real& hf, const Real& ef, const Real& hg, const Real& eg,
               const Real& c)
{
    const Real four(4.0, kDefaultPrecision);
    Real sum = four * (hf + ef) + four * (hg + eg) + c;
    return Real(Integer(m_prime), kDefaultPrecision) * sum / Real(power(degree, depth), kDefaultPrecision);
}

}  // namespace

DepthCertificate choose_depth(const RationalMap& f, const RationalMap& g, const ProjPoint& a, const ProjPoint& b,
                              const Rational& alpha, const Rational& beta, double epsilon, const DepthOptions& opts)
{
    if (f.degree() != g.degree()) throw DomainError("deg f != deg g");
    const int d = f.degree();
    if (d < 2) throw DomainError("maps must have degree >= 2");
    if (!(epsilon > 0)) throw DomainError("epsilon must be positive");
    if (is_exceptional(f, alpha))
        throw HypothesisViolation("alpha = " + alpha.get_str() + " is exceptional for f = " + f.to_string());
    if (is_exceptional(g, beta))
        throw HypothesisViolation("beta = " + beta.get_str() + " is exceptional for g = " + g.to_string());

    DepthCertificate cert;
    cert.degree = d;
    cert.epsilon = epsilon;
    const HeightEstimate hf = canonical_height(f, a, opts.height_tol);
    const HeightEstimate hg = canonical_height(g, b, opts.height_tol);
    cert.hhat_f = hf.value;
    cert.hhat_f_err = hf.error_bound;
    cert.hhat_g = hg.value;
    cert.hhat_g_err = hg.error_bound;
    cert.c_f = discrepancy_bound(f);
    cert.c_g = discrepancy_bound(g);
    cert.c = Real(2.0, kDefaultPrecision) * (cert.c_f + cert.c_g) / Real(static_cast<double>(d - 1), kDefaultPrecision);
    const Real half_eps(epsilon / 2, kDefaultPrecision);

    const bool same = f == g && alpha == beta;
    std::optional<RationalMap> fd, gd;
    for (int depth = 1; depth <= opts.max_depth; ++depth) {
        const Integer deg = power(d, depth);
        if (deg > opts.budget.max_degree)
            throw BudgetExceeded("no admissible depth within symbolic degree budget " +
                                     std::to_string(opts.budget.max_degree),
                                 static_cast<std::size_t>(opts.budget.max_degree));
        fd = depth == 1 ? f : compose(f, *fd, opts.budget);
        if (!same) gd = depth == 1 ? g : compose(g, *gd, opts.budget);
        cert.depth = depth;
        cert.m_f = max_fiber_multiplicity(*fd, alpha);
        cert.m_g = same ? cert.m_f : max_fiber_multiplicity(*gd, beta);
        cert.m_prime = std::max(cert.m_f, cert.m_g);
        cert.lhs = depth_lhs(cert.m_prime, d, depth, cert.hhat_f, cert.hhat_f_err, cert.hhat_g, cert.hhat_g_err, cert.c);
        if (cert.lhs < half_eps) return cert;
    }
    throw BudgetExceeded("no admissible depth up to " + std::to_string(opts.max_depth),
                         static_cast<std::size_t>(opts.max_depth));
}

bool replay(const DepthCertificate& cert)
{
    if (cert.degree < 2 || cert.depth < 1 || cert.m_prime < std::max(cert.m_f, cert.m_g)) return false;
    const Real lhs = depth_lhs(cert.m_prime, cert.degree, cert.depth, cert.hhat_f, cert.hhat_f_err, cert.hhat_g,
                               cert.hhat_g_err, cert.c);
    return lhs < Real(cert.epsilon / 2, kDefaultPrecision);
}

IndexSet large_index_set(const GcdSeriesReport& report, double eta)
{
    if (!(eta > 0)) throw DomainError("eta must be positive");
    IndexSet out;
    out.n_max = report.truncated ? report.last_completed : report.n_max;
    for (const auto& row : report.rows) {
        if (row.excluded) continue;
        const Real bound = Real(eta, kDefaultPrecision) * Real(power(report.degree, row.n), kDefaultPrecision);
        if (row.log_gcd >= bound) out.indices.push_back(row.n);
    }
    return out;
}

std::vector<int> ApStructure::expand() const
{
    std::vector<int> out = residual;
    for (const auto& p : progressions)
        for (int k = p.start; k <= n_max; k += p.step) out.push_back(k);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ApStructure ap_structure(const IndexSet& set)
{
    ApStructure out;
    out.n_max = set.n_max;
    if (set.n_max < 0) throw DomainError("window bound must be >= 0");
    std::vector<char> in(static_cast<std::size_t>(set.n_max) + 1, 0), covered(in.size(), 0);
    for (int i : set.indices) {
        if (i < 0 || i > set.n_max) throw DomainError("index " + std::to_string(i) + " outside the window");
        in[static_cast<std::size_t>(i)] = 1;
    }
    int max_mod = 1;
    while ((max_mod + 1) * (max_mod + 1) <= set.n_max) ++max_mod;
    for (int m = 1; m <= max_mod; ++m)
        for (int r = 0; r < m; ++r) {
            /* Walk the class downward from the top of the window. */
            int top = set.n_max - ((set.n_max - r) % m + m) % m;
            if (top < r) continue;
            int start = -1;
            for (int k = top; k >= r && in[static_cast<std::size_t>(k)]; k -= m) start = k;
            if (start < 0 || (top - start) / m + 1 < 3) continue;
            bool adds = false;
            for (int k = start; k <= top && !adds; k += m) adds = !covered[static_cast<std::size_t>(k)];
            if (!adds) continue;
            out.progressions.push_back({start, m});
            for (int k = start; k <= top; k += m) covered[static_cast<std::size_t>(k)] = 1;
        }
    for (int i = 0; i <= set.n_max; ++i)
        if (in[static_cast<std::size_t>(i)] && !covered[static_cast<std::size_t>(i)]) out.residual.push_back(i);
    return out;
}

namespace {

void add_valuations(std::map<Integer, Rational>& c, const Rational& v, long weight)
{
    for (const auto* part : {&v.get_num(), &v.get_den()}) {
        const Integer n = abs(Integer(*part));
        if (n <= 1) continue;
        for (const auto& [p, e] : factor(n).factors) c[p] += Rational(weight * static_cast<long>(e));
    }
}

struct Side {
    Rational point;
    std::map<Integer, Rational> c;
};

}  // namespace

LogValue mobius_lemma_constant(const Mobius& sigma, const Rational& alpha, const Rational& beta)
{
    /* Per prime, translations cost nothing, a dilation by l costs |v_p(l)|,
     * an inversion at a point g costs 2|v_p(g)|. */
    std::vector<Side> sides{{alpha, {}}, {beta, {}}};
    auto translate = [&](const Rational& t) {
        for (auto& s : sides) s.point += t;
    };
    auto dilate = [&](const Rational& l) {
        for (auto& s : sides) {
            add_valuations(s.c, l, 1);
            s.point *= l;
        }
    };
    auto invert = [&] {
        for (auto& s : sides) {
            if (s.point == 0) throw DomainError("sigma sends a base point to infinity");
            add_valuations(s.c, s.point, 2);
            s.point = 1 / s.point;
        }
    };
    const Rational& p = sigma.p();
    const Rational& q = sigma.q();
    const Rational& r = sigma.r();
    const Rational& s = sigma.s();
    if (r == 0) {
        dilate(p / s);
        translate(q / s);
    } else {
        translate(s / r);
        invert();
        dilate(-sigma.determinant() / (r * r));
        translate(p / r);
    }
    LogValue out;
    std::map<Integer, Rational> merged = sides[0].c;
    for (const auto& [prime, v] : sides[1].c) merged[prime] = std::max(merged[prime], v);
    for (const auto& [prime, v] : merged) out.add_log_prime(prime, v);
    return out;
}

MobiusProbeResult mobius_invariance_probe(const RationalMap& f, const RationalMap& g, const Mobius& sigma,
                                          const Mobius& tau, const Rational& alpha, const Rational& beta,
                                          const std::vector<std::pair<ProjPoint, ProjPoint>>& samples, int n_max)
{
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    const ProjPoint sa = sigma(ProjPoint(alpha)), tb = tau(ProjPoint(beta));
    if (sa.is_infinity() || tb.is_infinity()) throw DomainError("sigma or tau sends a base point to infinity");
    const RationalMap fs = conjugate(f, sigma), gt = conjugate(g, tau);
    const auto n_steps = static_cast<std::size_t>(n_max);

    MobiusProbeResult out;
    out.max_deviation = Real(kDefaultPrecision);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& [a, b] = samples[k];
        const auto of = iterate(f, a, n_steps), og = iterate(g, b, n_steps);
        const auto ofs = iterate(fs, sigma(a), n_steps), ogt = iterate(gt, tau(b), n_steps);
        double best = -1;
        for (std::size_t n = 0; n <= n_steps; ++n) {
            if (of[n].is_infinity() || og[n].is_infinity() || ofs[n].is_infinity() || ogt[n].is_infinity()) continue;
            const Rational x = of[n].value() - alpha, y = og[n].value() - beta;
            const Rational xs = ofs[n].value() - sa.value(), ys = ogt[n].value() - tb.value();
            if (x == 0 || y == 0 || xs == 0 || ys == 0) continue;
            Rational quotient(hgcd_fin_integer(xs, ys), hgcd_fin_integer(x, y));
            quotient.canonicalize();
            Real dev = Real::log_abs(quotient, kDefaultPrecision).abs();
            best = std::max(best, dev.to_double());
            if (dev > out.max_deviation) {
                out.max_deviation = dev;
                out.sample = k;
                out.n = static_cast<int>(n);
            }
        }
        if (best < 0) ++out.skipped;
        out.per_sample.push_back(best);
    }
    return out;
}

}  // namespace dyngcd
