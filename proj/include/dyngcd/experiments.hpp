#ifndef DYNGCD_EXPERIMENTS_HPP
#define DYNGCD_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dyngcd/heights.hpp"
#include "dyngcd/rational_map.hpp"

namespace dyngcd {

struct GcdRow;

struct GcdSeriesConfig {
    RationalMap f{Polynomial::monomial(1, 2)};
    RationalMap g{Polynomial::monomial(1, 2)};
    ProjPoint a;
    ProjPoint b;
    Rational alpha;
    Rational beta;
    int n_max = 1;
    double epsilon = 0.1;
    PlaceSet exclusions;
    /// Cap on the digits of f^n(a) - alpha plus g^n(b) - beta at one index.
    std::size_t digit_budget = 10'000'000;
    std::uint64_t seed = 0;
    /// Called as each row completes.
    std::function<void(const GcdRow&)> on_row;
};

/// Throws DomainError on n_max < 1, unequal degrees or degree < 2.
void validate(const GcdSeriesConfig& c);

struct GcdRow {
    int n = 0;
    std::size_t digits_f = 0;
    std::size_t digits_g = 0;
    /// Integral data: Euclidean gcd.  Otherwise the gcd of numerators, whose
    /// log is the finite part of hgcd.
    Integer gcd;
    /// log gcd, or hgcd (finite + archimedean) for rational data.
    Real log_gcd;
    /// log_gcd / d^n.
    Real ratio;
    Real hgcd_fin;
    Real hgcd_S;
    /// "zero-collision", "both-zero", "rational".
    std::vector<std::string> flags;
    /// Zero collisions are kept out of ratio statistics and index sets.
    bool excluded = false;
};

struct GcdSeriesReport {
    int degree = 0;
    int n_max = 0;
    bool integral = true;
    std::vector<GcdRow> rows;
    bool truncated = false;
    /// Last n with a completed row, -1 if none.
    int last_completed = -1;
    std::string note;
};

/// Rows n = 0..n_max of gcd(f^n(a) - alpha, g^n(b) - beta) from exact orbits.
GcdSeriesReport gcd_series(const GcdSeriesConfig& config);

/// Exact hgcd_fin as an integer: the "gcd" with the zero conventions.
/// Returns 0 when both vanish.
Integer gcd_with_conventions(const Rational& x, const Rational& y);

/* --- depth selection --- */

struct DepthOptions {
    int max_depth = 32;
    SymbolicBudget budget{};
    double height_tol = 1e-10;
};

struct DepthCertificate {
    int depth = 0;
    int degree = 0;
    /// max(M_f, M_g); each includes the multiplicity at infinity.
    int m_prime = 0;
    int m_f = 0;
    int m_g = 0;
    Real hhat_f;
    Real hhat_f_err;
    Real hhat_g;
    Real hhat_g_err;
    Real c_f;
    Real c_g;
    /// 2 (C_f + C_g) / (d - 1).
    Real c;
    /// M'/d^D (4(hhat_f + err) + 4(hhat_g + err) + C).
    Real lhs;
    double epsilon = 0;
};

/// Largest root multiplicity of F1 - alpha F2 over P^1 for the lowest-terms
/// F1/F2 of `map`, counting infinity.
int max_fiber_multiplicity(const RationalMap& map, const Rational& alpha);

/// Least D with lhs < epsilon / 2.  Throws HypothesisViolation when alpha or
/// beta is exceptional, BudgetExceeded when no depth fits the budget.
DepthCertificate choose_depth(const RationalMap& f, const RationalMap& g, const ProjPoint& a, const ProjPoint& b,
                              const Rational& alpha, const Rational& beta, double epsilon,
                              const DepthOptions& opts = {});

/// Recomputes the inequality from the recorded numbers only.
bool replay(const DepthCertificate& cert);

/* --- index sets and progressions --- */

struct IndexSet {
    std::vector<int> indices;
    int n_max = 0;
};

/// Rows with log_gcd >= eta d^n.  Throws DomainError on eta <= 0.
IndexSet large_index_set(const GcdSeriesReport& report, double eta);

struct Progression {
    int start = 0;
    int step = 1;
    friend bool operator==(const Progression&, const Progression&) = default;
};

struct ApStructure {
    std::vector<Progression> progressions;
    std::vector<int> residual;
    int n_max = 0;
    /// Always "window-consistent": a fit to the window, not an asymptotic claim.
    std::string label = "window-consistent";

    /// Members of the progressions (up to n_max) together with the residual.
    std::vector<int> expand() const;
};

/* Greedy over moduli 1..floor(sqrt(n_max)): for each residue class the
 * earliest start from which every class member up to n_max lies in I, kept
 * when it has at least three terms and adds something new.  Uncovered indices
 * form the residual, so the reconstruction is exact on the window. */
ApStructure ap_structure(const IndexSet& set);

/* --- Mobius quasi-invariance --- */

/// sum_p max(c_p(alpha), c_p(beta)) log p, built from the factorization of
/// sigma into translations, dilations and one inversion.  Throws DomainError
/// when sigma sends alpha or beta to infinity.
LogValue mobius_lemma_constant(const Mobius& sigma, const Rational& alpha, const Rational& beta);

struct MobiusProbeResult {
    Real max_deviation;
    std::size_t sample = 0;
    int n = 0;
    /// Max deviation per sample; samples that hit infinity or a zero
    /// collision are skipped and recorded as -1.
    std::vector<double> per_sample;
    std::size_t skipped = 0;
};

MobiusProbeResult mobius_invariance_probe(const RationalMap& f, const RationalMap& g, const Mobius& sigma,
                                          const Mobius& tau, const Rational& alpha, const Rational& beta,
                                          const std::vector<std::pair<ProjPoint, ProjPoint>>& samples, int n_max);

/* --- serialization --- */

struct ReportFormat {
    /// JSON replaces integers of at least this many digits by their digit count.
    std::size_t json_elide_digits = 1'000'000;
    /// CSV does the same from this size.
    std::size_t csv_elide_digits = 10'000;
};

nlohmann::json to_json(const GcdSeriesConfig& c);
/// Inverse of to_json(config); the row callback is left empty.
GcdSeriesConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GcdSeriesReport& r, const ReportFormat& fmt = {});
std::string to_csv(const GcdSeriesReport& r, const ReportFormat& fmt = {});
/// Two columns "n ratio", one row per non-excluded row.
std::string to_plot_data(const GcdSeriesReport& r);
/// Reads what to_json wrote (elided gcds come back as 0).
GcdSeriesReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DepthCertificate& c);
nlohmann::json to_json(const ApStructure& s);

}  // namespace dyngcd

#endif
