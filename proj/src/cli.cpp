#include "dyngcd/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dyngcd/classify.hpp"
#include "dyngcd/experiments.hpp"
#include "dyngcd/heights.hpp"
#include "dyngcd/poly_io.hpp"
#include "dyngcd/surface.hpp"

namespace dyngcd {

using nlohmann::json;

namespace {

std::string timestamp(bool test_mode)
{
    if (test_mode) return "1970-01-01T00:00:00Z";
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::size_t env_digit_budget()
{
    if (const char* v = std::getenv("DYNGCD_DIGIT_BUDGET")) {
        try {
            return static_cast<std::size_t>(std::stoull(v));
        } catch (const std::exception&) {
            throw DomainError(std::string("DYNGCD_DIGIT_BUDGET is not a number: ") + v);
        }
    }
    return OrbitBudget{}.max_total_digits;
}

bool env_test_mode()
{
    const char* v = std::getenv("DYNGCD_TEST_MODE");
    return v && std::string(v) == "1";
}

std::vector<Integer> parse_prime_list(const std::string& text)
{
    std::vector<Integer> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_integer(item));
    return out;
}

DivisorClass parse_divisor(const std::string& text, int s)
{
    /* "a,b;m1,...,ms" */
    const auto semi = text.find(';');
    const std::string head = text.substr(0, semi);
    const auto comma = head.find(',');
    if (comma == std::string::npos) throw DomainError("divisor needs \"a,b[;m1,...]\"");
    DivisorClass d{parse_rational(head.substr(0, comma)), parse_rational(head.substr(comma + 1)), {}};
    if (semi != std::string::npos) {
        std::stringstream ss(text.substr(semi + 1));
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) d.mults.push_back(parse_rational(item));
    }
    if (d.mults.empty()) d.mults.assign(static_cast<std::size_t>(s), 0);
    if (static_cast<int>(d.mults.size()) != s) throw DomainError("divisor has " + std::to_string(d.mults.size()) +
                                                                  " exceptional coefficients, surface has s = " +
                                                                  std::to_string(s));
    return d;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream f(path);
    if (!f) throw DomainError("cannot write '" + path + "'");
    f << content;
}

json error_object(const std::string& kind, const std::string& message, int code)
{
    return {{"error", kind}, {"message", message}, {"exit_code", code}};
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact experiments on gcds of polynomial and rational-map orbits"};
    app.name("dyngcd");
    /* subcommands pass unknown options such as --test-mode up to the root */
    app.fallthrough();
    app.require_subcommand(1);
    bool test_mode = false;
    app.add_flag("--test-mode", test_mode, "Pin manifest timestamps");

    /* Shared option storage. */
    std::string f_file, g_file, map_file, h_file, a_text, b_text, alpha_text = "0", beta_text = "0", point_text,
                                                                       x_text, y_text, exclude_text, out_path,
                                                                       format = "json", plot_path, report_path,
                                                                       d1_text, d2_text;
    int max_n = 0, steps = 0, deg_max = 1, points = 0, k_max = 1, s_points = 0, max_steps = 256;
    long n_param = 1;
    double epsilon = 0.1, tol = 1e-8, eta = 0.1;
    std::uint64_t seed = 1;
    std::size_t digit_budget = 0;
    bool fin_only = false, modular_only = false;
    int max_degree = SymbolicBudget{}.max_degree;

    auto* gs = app.add_subcommand("gcd-series", "gcd(f^n(a) - alpha, g^n(b) - beta) for n = 0..max-n");
    gs->add_option("--f", f_file, "Map file for f")->required();
    gs->add_option("--g", g_file, "Map file for g")->required();
    gs->add_option("-a", a_text, "Start point for f")->required();
    gs->add_option("-b", b_text, "Start point for g")->required();
    gs->add_option("--alpha", alpha_text, "Target for f");
    gs->add_option("--beta", beta_text, "Target for g");
    gs->add_option("--max-n", max_n, "Largest n")->required();
    gs->add_option("--epsilon", epsilon, "Epsilon recorded with the run");
    gs->add_option("--exclude", exclude_text, "Primes dropped from hgcd_S, comma separated");
    gs->add_option("--out", out_path, "Write the report here instead of standard output");
    gs->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    gs->add_option("--plot-data", plot_path, "Write (n, ratio) columns here");
    gs->add_option("--seed", seed, "Seed recorded in the manifest");
    gs->add_option("--digit-budget", digit_budget, "Digit cap per index");

    auto* ht = app.add_subcommand("height", "Weil height of a point");
    ht->add_option("--point", point_text, "Rational or inf")->required();

    auto* ch = app.add_subcommand("canonical-height", "Canonical height with a certified error bound");
    ch->add_option("--map", map_file, "Map file")->required();
    ch->add_option("--point", point_text, "Rational or inf")->required();
    ch->add_option("--tol", tol, "Tolerance");

    auto* hg = app.add_subcommand("hgcd", "Generalized gcd height of two rationals");
    hg->add_option("-x", x_text, "First rational")->required();
    hg->add_option("-y", y_text, "Second rational")->required();
    hg->add_flag("--fin", fin_only, "Finite places only");
    hg->add_option("--exclude", exclude_text, "Primes to drop (implies --fin)");

    auto* it = app.add_subcommand("iterate", "Orbit of a point");
    it->add_option("--map", map_file, "Map file")->required();
    it->add_option("--start", point_text, "Start point")->required();
    it->add_option("--steps", steps, "Number of steps")->required()->check(CLI::NonNegativeNumber);

    auto* cl = app.add_subcommand("classify", "Hypothesis checks");
    cl->require_subcommand(1);
    auto* cl_ex = cl->add_subcommand("exceptional", "Is the backward orbit finite");
    cl_ex->add_option("--map", map_file, "Map file")->required();
    cl_ex->add_option("--point", point_text, "Point")->required();
    auto* cl_pp = cl->add_subcommand("preperiodic", "Is the forward orbit finite");
    cl_pp->add_option("--map", map_file, "Map file")->required();
    cl_pp->add_option("--point", point_text, "Point")->required();
    cl_pp->add_option("--max-steps", max_steps, "Exact orbit steps");
    cl_pp->add_option("--tol", tol, "Canonical height tolerance");
    auto* cl_mi = cl->add_subcommand("mult-indep", "Multiplicative independence");
    cl_mi->add_option("-a", a_text, "First rational")->required();
    cl_mi->add_option("-b", b_text, "Second rational")->required();
    auto* cl_sp = cl->add_subcommand("special", "Power or Chebyshev conjugacy");
    cl_sp->add_option("--map", map_file, "Polynomial file")->required();
    auto* cl_co = cl->add_subcommand("commutes", "Least k with h o f^k = f^k o h");
    cl_co->set_help_flag("--help", "Print this help message and exit");
    cl_co->add_option("--h", h_file, "Polynomial file for h")->required();
    cl_co->add_option("--f", f_file, "Polynomial file for f")->required();
    cl_co->add_option("--k-max", k_max, "Largest k")->check(CLI::PositiveNumber);
    cl_co->add_option("-a", a_text, "Optional a for the pair condition h(a) = b");
    cl_co->add_option("-b", b_text, "Optional b");
    cl_co->add_option("--alpha", alpha_text, "alpha for h(alpha) = beta");
    cl_co->add_option("--beta", beta_text, "beta");
    cl_co->add_option("--max-degree", max_degree, "Symbolic degree budget");

    auto* pg = app.add_subcommand("probe-genericity", "Search for a low-degree relation along the orbit pair");
    pg->add_option("--f", f_file, "Map file for f")->required();
    pg->add_option("--g", g_file, "Map file for g")->required();
    pg->add_option("-a", a_text, "Start for f")->required();
    pg->add_option("-b", b_text, "Start for g")->required();
    pg->add_option("--deg-max", deg_max, "Exponent bound per variable")->check(CLI::PositiveNumber);
    pg->add_option("--points", points, "Orbit points")->required()->check(CLI::PositiveNumber);
    pg->add_option("--seed", seed, "Seed for the screening primes");
    pg->add_flag("--modular-only", modular_only, "Screen only; skip the exact kernel");

    auto* sf = app.add_subcommand("surface", "Intersection theory on the blowup of P1 x P1");
    sf->require_subcommand(1);
    auto* sf_in = sf->add_subcommand("intersect", "Pairing of two classes \"a,b;m1,...,ms\"");
    sf_in->add_option("--s", s_points, "Blown-up points")->required()->check(CLI::NonNegativeNumber);
    sf_in->add_option("--d1", d1_text, "First class")->required();
    sf_in->add_option("--d2", d2_text, "Second class")->required();
    auto* sf_am = sf->add_subcommand("ample", "Ampleness of the perturbed class");
    sf_am->add_option("--s", s_points, "Blown-up points")->required()->check(CLI::NonNegativeNumber);
    sf_am->add_option("--N", n_param, "Perturbation parameter")->required();

    auto* cd = app.add_subcommand("choose-depth", "Least depth D meeting the depth inequality");
    cd->add_option("--f", f_file, "Map file for f")->required();
    cd->add_option("--g", g_file, "Map file for g")->required();
    cd->add_option("-a", a_text, "Start for f")->required();
    cd->add_option("-b", b_text, "Start for g")->required();
    cd->add_option("--alpha", alpha_text, "Target for f");
    cd->add_option("--beta", beta_text, "Target for g");
    cd->add_option("--epsilon", epsilon, "Epsilon");
    cd->add_option("--max-degree", max_degree, "Symbolic degree budget");

    auto* ap = app.add_subcommand("ap-structure", "Arithmetic progressions in the large-gcd index set");
    ap->add_option("--report", report_path, "JSON report from gcd-series")->required();
    ap->add_option("--eta", eta, "Threshold eta")->required();

    std::vector<const char*> argv{"dyngcd"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        /* help requests exit 0; anything else is reported as JSON only */
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << error_object("usage", e.what(), kExitUsage).dump() << '\n';
        return kExitUsage;
    }

    test_mode = test_mode || env_test_mode();
    const std::string started = timestamp(test_mode);
    std::string command;
    json config = json::object();

    auto manifest = [&] {
        return json{{"command", command},
                    {"config", config},
                    {"seed", seed},
                    {"tool_version", kToolVersion},
                    {"timestamp_start", started},
                    {"timestamp_end", timestamp(test_mode)},
                    {"budgets",
                     {{"digit_budget", digit_budget}, {"symbolic_degree", max_degree}}}};
    };
    auto emit = [&](json result) {
        result["manifest"] = manifest();
        out << result.dump(2) << '\n';
    };

    try {
        if (digit_budget == 0) digit_budget = env_digit_budget();
        const OrbitBudget orbit_budget{digit_budget};

        if (gs->parsed()) {
            command = "gcd-series";
            GcdSeriesConfig c;
            c.f = load_map(f_file);
            c.g = load_map(g_file);
            c.a = ProjPoint::parse(a_text);
            c.b = ProjPoint::parse(b_text);
            c.alpha = parse_rational(alpha_text);
            c.beta = parse_rational(beta_text);
            c.n_max = max_n;
            c.epsilon = epsilon;
            c.exclusions = PlaceSet(parse_prime_list(exclude_text));
            c.digit_budget = digit_budget;
            c.seed = seed;
            config = to_json(c);
            const GcdSeriesReport r = gcd_series(c);
            std::string body;
            if (format == "csv") {
                body = "# manifest: " + manifest().dump() + "\n" + to_csv(r);
            } else {
                json j{{"report", to_json(r)}};
                j["manifest"] = manifest();
                body = j.dump(2) + "\n";
            }
            if (!plot_path.empty()) write_file(plot_path, to_plot_data(r));
            if (out_path.empty()) {
                out << body;
            } else {
                write_file(out_path, body);
                emit({{"written", out_path}, {"rows", r.rows.size()}, {"truncated", r.truncated}});
            }
            if (r.truncated) {
                err << error_object("budget", r.note, kExitBudget).dump() << '\n';
                return kExitBudget;
            }
            return kExitOk;
        }
        if (ht->parsed()) {
            command = "height";
            config = {{"point", point_text}};
            const ProjPoint p = ProjPoint::parse(point_text);
            const Real h = weil_height(p);
            emit({{"point", p.to_string()}, {"height", h.to_string(20)}, {"height_double", h.to_double()}});
            return kExitOk;
        }
        if (ch->parsed()) {
            command = "canonical-height";
            config = {{"map", map_file}, {"point", point_text}, {"tol", tol}};
            const RationalMap f = load_map(map_file);
            try {
                const HeightEstimate h = canonical_height(f, ProjPoint::parse(point_text), tol);
                emit({{"value", h.value.to_string(20)},
                      {"value_double", h.value.to_double()},
                      {"error_bound", h.error_bound.to_double()},
                      {"iterations_used", h.iterations_used},
                      {"preperiodic", h.preperiodic}});
                return kExitOk;
            } catch (const HeightBudgetExceeded& e) {
                json j = error_object("budget", e.what(), kExitBudget);
                j["best_value"] = e.best().value.to_string(20);
                j["best_error_bound"] = e.best().error_bound.to_double();
                err << j.dump() << '\n';
                return kExitBudget;
            }
        }
        if (hg->parsed()) {
            command = "hgcd";
            config = {{"x", x_text}, {"y", y_text}, {"fin", fin_only}, {"exclude", exclude_text}};
            const Rational x = parse_rational(x_text), y = parse_rational(y_text);
            LogValue v;
            if (!exclude_text.empty()) v = hgcd_excluding(PlaceSet(parse_prime_list(exclude_text)), x, y);
            else if (fin_only) v = hgcd_fin(x, y);
            else v = hgcd(x, y);
            json coeffs = json::object();
            for (const auto& [p, c] : v.finite_coeffs()) coeffs[p.get_str()] = c.get_str();
            const Real total = v.to_real();
            emit({{"finite", v.finite_string()},
                  {"finite_coeffs", coeffs},
                  {"arch", v.arch().to_string(20)},
                  {"value", total.to_string(15)},
                  {"value_double", total.to_double()}});
            return kExitOk;
        }
        if (it->parsed()) {
            command = "iterate";
            config = {{"map", map_file}, {"start", point_text}, {"steps", steps}};
            const auto orbit = iterate(load_map(map_file), ProjPoint::parse(point_text), static_cast<std::size_t>(steps),
                                       orbit_budget);
            json pts = json::array();
            for (const auto& p : orbit) pts.push_back(p.to_string());
            emit({{"orbit", pts}});
            return kExitOk;
        }
        if (cl_ex->parsed()) {
            command = "classify exceptional";
            config = {{"map", map_file}, {"point", point_text}};
            emit({{"exceptional", is_exceptional(load_map(map_file), ProjPoint::parse(point_text))}});
            return kExitOk;
        }
        if (cl_pp->parsed()) {
            command = "classify preperiodic";
            config = {{"map", map_file}, {"point", point_text}, {"max_steps", max_steps}, {"tol", tol}};
            PreperiodicBudget b;
            b.max_steps = max_steps;
            b.tol = tol;
            b.max_digits = digit_budget;
            emit({{"preperiodic", is_preperiodic(load_map(map_file), ProjPoint::parse(point_text), b)}});
            return kExitOk;
        }
        if (cl_mi->parsed()) {
            command = "classify mult-indep";
            config = {{"a", a_text}, {"b", b_text}};
            emit({{"independent", mult_indep(parse_rational(a_text), parse_rational(b_text))}});
            return kExitOk;
        }
        if (cl_sp->parsed()) {
            command = "classify special";
            config = {{"map", map_file}};
            const SpecialForm s = special_form(load_map(map_file).as_polynomial());
            emit({{"tag", to_string(s.tag)},
                  {"witness", s.witness ? json(s.witness->to_string()) : json(nullptr)},
                  {"sign", s.sign},
                  {"caveat", s.caveat},
                  {"note", s.note}});
            return kExitOk;
        }
        if (cl_co->parsed()) {
            command = "classify commutes";
            config = {{"h", h_file}, {"f", f_file}, {"k_max", k_max}};
            const Polynomial h = load_map(h_file).as_polynomial(), f = load_map(f_file).as_polynomial();
            const SymbolicBudget budget{max_degree};
            json result;
            if (!a_text.empty() || !b_text.empty()) {
                config["a"] = a_text;
                config["b"] = b_text;
                config["alpha"] = alpha_text;
                config["beta"] = beta_text;
                const CommutingWitness w = commuting_graph(h, f, parse_rational(a_text), parse_rational(b_text),
                                                           parse_rational(alpha_text), parse_rational(beta_text),
                                                           k_max, budget);
                result = {{"k", w.k ? json(*w.k) : json(nullptr)},
                          {"maps_a_to_b", w.maps_a_to_b},
                          {"maps_alpha_to_beta", w.maps_alpha_to_beta},
                          {"holds", w.holds()}};
            } else {
                const auto k = commutes(h, f, k_max, budget);
                result = {{"k", k ? json(*k) : json(nullptr)}};
            }
            emit(result);
            return kExitOk;
        }
        if (pg->parsed()) {
            command = "probe-genericity";
            config = {{"f", f_file}, {"g", g_file}, {"a", a_text}, {"b", b_text},
                      {"deg_max", deg_max}, {"points", points}, {"modular_only", modular_only}};
            ProbeOptions o;
            o.seed = seed;
            o.modular_only = modular_only;
            o.budget = orbit_budget;
            const GenericityProbe r = probe_genericity(load_map(f_file), load_map(g_file), ProjPoint::parse(a_text),
                                                       ProjPoint::parse(b_text), deg_max, points, o);
            json primes = json::array();
            for (auto p : r.primes) primes.push_back(std::to_string(p));
            std::string statement;
            if (r.relation) statement = "relation found and verified on all tested points";
            else if (r.truncated) statement = "orbit budget exhausted before the exact check";
            else if (r.screen_deficient) statement = "screen inconclusive; exact check skipped";
            else statement = "no relation up to total degree " + std::to_string(r.max_total_degree_tested);
            emit({{"relation", r.relation ? json(r.relation->poly.to_string()) : json(nullptr)},
                  {"max_total_degree_tested", r.max_total_degree_tested},
                  {"points_used", r.points_used},
                  {"primes", primes},
                  {"truncated", r.truncated},
                  {"screen_deficient", r.screen_deficient},
                  {"statement", statement}});
            return r.truncated ? kExitBudget : kExitOk;
        }
        if (sf_in->parsed()) {
            command = "surface intersect";
            config = {{"s", s_points}, {"d1", d1_text}, {"d2", d2_text}};
            const BlowupSurface x(s_points);
            const Rational v = intersect(x, parse_divisor(d1_text, s_points), parse_divisor(d2_text, s_points));
            emit({{"value", v.get_str()}});
            return kExitOk;
        }
        if (sf_am->parsed()) {
            command = "surface ample";
            config = {{"s", s_points}, {"N", n_param}};
            const AmpleResult r = is_ample_lemma(BlowupSurface(s_points), n_param);
            emit({{"ample", r.ample},
                  {"witness", r.witness.describe()},
                  {"self_intersection", r.self_intersection.get_str()},
                  {"exceptional_pairing", r.exceptional_pairing.get_str()},
                  {"curve_minimum", r.curve_minimum.get_str()}});
            return kExitOk;
        }
        if (cd->parsed()) {
            command = "choose-depth";
            config = {{"f", f_file},         {"g", g_file},       {"a", a_text},         {"b", b_text},
                      {"alpha", alpha_text}, {"beta", beta_text}, {"epsilon", epsilon}};
            DepthOptions o;
            o.budget.max_degree = max_degree;
            const DepthCertificate cert =
                choose_depth(load_map(f_file), load_map(g_file), ProjPoint::parse(a_text), ProjPoint::parse(b_text),
                             parse_rational(alpha_text), parse_rational(beta_text), epsilon, o);
            emit({{"certificate", to_json(cert)}});
            return kExitOk;
        }
        if (ap->parsed()) {
            command = "ap-structure";
            config = {{"report", report_path}, {"eta", eta}};
            std::ifstream in(report_path);
            if (!in) throw DomainError("cannot open report '" + report_path + "'");
            json j;
            try {
                in >> j;
            } catch (const json::exception& e) {
                throw DomainError("report '" + report_path + "' is not JSON: " + e.what());
            }
            const IndexSet set = large_index_set(report_from_json(j), eta);
            emit({{"indices", set.indices}, {"structure", to_json(ap_structure(set))}});
            return kExitOk;
        }
    } catch (const HypothesisViolation& e) {
        err << error_object("hypothesis", e.what(), kExitHypothesis).dump() << '\n';
        return kExitHypothesis;
    } catch (const BudgetExceeded& e) {
        json j = error_object("budget", e.what(), kExitBudget);
        j["reached"] = e.reached();
        err << j.dump() << '\n';
        return kExitBudget;
    } catch (const Indeterminate& e) {
        err << error_object("indeterminate", e.what(), kExitBudget).dump() << '\n';
        return kExitBudget;
    } catch (const DomainError& e) {
        err << error_object("domain", e.what(), kExitUsage).dump() << '\n';
        return kExitUsage;
    }
    err << error_object("usage", "no subcommand", kExitUsage).dump() << '\n';
    return kExitUsage;
}

}  // namespace dyngcd
