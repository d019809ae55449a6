#include <sstream>

#include "dyngcd/experiments.hpp"
#include "dyngcd/poly_io.hpp"

namespace dyngcd {

using nlohmann::json;

json to_json(const GcdSeriesConfig& c)
{
    json ex = json::array();
    for (const auto& p : c.exclusions.primes()) ex.push_back(p.get_str());
    return {{"f", to_json(c.f)},
            {"g", to_json(c.g)},
            {"a", c.a.to_string()},
            {"b", c.b.to_string()},
            {"alpha", c.alpha.get_str()},
            {"beta", c.beta.get_str()},
            {"n_max", c.n_max},
            {"epsilon", c.epsilon},
            {"exclusions", ex},
            {"digit_budget", c.digit_budget},
            {"seed", c.seed}};
}

GcdSeriesConfig config_from_json(const json& j)
{
    try {
        GcdSeriesConfig c;
        c.f = map_from_json(j.at("f"));
        c.g = map_from_json(j.at("g"));
        c.a = ProjPoint::parse(j.at("a").get<std::string>());
        c.b = ProjPoint::parse(j.at("b").get<std::string>());
        c.alpha = parse_rational(j.at("alpha").get<std::string>());
        c.beta = parse_rational(j.at("beta").get<std::string>());
        c.n_max = j.at("n_max").get<int>();
        c.epsilon = j.at("epsilon").get<double>();
        std::vector<Integer> ex;
        for (const auto& p : j.value("exclusions", json::array())) ex.push_back(parse_integer(p.get<std::string>()));
        c.exclusions = PlaceSet(ex);
        c.digit_budget = j.value("digit_budget", c.digit_budget);
        c.seed = j.value("seed", c.seed);
        return c;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed config: ") + e.what());
    }
}

namespace {

std::string join(const std::vector<std::string>& v, const char* sep)
{
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
    return out;
}

}  // namespace

json to_json(const GcdSeriesReport& r, const ReportFormat& fmt)
{
    json rows = json::array();
    for (const auto& row : r.rows) {
        const std::size_t digits = decimal_digits(row.gcd);
        json jr = {{"n", row.n},
                   {"digits_f", row.digits_f},
                   {"digits_g", row.digits_g},
                   {"gcd_digits", digits},
                   {"log_gcd", row.log_gcd.to_double()},
                   {"ratio", row.ratio.to_double()},
                   {"hgcd_fin", row.hgcd_fin.to_double()},
                   {"hgcd_S", row.hgcd_S.to_double()},
                   {"flags", row.flags},
                   {"excluded", row.excluded}};
        if (digits >= fmt.json_elide_digits) {
            jr["gcd"] = nullptr;
            jr["gcd_elided"] = true;
        } else {
            jr["gcd"] = row.gcd.get_str();
            jr["gcd_elided"] = false;
        }
        rows.push_back(std::move(jr));
    }
    return {{"degree", r.degree},      {"n_max", r.n_max}, {"integral", r.integral},
            {"truncated", r.truncated}, {"last_completed", r.last_completed},
            {"note", r.note},           {"rows", rows}};
}

GcdSeriesReport report_from_json(const json& j)
{
    try {
        const json& body = j.contains("report") ? j.at("report") : j;
        GcdSeriesReport r;
        r.degree = body.at("degree").get<int>();
        r.n_max = body.at("n_max").get<int>();
        r.integral = body.value("integral", true);
        r.truncated = body.value("truncated", false);
        r.last_completed = body.value("last_completed", -1);
        r.note = body.value("note", std::string());
        for (const auto& jr : body.at("rows")) {
            GcdRow row;
            row.n = jr.at("n").get<int>();
            row.digits_f = jr.value("digits_f", std::size_t{0});
            row.digits_g = jr.value("digits_g", std::size_t{0});
            row.gcd = jr.contains("gcd") && jr.at("gcd").is_string() ? parse_integer(jr.at("gcd").get<std::string>())
                                                                     : Integer(0);
            row.log_gcd = Real(jr.at("log_gcd").get<double>(), kDefaultPrecision);
            row.ratio = Real(jr.value("ratio", 0.0), kDefaultPrecision);
            row.hgcd_fin = Real(jr.value("hgcd_fin", 0.0), kDefaultPrecision);
            row.hgcd_S = Real(jr.value("hgcd_S", 0.0), kDefaultPrecision);
            row.flags = jr.value("flags", std::vector<std::string>{});
            row.excluded = jr.value("excluded", false);
            r.rows.push_back(std::move(row));
        }
        return r;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed report: ") + e.what());
    }
}

std::string to_csv(const GcdSeriesReport& r, const ReportFormat& fmt)
{
    std::ostringstream out;
    out << "n,digits_f,digits_g,gcd,log_gcd,ratio,hgcd_fin,hgcd_S,flags\n";
    for (const auto& row : r.rows) {
        const std::size_t digits = decimal_digits(row.gcd);
        out << row.n << ',' << row.digits_f << ',' << row.digits_g << ',';
        if (digits > fmt.csv_elide_digits) out << "elided:" << digits << "digits";
        else out << row.gcd.get_str();
        out << ',' << row.log_gcd.to_string(12) << ',' << row.ratio.to_string(12) << ',' << row.hgcd_fin.to_string(12)
            << ',' << row.hgcd_S.to_string(12) << ',' << join(row.flags, ";") << '\n';
    }
    return out.str();
}

std::string to_plot_data(const GcdSeriesReport& r)
{
    std::ostringstream out;
    out << "# n ratio\n";
    for (const auto& row : r.rows)
        if (!row.excluded) out << row.n << ' ' << row.ratio.to_string(15) << '\n';
    return out.str();
}

json to_json(const DepthCertificate& c)
{
    return {{"depth", c.depth},
            {"degree", c.degree},
            {"m_prime", c.m_prime},
            {"m_f", c.m_f},
            {"m_g", c.m_g},
            {"hhat_f", c.hhat_f.to_string(20)},
            {"hhat_f_err", c.hhat_f_err.to_double()},
            {"hhat_g", c.hhat_g.to_string(20)},
            {"hhat_g_err", c.hhat_g_err.to_double()},
            {"C_f", c.c_f.to_string(20)},
            {"C_g", c.c_g.to_string(20)},
            {"C", c.c.to_string(20)},
            {"lhs", c.lhs.to_string(20)},
            {"epsilon", c.epsilon},
            {"replay", replay(c)}};
}

json to_json(const ApStructure& s)
{
    json progs = json::array();
    for (const auto& p : s.progressions) progs.push_back({{"start", p.start}, {"step", p.step}});
    return {{"progressions", progs}, {"residual", s.residual}, {"n_max", s.n_max}, {"label", s.label}};
}

}  // namespace dyngcd
