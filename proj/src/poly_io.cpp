#include "dyngcd/poly_io.hpp"

#include <fstream>
#include <sstream>

namespace dyngcd {

Polynomial polynomial_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
        throw DomainError("polynomial JSON needs a \"coeffs\" array");
    std::vector<Rational> c;
    for (const auto& e : j.at("coeffs")) {
        if (e.is_string()) c.push_back(parse_rational(e.get<std::string>()));
        else if (e.is_number_integer()) c.emplace_back(e.get<long>());
        else throw DomainError("polynomial coefficients must be \"p/q\" strings");
    }
    return Polynomial(std::move(c));
}

nlohmann::json to_json(const Polynomial& p)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.get_str());
    if (p.is_zero()) arr.push_back("0");
    return {{"coeffs", arr}};
}

RationalMap map_from_json(const nlohmann::json& j)
{
    if (j.is_object() && j.contains("coeffs")) return RationalMap(polynomial_from_json(j));
    if (!j.is_object() || !j.contains("num")) throw DomainError("map JSON needs \"num\" (and optionally \"den\")");
    Polynomial num = polynomial_from_json(j.at("num"));
    Polynomial den = j.contains("den") ? polynomial_from_json(j.at("den")) : Polynomial::constant(1);
    return {num, den};
}

nlohmann::json to_json(const RationalMap& f)
{
    return {{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

RationalMap load_map(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open map file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("map file '" + path + "': " + e.what());
    }
    return map_from_json(j);
}

}  // namespace dyngcd
