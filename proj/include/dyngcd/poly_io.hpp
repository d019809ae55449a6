#ifndef DYNGCD_POLY_IO_HPP
#define DYNGCD_POLY_IO_HPP

#include <string>

#include "json.hpp"

#include "dyngcd/polynomial.hpp"
#include "dyngcd/rational_map.hpp"

namespace dyngcd {

/* Text formats shared with the CLI:
 *   polynomial    {"coeffs": ["c0", "c1", ...]}        ascending, "p/q" or "p"
 *   rational map  {"num": <polynomial>, "den": <polynomial>}
 * A bare polynomial object is accepted wherever a map is expected.
 * Throws DomainError on malformed input. */

Polynomial polynomial_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Polynomial& p);

RationalMap map_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RationalMap& f);

/// Reads and parses a map file.
RationalMap load_map(const std::string& path);

}  // namespace dyngcd

#endif
