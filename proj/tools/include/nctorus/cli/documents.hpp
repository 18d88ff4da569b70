#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nctorus/abelian.hpp"
#include "nctorus/cocycles.hpp"
#include "nctorus/deform.hpp"

namespace nctorus::cli {

using Json = nlohmann::json;

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);
/// Strict decimal parse; `path` names the field in the error message.
double parse_double(std::string_view text, const std::string& path);

/// {"rank": n, "mode": "lattice"} or {"rank": n, "mode": "finite", "moduli": [...]}.
GroupContext parse_context(const Json& j, const std::string& path);
Json context_to_json(const GroupContext& ctx);

/// {"context": {...}, "coefficients": [{"point": [...], "re": "..", "im": ".."}, ...]}.
FourierElement parse_element(const Json& j, const std::string& path);
Json element_to_json(const FourierElement& a);

/// Lattice: {"matrix": [[..]], "hbar": x}. Finite: {"matrix": [[int..]]}.
Bicharacter parse_cocycle(const Json& j, const GroupContext& ctx, const std::string& path);
SkewForm parse_form(const Json& j, int dim, const std::string& path);

Complex parse_complex(const Json& j, const std::string& path);
Json complex_to_json(Complex z);

/// Typed field access with path-qualified diagnostics.
const Json& field(const Json& j, const std::string& path, const char* key);
double number_field(const Json& j, const std::string& path, const char* key);
std::int64_t integer_field(const Json& j, const std::string& path, const char* key);
std::vector<double> number_list(const Json& j, const std::string& path);
std::vector<std::int64_t> integer_list(const Json& j, const std::string& path);

}  // namespace nctorus::cli
