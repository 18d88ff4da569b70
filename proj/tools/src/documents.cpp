#include "nctorus/cli/documents.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "nctorus/errors.hpp"

namespace nctorus::cli {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, const std::string& path) {
  double x = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, x);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(x)) {
    throw ValidationError(path + ": '" + std::string(text) + "' is not a finite decimal number");
  }
  return x;
}

namespace {

double as_number(const Json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_double(v.get<std::string>(), path);
  throw ValidationError(path + ": expected a number");
}

std::int64_t as_integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ValidationError(path + ": expected an integer");
  return v.get<std::int64_t>();
}

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

}  // namespace

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw ValidationError((path.empty() ? std::string("document") : path) + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError(join(path, key) + ": missing");
  return *it;
}

double number_field(const Json& j, const std::string& path, const char* key) {
  return as_number(field(j, path, key), join(path, key));
}

std::int64_t integer_field(const Json& j, const std::string& path, const char* key) {
  return as_integer(field(j, path, key), join(path, key));
}

std::vector<double> number_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], at(path, i)));
  return out;
}

std::vector<std::int64_t> integer_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path + ": expected an array");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_integer(j[i], at(path, i)));
  return out;
}

GroupContext parse_context(const Json& j, const std::string& path) {
  const auto rank = integer_field(j, path, "rank");
  const auto& mode = field(j, path, "mode");
  if (!mode.is_string()) throw ValidationError(join(path, "mode") + ": expected a string");
  const auto m = mode.get<std::string>();
  if (rank < 1 || rank > 64) throw ValidationError(join(path, "rank") + ": must be between 1 and 64");
  if (m == "lattice") return GroupContext::lattice(static_cast<int>(rank));
  if (m == "finite") {
    auto moduli = integer_list(field(j, path, "moduli"), join(path, "moduli"));
    if (static_cast<std::int64_t>(moduli.size()) != rank) {
      throw ValidationError(join(path, "moduli") + ": expected " + std::to_string(rank) + " moduli, got " +
                            std::to_string(moduli.size()));
    }
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      if (moduli[i] < 1) throw ValidationError(at(join(path, "moduli"), i) + ": modulus must be positive");
    }
    return GroupContext::finite(std::move(moduli));
  }
  throw ValidationError(join(path, "mode") + ": expected \"lattice\" or \"finite\", got \"" + m + "\"");
}

Json context_to_json(const GroupContext& ctx) {
  Json j;
  j["rank"] = ctx.rank();
  j["mode"] = ctx.is_lattice() ? "lattice" : "finite";
  if (ctx.is_finite()) j["moduli"] = std::vector<std::int64_t>(ctx.moduli().begin(), ctx.moduli().end());
  return j;
}

Complex parse_complex(const Json& j, const std::string& path) {
  return {number_field(j, path, "re"), number_field(j, path, "im")};
}

Json complex_to_json(Complex z) { return Json{{"re", format_double(z.real())}, {"im", format_double(z.imag())}}; }

FourierElement parse_element(const Json& j, const std::string& path) {
  const GroupContext ctx = parse_context(field(j, path, "context"), join(path, "context"));
  const auto& coeffs = field(j, path, "coefficients");
  const std::string cpath = join(path, "coefficients");
  if (!coeffs.is_array()) throw ValidationError(cpath + ": expected an array");
  FourierElement::Coeffs out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string ipath = at(cpath, i);
    auto coords = integer_list(field(coeffs[i], ipath, "point"), ipath + ".point");
    if (static_cast<int>(coords.size()) != ctx.rank()) {
      throw ValidationError(ipath + ".point: expected " + std::to_string(ctx.rank()) + " coordinates, got " +
                            std::to_string(coords.size()));
    }
    const GroupPoint p = ctx.point(std::move(coords));
    if (out.contains(p)) throw ValidationError(ipath + ".point: duplicate point");
    out[p] = parse_complex(coeffs[i], ipath);
  }
  return FourierElement(ctx, std::move(out));
}

Json element_to_json(const FourierElement& a) {
  Json coeffs = Json::array();
  for (const auto& [p, c] : a.coeffs()) {
    Json entry = complex_to_json(c);
    entry["point"] = p.coords;
    coeffs.push_back(std::move(entry));
  }
  return Json{{"context", context_to_json(a.context())}, {"coefficients", std::move(coeffs)}};
}

namespace {

RealMatrix parse_real_matrix(const Json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw ValidationError(path + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  }
  RealMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto row = number_list(j[r], at(path, r));
    if (static_cast<int>(row.size()) != dim) throw ValidationError(at(path, r) + ": expected " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c) m(r, c) = row[c];
  }
  return m;
}

IntMatrix parse_int_matrix(const Json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw ValidationError(path + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  }
  IntMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto row = integer_list(j[r], at(path, r));
    if (static_cast<int>(row.size()) != dim) throw ValidationError(at(path, r) + ": expected " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c) m(r, c) = row[c];
  }
  return m;
}

}  // namespace

Bicharacter parse_cocycle(const Json& j, const GroupContext& ctx, const std::string& path) {
  const auto& matrix = field(j, path, "matrix");
  if (ctx.is_lattice()) {
    return Bicharacter::lattice(ctx, parse_real_matrix(matrix, ctx.rank(), join(path, "matrix")),
                                number_field(j, path, "hbar"));
  }
  return Bicharacter::finite(ctx, parse_int_matrix(matrix, ctx.rank(), join(path, "matrix")));
}

SkewForm parse_form(const Json& j, int dim, const std::string& path) {
  RealMatrix m = parse_real_matrix(j, dim, path);
  try {
    return SkewForm(std::move(m));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace nctorus::cli
