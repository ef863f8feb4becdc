#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "spinpoint/cmatrix.hpp"

namespace spinpoint::io {

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
nlohmann::json to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json to_json(std::span<const Complex> v);

/// Matrix Market "array complex general" (column-major values, 17 significant
/// digits so values round-trip exactly).
std::string to_matrix_market(const CMatrix& m);
/// Accepts array and coordinate layouts with complex or real fields.
CMatrix matrix_from_matrix_market(std::string_view text);

/// Aligned human-readable rendering.
std::string to_pretty(const CMatrix& m);

/// Parses JSON or Matrix Market, chosen by the leading "%%MatrixMarket" banner.
CMatrix parse_matrix(std::string_view text);
CMatrix read_matrix_file(const std::string& path);

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

}  // namespace spinpoint::io
