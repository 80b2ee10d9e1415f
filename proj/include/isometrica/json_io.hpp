#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "isometrica/block_operator.hpp"
#include "isometrica/continuity.hpp"
#include "isometrica/homotopy.hpp"
#include "isometrica/projection_geometry.hpp"

namespace isometrica {

using Json = nlohmann::ordered_json;

/// {"rows": m, "cols": n, "data": [[re, im], ...]} with data row-major.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// {"blocks": [matrix, ...]}. A bare matrix reads as a single block.
Json to_json(const BlockOperator& a);
BlockOperator block_operator_from_json(const Json& j);

Json to_json(const PathCertificate& c);
Json to_json(const IsometryPath& path, const PathCertificate& certificate);

/// Angles rounded to 12 significant digits.
Json to_json(const FivePartDecomposition& d);

Json to_json(const ContinuityReport& r);
Json to_json(const SampledContinuityReport& r);

/// A family file is a list of {"x": x, "operator": BlockOperator}; a plain
/// list of BlockOperators gets x = 0, 1, 2, ...
std::vector<FamilySample> family_from_json(const Json& j);

/// Throws ParseError on unreadable or malformed files.
Json read_json_file(const std::filesystem::path& path);
/// Writes to stdout when path is empty.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Shortest decimal form that reproduces the double exactly (%.17g).
std::string format_double(double x);

}  // namespace isometrica
