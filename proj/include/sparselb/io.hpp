#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sparselb/constructions.hpp"
#include "sparselb/measures.hpp"
#include "sparselb/sparse_matrix.hpp"
#include "sparselb/witnesses.hpp"

namespace sparselb::io {

using json = nlohmann::json;

// Matrix: {"m", "n", "cols": [[[row, value], ...], ...]}, 0-based rows,
// strictly increasing within a column, finite values.
json to_json(const SparseMatrix& a);
SparseMatrix matrix_from_json(const json& j);

// OneSparseMap: {"m", "n", "a": [...], "sigma": [+-1, ...]}.
json to_json(const OneSparseMap& a);
OneSparseMap map_from_json(const json& j);

// Code: {"q", "t", "words": [[symbol, ...], ...]}.
json to_json(const Code& c);
Code code_from_json(const json& j);

json to_json(const Certificate& c);
json to_json(const RipEstimate& r);
json to_json(const RealVector& v);

/// Throws ParseError when the file is missing or not valid JSON.
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Shortest decimal form that round-trips ('.' decimal point).
std::string format_double(double value);

}  // namespace sparselb::io
