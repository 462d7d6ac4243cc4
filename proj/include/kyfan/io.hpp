#pragma once

/// @file io.hpp
/// @brief Matrix file parsing and deterministic JSON serialization for CLI
///        reports.
///
/// Matrix file format: first line "m n", then m lines of n whitespace-
/// separated decimal reals. Parsing throws KyfanError(INPUT_ERROR) on any
/// malformed content, wrong counts, or non-finite values.

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "kyfan/types.hpp"

namespace kyfan {

using Json = nlohmann::ordered_json;

/// Parse a matrix file from a stream or path.
Matrix read_matrix(std::istream& in, const std::string& what = "matrix");
Matrix read_matrix_file(const std::string& path);

/// Write in the same format (17 significant digits).
void write_matrix(std::ostream& out, const Matrix& a);
void write_matrix_file(const std::string& path, const Matrix& a);

/// Serialize JSON with floating-point numbers printed with 17 significant
/// digits (round-trip safe) and keys in insertion order; byte-deterministic
/// for identical inputs.
std::string dump_json(const Json& j, int indent = 2);

/// Conversion helpers for report payloads.
Json matrix_to_json(const Matrix& a);
Json vector_to_json(const Vector& v);
/// 1-based index list (reports use 1-based indices).
Json indices_to_json(const std::vector<int>& idx0);

}  // namespace kyfan
