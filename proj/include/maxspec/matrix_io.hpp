#pragma once

// Matrix file formats:
//   CSV  - n lines of n comma-separated decimal literals
//   JSON - {"n": <int>, "rows": [[...], ...]}
// Negative or non-finite entries are rejected at load time.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "maxspec/matrix.hpp"

namespace maxspec {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Matrix parse_csv(std::string_view text);
Matrix parse_json(std::string_view text);
/// Dispatches on the first non-blank character: '{' means JSON, anything else CSV.
Matrix parse_matrix(std::string_view text);
Matrix load_matrix(const std::filesystem::path& path);

std::string to_csv(const Matrix& a);
std::string to_json(const Matrix& a);

}  // namespace maxspec
