#include "maxspec/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace maxspec {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token, std::size_t line) {
  token = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw ParseError("line " + std::to_string(line) + ": not a decimal literal: '" +
                     std::string(token) + "'");
  }
  if (!std::isfinite(value) || value < 0.0) {
    throw ParseError("line " + std::to_string(line) + ": entry must be finite and nonnegative");
  }
  return value;
}

}  // namespace

Matrix parse_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    while (true) {
      const auto comma = line.find(',');
      row.push_back(parse_number(line.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty matrix");
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw ParseError("CSV matrix is not square: " + std::to_string(rows.size()) + " rows, a row of " +
                       std::to_string(row.size()));
    }
  }
  return Matrix::from_rows(rows);
}

Matrix parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("rows")) {
    throw ParseError("JSON matrix must be an object with \"n\" and \"rows\"");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() <= 0) {
    throw ParseError("\"n\" must be a positive integer");
  }
  const auto n = doc["n"].get<std::size_t>();
  const auto& rows = doc["rows"];
  if (!rows.is_array() || rows.size() != n) throw ParseError("\"rows\" must hold n rows");
  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) {
      throw ParseError("row " + std::to_string(i + 1) + " must hold n entries");
    }
    for (const auto& v : rows[i]) {
      if (!v.is_number()) throw ParseError("row " + std::to_string(i + 1) + ": non-numeric entry");
      const double x = v.get<double>();
      if (!std::isfinite(x) || x < 0.0) {
        throw ParseError("row " + std::to_string(i + 1) + ": entry must be finite and nonnegative");
      }
      entries.push_back(x);
    }
  }
  return Matrix(n, std::move(entries));
}

Matrix parse_matrix(std::string_view text) {
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') return parse_json(body);
  return parse_csv(body);
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix(buffer.str());
}

std::string to_csv(const Matrix& a) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out << (j ? "," : "") << a(i, j);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Matrix& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < a.size(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"n", a.size()}, {"rows", rows}}.dump();
}

}  // namespace maxspec
