#pragma once

#include <string>

#include <json.hpp>

#include "sinkhorn/matrix.hpp"

namespace sinkhorn {

/// Parses {"n": 3, "entries": [["2","2","6"], ...]} with entries given as
/// rational strings (integer JSON numbers are also accepted).
Matrix<Rational> parse_matrix_json(const std::string& text);

/// Parses comma-separated rational strings, one row per line.
Matrix<Rational> parse_matrix_csv(const std::string& text);

nlohmann::ordered_json matrix_to_json(const Matrix<Rational>& a);
nlohmann::ordered_json matrix_entries_json(const Matrix<Rational>& a);
nlohmann::ordered_json matrix_entries_json(const Matrix<BigFloat>& a, std::size_t digits = 0);

} // namespace sinkhorn
