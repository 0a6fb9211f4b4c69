#include "sinkhorn/matrix_io.hpp"

#include <sstream>

namespace sinkhorn {

namespace {

Rational entry_from_json(const nlohmann::json& v) {
    if (v.is_string()) {
        return Rational::parse(v.get<std::string>());
    }
    if (v.is_number_integer()) {
        return Rational::parse(std::to_string(v.get<long long>()));
    }
    throw ParseError("matrix entry must be a rational string or an integer");
}

} // namespace

Matrix<Rational> parse_matrix_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries")) {
        throw ParseError("matrix JSON must be {\"n\": ..., \"entries\": [[...], ...]}");
    }
    if (!doc["n"].is_number_integer()) {
        throw ParseError("matrix dimension must be an integer");
    }
    const int n = doc["n"].get<int>();
    const auto& rows = doc["entries"];
    if (n < 1 || !rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
        throw ParseError("matrix entries must hold n rows");
    }
    std::vector<Rational> flat;
    flat.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
            throw ParseError("matrix rows must hold n entries");
        }
        for (const auto& v : row) {
            flat.push_back(entry_from_json(v));
        }
    }
    try {
        return Matrix<Rational>(n, std::move(flat));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Matrix<Rational> parse_matrix_csv(const std::string& text) {
    std::vector<std::vector<Rational>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<Rational> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            row.push_back(Rational::parse(cell));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ParseError("empty matrix");
    }
    for (const auto& row : rows) {
        if (row.size() != rows.size()) {
            throw ParseError("matrix must be square");
        }
    }
    try {
        return Matrix<Rational>::from_rows(rows);
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

nlohmann::ordered_json matrix_to_json(const Matrix<Rational>& a) {
    nlohmann::ordered_json doc;
    doc["n"] = a.size();
    doc["entries"] = matrix_entries_json(a);
    return doc;
}

nlohmann::ordered_json matrix_entries_json(const Matrix<Rational>& a) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < a.size(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < a.size(); ++j) {
            row.push_back(a.at(i, j).str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::ordered_json matrix_entries_json(const Matrix<BigFloat>& a, std::size_t digits) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < a.size(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < a.size(); ++j) {
            row.push_back(a.at(i, j).str(digits));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace sinkhorn
