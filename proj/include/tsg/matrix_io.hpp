#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "tsg/errors.hpp"
#include "tsg/rational.hpp"
#include "tsg/stochastic.hpp"

namespace tsg {

/// Text format: one row per line with whitespace-separated `p/q` entries;
/// matrices are separated by blank lines; lines starting with '#' are ignored.
inline std::vector<StochasticMatrix> parse_matrix_text(std::string const& text) {
  std::vector<StochasticMatrix> out;
  RationalMatrix current;
  std::size_t line_no = 0, start_line = 1;
  auto flush = [&] {
    if (current.empty()) return;
    try {
      out.emplace_back(std::move(current));
    } catch (PreconditionError const& e) {
      throw ParseError("matrix starting at line " + std::to_string(start_line) + ": " + e.what());
    }
    current.clear();
  };
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      flush();
      continue;
    }
    if (line[first] == '#') continue;
    if (current.empty()) start_line = line_no;
    std::istringstream ls(line);
    std::string tok;
    RationalVector row;
    while (ls >> tok) {
      try {
        row.push_back(parse_rational(tok));
      } catch (ParseError const& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    current.push_back(std::move(row));
  }
  flush();
  return out;
}

inline std::string format_matrix_text(StochasticMatrix const& M) {
  std::string s;
  for (auto const& row : M.entries()) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) s += ' ';
      s += format_rational(row[j]);
    }
    s += '\n';
  }
  return s;
}

inline std::string format_matrices_text(std::vector<StochasticMatrix> const& ms) {
  std::string s;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) s += '\n';
    s += format_matrix_text(ms[i]);
  }
  return s;
}

inline nlohmann::json matrix_to_json(RationalMatrix const& m) {
  auto j = nlohmann::json::array();
  for (auto const& row : m) {
    auto r = nlohmann::json::array();
    for (auto const& x : row) r.push_back(format_rational(x));
    j.push_back(r);
  }
  return j;
}

inline RationalMatrix matrix_from_json(nlohmann::json const& j, std::string const& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of rows");
  RationalMatrix m;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto const& r = j[i];
    if (!r.is_array()) throw ParseError(path + "[" + std::to_string(i) + "]: expected an array");
    RationalVector row;
    for (std::size_t k = 0; k < r.size(); ++k) {
      std::string where = path + "[" + std::to_string(i) + "][" + std::to_string(k) + "]";
      if (!r[k].is_string() && !r[k].is_number_integer()) throw ParseError(where + ": expected a fraction string");
      try {
        row.push_back(parse_rational(r[k].is_string() ? r[k].get<std::string>() : r[k].dump()));
      } catch (ParseError const& e) {
        throw ParseError(where + ": " + e.what());
      }
    }
    m.push_back(std::move(row));
  }
  return m;
}

/// JSON alternative: {"matrices": [[["1/2","1/2"], ...], ...]}.
inline std::vector<StochasticMatrix> parse_matrix_json(std::string const& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("matrices")) throw ParseError("$: expected an object with \"matrices\"");
  auto const& arr = doc["matrices"];
  if (!arr.is_array()) throw ParseError("$.matrices: expected an array");
  std::vector<StochasticMatrix> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string path = "$.matrices[" + std::to_string(i) + "]";
    auto m = matrix_from_json(arr[i], path);
    try {
      out.emplace_back(std::move(m));
    } catch (PreconditionError const& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  return out;
}

inline std::string format_matrices_json(std::vector<StochasticMatrix> const& ms) {
  nlohmann::json doc;
  doc["matrices"] = nlohmann::json::array();
  for (auto const& m : ms) doc["matrices"].push_back(matrix_to_json(m.entries()));
  return doc.dump(2) + "\n";
}

/// Detects JSON by a leading '{'.
inline std::vector<StochasticMatrix> parse_matrices(std::string const& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_matrix_json(text);
  return parse_matrix_text(text);
}

}  // namespace tsg
