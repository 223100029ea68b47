#pragma once

// Text matrix format:
//
//   field: 2 3
//   rows: N
//   cols: M
//   <entry>;<entry>;...      (one line per row)
//
// Entries use the FieldElement text form. Rational matrices carry an empty
// "field:" line.

#include <fstream>
#include <sstream>
#include <string>

#include "quadrank/matrix.hpp"

namespace quadrank {

inline std::string format_matrix(const FieldMatrix& m) {
  std::string out = "field:";
  if (!m.basis().is_rationals()) out += " " + m.basis().to_string();
  out += "\nrows: " + std::to_string(m.rows()) + "\ncols: " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ';';
      out += m(i, j).to_string();
    }
    out += '\n';
  }
  return out;
}

inline std::string format_matrix(const RationalMatrix& m) { return format_matrix(FieldMatrix::lift(m)); }

namespace detail {

inline std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string header_value(const std::string& line, const std::string& key) {
  const std::string l = strip(line);
  if (l.rfind(key + ":", 0) != 0) throw Error(Errc::ParseError, "expected '" + key + ":' header, got '" + l + "'");
  return strip(l.substr(key.size() + 1));
}

inline std::size_t parse_dim(const std::string& v, const std::string& key) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(Errc::ParseError, "bad " + key + " value '" + v + "'");
  }
  return std::stoul(v);
}

}  // namespace detail

inline FieldMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) throw Error(Errc::ParseError, std::string("missing ") + what);
    return line;
  };
  std::vector<long long> primes;
  {
    std::istringstream ps(detail::header_value(next("field header"), "field"));
    std::string tok;
    while (ps >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos) {
        throw Error(Errc::ParseError, "bad field prime '" + tok + "'");
      }
      primes.push_back(std::stoll(tok));
    }
  }
  const PrimeBasis basis = PrimeBasis::make(primes);
  const std::size_t rows = detail::parse_dim(detail::header_value(next("rows header"), "rows"), "rows");
  const std::size_t cols = detail::parse_dim(detail::header_value(next("cols header"), "cols"), "cols");
  FieldMatrix m(basis, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row = next("matrix row");
    std::size_t j = 0, start = 0;
    for (;;) {
      auto semi = row.find(';', start);
      std::string cell = row.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
      if (j >= cols) throw Error(Errc::ParseError, "row " + std::to_string(i) + " has too many entries");
      m(i, j++) = parse_field_element(basis, cell);
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    if (j != cols) throw Error(Errc::ParseError, "row " + std::to_string(i) + " has " + std::to_string(j) + " entries");
  }
  while (std::getline(in, line)) {
    if (!detail::strip(line).empty()) throw Error(Errc::ParseError, "trailing content after matrix rows");
  }
  return m;
}

inline FieldMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_matrix(ss.str());
}

inline void write_matrix_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::ParseError, "cannot write '" + path + "'");
  f << text;
}

}  // namespace quadrank
