#pragma once

// `unipoly v1` text format for UniPoly<Rational>:
//
//   unipoly v1 <degree>
//   <c_0>
//   <c_1>
//   ...
//   <c_degree>
//
// Coefficients in ascending degree order, one per line, as "num/den" in
// decimal with "/den" omitted when den = 1. The zero polynomial has degree -1
// and no coefficient lines.

#include "critlab/poly.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace critlab {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void write_unipoly(std::ostream& os, const UniPoly<Rational>& p) {
  os << "unipoly v1 " << p.degree() << '\n';
  for (const auto& c : p.coefficients()) os << to_string(c) << '\n';
}

inline std::string format_unipoly(const UniPoly<Rational>& p) {
  std::ostringstream os;
  write_unipoly(os, p);
  return os.str();
}

inline UniPoly<Rational> read_unipoly(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("unipoly: missing header");
  std::istringstream header(line);
  std::string magic, version;
  long degree = -2;
  header >> magic >> version >> degree;
  if (magic != "unipoly" || version != "v1" || header.fail() || degree < -1)
    throw FormatError("unipoly: bad header '" + line + "'");
  std::string extra;
  if (header >> extra) throw FormatError("unipoly: trailing header content");
  std::vector<Rational> coeffs;
  coeffs.reserve(static_cast<std::size_t>(degree + 1));
  for (long i = 0; i <= degree; ++i) {
    if (!std::getline(is, line)) throw FormatError("unipoly: truncated, expected " + std::to_string(degree + 1) + " coefficients");
    try {
      coeffs.push_back(parse_rational(line));
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("unipoly: bad coefficient: ") + e.what());
    }
  }
  while (std::getline(is, line))
    if (!line.empty()) throw FormatError("unipoly: trailing content after coefficients");
  if (degree >= 0 && is_zero(coeffs.back())) throw FormatError("unipoly: leading coefficient is zero");
  return UniPoly<Rational>(std::move(coeffs));
}

inline UniPoly<Rational> parse_unipoly(const std::string& text) {
  std::istringstream is(text);
  return read_unipoly(is);
}

}  // namespace critlab
