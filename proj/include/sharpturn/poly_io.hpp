#pragma once

// Plain-text polynomial format: one term per line, "coeff x^a y^b".
// Blank lines and lines starting with '#' are ignored.

#include "sharpturn/poly.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace sharpturn {

template <ExactField F>
void write_poly(std::ostream& os, const BiPoly<F>& f) {
  for (const auto& [e, v] : f.terms())
    os << FieldTraits<F>::str(v) << " x^" << e.first << " y^" << e.second << '\n';
}

template <ExactField F>
std::string poly_to_string(const BiPoly<F>& f) {
  std::ostringstream os;
  write_poly(os, f);
  return os.str();
}

namespace detail {

inline int parse_exponent(const std::string& tok, char var, const std::string& line) {
  if (tok.size() < 3 || tok[0] != var || tok[1] != '^')
    throw ParseError(std::string("expected ") + var + "^k in term '" + line + "'");
  int v = 0;
  for (std::size_t i = 2; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') throw ParseError("bad exponent in term '" + line + "'");
    v = v * 10 + (tok[i] - '0');
    if (v > 1000000) throw ParseError("exponent too large in term '" + line + "'");
  }
  return v;
}

}  // namespace detail

template <ExactField F>
BiPoly<F> read_poly(std::istream& is) {
  BiPoly<F> f;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto xpos = line.rfind(" x^");
    if (xpos == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": missing x^a in '" + line + "'");
    std::istringstream rest(line.substr(xpos + 1));
    std::string xt, yt, extra;
    rest >> xt >> yt;
    if (xt.empty() || yt.empty() || (rest >> extra))
      throw ParseError("line " + std::to_string(lineno) + ": expected 'coeff x^a y^b', got '" + line + "'");
    const int a = detail::parse_exponent(xt, 'x', line);
    const int b = detail::parse_exponent(yt, 'y', line);
    F c;
    try {
      c = FieldTraits<F>::parse(line.substr(0, xpos));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
    f.add_term(a, b, c);
  }
  return f;
}

template <ExactField F>
BiPoly<F> parse_poly(const std::string& text) {
  std::istringstream is(text);
  return read_poly<F>(is);
}

template <ExactField F>
BiPoly<F> load_poly(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open polynomial file '" + path + "'");
  return read_poly<F>(in);
}

template <ExactField F>
void save_poly(const std::string& path, const BiPoly<F>& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write polynomial file '" + path + "'");
  write_poly(out, f);
}

}  // namespace sharpturn
