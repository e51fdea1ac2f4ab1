#include "tqlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tqlab {

namespace {

// parses a signed decimal starting at pos; returns value and end position
double parse_number(const std::string& s, size_t& pos) {
  size_t end = pos;
  if (end < s.size() && (s[end] == '+' || s[end] == '-')) ++end;
  size_t digits = end;
  while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '.'))
    ++end;
  if (end < s.size() && (s[end] == 'e' || s[end] == 'E')) {
    size_t e = end + 1;
    if (e < s.size() && (s[e] == '+' || s[e] == '-')) ++e;
    while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
    end = e;
  }
  if (end == digits) throw std::invalid_argument("parse_complex: malformed number in '" + s + "'");
  const double v = std::stod(s.substr(pos, end - pos));
  pos = end;
  return v;
}

}  // namespace

Cplx parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("parse_complex: empty input");

  // pure imaginary shorthand: i, -i, +i
  if (s == "i" || s == "+i") return Cplx(0.0, 1.0);
  if (s == "-i") return Cplx(0.0, -1.0);

  size_t pos = 0;
  double first = 0.0;
  bool first_imag = false;
  if (s[pos] == 'i') {
    first = 1.0;
    first_imag = true;
    ++pos;
  } else {
    first = parse_number(s, pos);
    if (pos < s.size() && s[pos] == 'i') {
      first_imag = true;
      ++pos;
    }
  }
  if (pos == s.size()) return first_imag ? Cplx(0.0, first) : Cplx(first, 0.0);

  if (first_imag) throw std::invalid_argument("parse_complex: malformed input '" + text + "'");
  if (s[pos] != '+' && s[pos] != '-')
    throw std::invalid_argument("parse_complex: malformed input '" + text + "'");
  double second;
  if ((s.substr(pos) == "+i")) {
    second = 1.0;
    pos += 2;
  } else if (s.substr(pos) == "-i") {
    second = -1.0;
    pos += 2;
  } else {
    second = parse_number(s, pos);
    if (pos >= s.size() || s[pos] != 'i')
      throw std::invalid_argument("parse_complex: malformed input '" + text + "'");
    ++pos;
  }
  if (pos != s.size()) throw std::invalid_argument("parse_complex: trailing input in '" + text + "'");
  return Cplx(first, second);
}

std::string format_complex(Cplx z) {
  char buf[64];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%.17g", z.real());
    return buf;
  }
  if (z.real() == 0.0) {
    std::snprintf(buf, sizeof(buf), "%.17gi", z.imag());
    return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::string format_complex_table(Cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%+.5f%+.5fi", z.real(), z.imag());
  return buf;
}

Json complex_to_json(Cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json poly_to_json(const ComplexPoly& p) {
  Json arr = Json::array();
  for (const Cplx& c : p.coeffs()) arr.push_back(complex_to_json(c));
  return arr;
}

Json roots_to_json(const BetheRootSet& r) {
  Json j;
  Json mu = Json::array();
  for (const Cplx& m : r.mu) mu.push_back(complex_to_json(m));
  j["mu"] = std::move(mu);
  j["converged"] = r.converged;
  j["newton_iterations"] = r.newton_iterations;
  j["defect"] = r.defect;
  return j;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tqlab
