#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "zeroprof/polynomial.hpp"

namespace zeroprof::test {

/// Coefficients as reduced "p/q" strings, integers without a denominator.
inline std::vector<std::string> coeffs(const ExactPolynomial& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs) {
    Rational q = c;
    q.canonicalize();
    out.push_back(q.get_den() == 1 ? q.get_num().get_str() : q.get_str());
  }
  return out;
}

}  // namespace zeroprof::test

namespace zeroprof {

inline void PrintTo(const ExactPolynomial& p, std::ostream* os) {
  *os << "(";
  for (size_t i = 0; i < p.coeffs.size(); ++i) *os << (i ? ", " : "") << to_string(p.coeffs[i]);
  *os << ")";
}

}  // namespace zeroprof
