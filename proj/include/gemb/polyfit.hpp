#pragma once

#include <string>
#include <vector>

namespace gemb {

// Polynomial with integer coefficients, coeffs[k] multiplying x^k.
// An empty coefficient list is the zero polynomial (degree -1).
struct IntPolynomial {
  std::vector<long long> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  long long eval(long long x) const;
  // Human-readable form, e.g. "x^2 + 2x + 1"; "0" for the zero polynomial.
  std::string str() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

// Interpolates the unique polynomial of degree < nodes.size() through the
// given points, using exact rational arithmetic (Newton divided differences).
// Throws std::invalid_argument on empty input or repeated nodes, and
// std::domain_error if the interpolant has a non-integer coefficient.
IntPolynomial interpolate_integer_polynomial(const std::vector<long long>& nodes,
                                             const std::vector<long long>& values);

}  // namespace gemb
