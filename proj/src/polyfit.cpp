#include "gemb/polyfit.hpp"

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gemb {

namespace {

long long checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("interpolation overflow");
  return static_cast<long long>(v);
}

// Exact rational with a positive denominator, always kept reduced.
struct Frac {
  long long num = 0;
  long long den = 1;

  Frac() = default;
  Frac(long long n) : num(n) {}
  Frac(long long n, long long d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool zero() const { return num == 0; }
};

Frac add(const Frac& a, const Frac& b) {
  return Frac(checked(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den),
              checked(static_cast<__int128>(a.den) * b.den));
}

Frac sub(const Frac& a, const Frac& b) { return add(a, Frac(-b.num, b.den)); }

Frac mul(const Frac& a, const Frac& b) {
  return Frac(checked(static_cast<__int128>(a.num) * b.num),
              checked(static_cast<__int128>(a.den) * b.den));
}

Frac div(const Frac& a, const Frac& b) {
  if (b.zero()) throw std::domain_error("division by zero");
  return Frac(checked(static_cast<__int128>(a.num) * b.den),
              checked(static_cast<__int128>(a.den) * b.num));
}

}  // namespace

long long IntPolynomial::eval(long long x) const {
  __int128 acc = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = acc * x + coeffs[k];
    if (acc > INT64_MAX || acc < INT64_MIN) throw std::overflow_error("evaluation overflow");
  }
  return static_cast<long long>(acc);
}

std::string IntPolynomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const long long c = coeffs[k];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const long long mag = c < 0 ? -c : c;
    if (mag != 1 || k == 0) os << mag;
    if (k >= 1) {
      os << "x";
      if (k >= 2) os << "^" << k;
    }
  }
  if (first) os << "0";
  return os.str();
}

IntPolynomial interpolate_integer_polynomial(const std::vector<long long>& nodes,
                                             const std::vector<long long>& values) {
  const std::size_t m = nodes.size();
  if (m == 0 || values.size() != m) throw std::invalid_argument("need equally many nodes and values");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (nodes[i] == nodes[j]) throw std::invalid_argument("repeated interpolation node");

  // dd[i] ends up as the divided difference over nodes[0..i].
  std::vector<Frac> dd(values.begin(), values.end());
  for (std::size_t k = 1; k < m; ++k)
    for (std::size_t i = m; i-- > k;)
      dd[i] = div(sub(dd[i], dd[i - 1]), Frac(nodes[i] - nodes[i - k]));

  // Expand the Newton form into monomial coefficients.
  std::vector<Frac> poly(m, Frac(0));
  std::vector<Frac> basis(m, Frac(0));
  basis[0] = Frac(1);
  std::size_t basis_len = 1;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < basis_len; ++i) poly[i] = add(poly[i], mul(dd[k], basis[i]));
    if (k + 1 < m) {
      // basis *= (x - nodes[k]): new[i] = old[i-1] - nodes[k]*old[i],
      // computed top-down so each old value is read before being replaced.
      const Frac c(-nodes[k]);
      for (std::size_t i = basis_len + 1; i-- > 0;) {
        Frac v = i < basis_len ? mul(basis[i], c) : Frac(0);
        if (i > 0) v = add(v, basis[i - 1]);
        basis[i] = v;
      }
      ++basis_len;
    }
  }

  IntPolynomial out;
  out.coeffs.resize(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (poly[i].den != 1)
      throw std::domain_error("interpolating polynomial has non-integer coefficients");
    out.coeffs[i] = poly[i].num;
  }
  while (!out.coeffs.empty() && out.coeffs.back() == 0) out.coeffs.pop_back();
  return out;
}

}  // namespace gemb
