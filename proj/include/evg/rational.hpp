#pragma once

#include <boost/multiprecision/gmp.hpp>

#include "errors.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace evg {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using RationalVector = std::vector<Rational>;

inline std::string to_string(const Rational& q)
{
  return numerator(q).str() + "/" + denominator(q).str();
}

// accepts "p", "p/q", and plain decimals such as "0.25"
inline Rational parse_rational(const std::string& s)
{
  auto fail = [&] { return ParamError("not a rational number: '" + s + "'"); };
  auto integer = [&](const std::string& t, bool sign_ok) {
    std::size_t i = sign_ok && !t.empty() && (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw fail();
    for (std::size_t k = i; k < t.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) throw fail();
    std::string digits = t.substr(i);
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1)); // no octal
    Integer v(digits);
    return i && t[0] == '-' ? Integer(-v) : v;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer den = integer(s.substr(slash + 1), false);
    if (den == 0) throw fail();
    return Rational(integer(s.substr(0, slash), true), den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(integer(s, true));
  std::string frac = s.substr(dot + 1), whole = s.substr(0, dot);
  if (whole.empty() || whole == "-" || whole == "+") whole += "0";
  Integer den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  Integer num = integer(whole + frac, true);
  return Rational(num, den);
}

inline Integer gcd(Integer a, Integer b)
{
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// exact rank of a dense rational matrix (rows x cols), by Gaussian elimination
inline int rank(std::vector<RationalVector> m)
{
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  int r = 0;
  for (std::size_t c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

} // namespace evg
