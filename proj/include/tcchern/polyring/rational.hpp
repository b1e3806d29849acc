#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace tcchern {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in lowest terms. GMP's two-argument constructor does not
/// canonicalize, so every fraction built from parts goes through here.
inline Rational make_rational(long num, long den)
{
  if (den == 0) {
    throw std::domain_error("zero denominator");
  }
  Rational q{Integer(num), Integer(den)};
  q.canonicalize();
  return q;
}

/// Parses "num/den" or "num" in base 10 and canonicalizes the result.
inline Rational parse_rational(std::string_view text)
{
  std::string s(text);
  if (s.empty()) {
    throw std::invalid_argument("empty rational literal");
  }
  Rational q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("zero denominator in rational literal: " + s);
  }
  q.canonicalize();
  return q;
}

/// Always "num/den", including integers ("3/1").
inline std::string format_rational(const Rational& q)
{
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational pow(const Rational& base, unsigned exponent)
{
  Rational out = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1u) {
      out *= b;
    }
    exponent >>= 1;
    if (exponent != 0) {
      b *= b;
    }
  }
  return out;
}

inline Integer binomial(unsigned n, unsigned k)
{
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

} // namespace tcchern
