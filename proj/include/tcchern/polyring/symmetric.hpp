#pragma once

#include "tcchern/polyring/formal.hpp"
#include "tcchern/polyring/polynomial.hpp"

#include <compare>
#include <map>
#include <stdexcept>
#include <string>

namespace tcchern {

/// p_m = v1^m + ... + vn^m in the chosen family.
inline Polynomial power_sum(int m, int n, Family family)
{
  if (m < 1) {
    throw std::invalid_argument("power_sum needs m >= 1, got " + std::to_string(m));
  }
  Polynomial out(n);
  for (int i = 0; i < n; ++i) {
    out.add_term(Monomial::variable(n, family, i, static_cast<unsigned>(m)), 1);
  }
  return out;
}

/// P_{a,b}(n) = sum_i x_i^a y_i^b.
inline Polynomial two_var_power_sum(int a, int b, int n)
{
  if (a < 0 || b < 0) {
    throw std::invalid_argument("two_var_power_sum needs a, b >= 0");
  }
  if (a + b < 1) {
    throw std::invalid_argument("two_var_power_sum needs a + b >= 1");
  }
  Polynomial out(n);
  for (int i = 0; i < n; ++i) {
    Monomial m(n);
    m.set_exponent(Family::x, i, static_cast<unsigned>(a));
    m.set_exponent(Family::y, i, static_cast<unsigned>(b));
    out.add_term(m, 1);
  }
  return out;
}

/// e_i: sum of the squarefree degree-i monomials of the family.
inline Polynomial elementary_symmetric(int i, int n, Family family)
{
  check_rank(n);
  if (i < 1 || i > n) {
    throw std::invalid_argument("elementary_symmetric needs 1 <= i <= n, got i=" +
                                std::to_string(i) + ", n=" + std::to_string(n));
  }
  Polynomial out(n);
  // Walk all i-subsets of {0..n-1} in lexicographic order.
  std::vector<int> idx(static_cast<std::size_t>(i));
  for (int k = 0; k < i; ++k) {
    idx[k] = k;
  }
  while (true) {
    Monomial m(n);
    for (int v : idx) {
      m.set_exponent(family, v, 1);
    }
    out.add_term(m, 1);
    int k = i - 1;
    while (k >= 0 && idx[k] == n - i + k) {
      --k;
    }
    if (k < 0) {
      break;
    }
    ++idx[k];
    for (int j = k + 1; j < i; ++j) {
      idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

/// Abstract power-sum symbol p_m.
struct PowerSumSymbol {
  int m;
  friend auto operator<=>(const PowerSumSymbol&, const PowerSumSymbol&) = default;
};

/// Abstract elementary symmetric symbol sigma_i.
struct ElementarySymbol {
  int i;
  friend auto operator<=>(const ElementarySymbol&, const ElementarySymbol&) = default;
};

inline std::string to_string(const PowerSumSymbol& s) { return "p" + std::to_string(s.m); }
inline std::string to_string(const ElementarySymbol& s) { return "s" + std::to_string(s.i); }

using PowerSumExpr = FormalPolynomial<PowerSumSymbol>;
using ElementaryExpr = FormalPolynomial<ElementarySymbol>;

/// p_m written in sigma_1..sigma_n through Newton's identities
///   p_m = sum_{i=1}^{m-1} (-1)^{i-1} sigma_i p_{m-i} + (-1)^{m-1} m sigma_m,
/// where sigma_i are the elementary symmetric polynomials.
inline ElementaryExpr power_sum_in_elementary(int m, int n)
{
  check_rank(n);
  if (m < 1 || m > n) {
    throw std::invalid_argument("power-sum index " + std::to_string(m) +
                                " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<ElementaryExpr> p(static_cast<std::size_t>(m) + 1);
  for (int k = 1; k <= m; ++k) {
    ElementaryExpr acc;
    for (int i = 1; i < k; ++i) {
      const Rational sign = (i % 2 == 1) ? 1 : -1;
      acc += ElementaryExpr::symbol({i}, sign) * p[k - i];
    }
    const Rational last = Rational((k % 2 == 1) ? k : -k);
    acc += ElementaryExpr::symbol({k}, last);
    p[k] = std::move(acc);
  }
  return p[m];
}

/// Rewrites a polynomial in p_1..p_n into sigma_1..sigma_n.
inline ElementaryExpr newton_convert(const PowerSumExpr& expr, int n)
{
  std::map<int, ElementaryExpr> memo;
  return expr.substitute<ElementarySymbol>([&](const PowerSumSymbol& s) {
    auto it = memo.find(s.m);
    if (it == memo.end()) {
      it = memo.emplace(s.m, power_sum_in_elementary(s.m, n)).first;
    }
    return it->second;
  });
}

} // namespace tcchern
