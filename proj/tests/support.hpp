#pragma once

#include "tcchern/polyring/polynomial.hpp"
#include "tcchern/polyring/random.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace tcchern::testing {

inline Polynomial x(int n, int i) { return Polynomial::variable(n, Family::x, i - 1); }
inline Polynomial y(int n, int i) { return Polynomial::variable(n, Family::y, i - 1); }
inline Polynomial z(int n, int i) { return Polynomial::variable(n, Family::z, i - 1); }
inline Polynomial one(int n) { return Polynomial::constant(n, 1); }

/// x^I y^J from 0-padded exponent lists.
inline Monomial xy_monomial(std::vector<unsigned> I, std::vector<unsigned> J)
{
  return Monomial::from_exponents(static_cast<int>(I.size()), I, J);
}

using tcchern::random_polynomial;

} // namespace tcchern::testing
