#pragma once

#include "tcchern/polyring/polynomial.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace tcchern {

/// Random polynomial in the chosen families with small integer-ish rational
/// coefficients and bounded total degree.
inline Polynomial random_polynomial(std::mt19937& rng, int n, unsigned max_degree,
                                    std::initializer_list<Family> families, int max_terms = 4)
{
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> index(0, n - 1);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::vector<Family> fams(families);
  std::uniform_int_distribution<std::size_t> fam(0, fams.size() - 1);

  Polynomial p(n);
  const int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    Monomial m(n);
    const unsigned d = deg(rng);
    for (unsigned k = 0; k < d; ++k) {
      const Family f = fams[fam(rng)];
      const int i = index(rng);
      m.set_exponent(f, i, m.exponent(f, i) + 1);
    }
    p.add_term(m, make_rational(num(rng), den(rng)));
  }
  return p;
}

} // namespace tcchern
