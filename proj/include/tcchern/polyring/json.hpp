#pragma once

#include "tcchern/polyring/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace tcchern {

// {"rank": n, "terms": [{"coeff": "num/den", "x": [...], "y": [...], "z": [...]}]}

inline nlohmann::json polynomial_to_json(const Polynomial& p)
{
  nlohmann::json terms = nlohmann::json::array();
  const int n = p.rank();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json t;
    t["coeff"] = format_rational(c);
    for (Family f : kFamilies) {
      std::vector<unsigned> e(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        e[i] = m.exponent(f, i);
      }
      t[std::string(1, family_name(f))] = e;
    }
    terms.push_back(std::move(t));
  }
  return {{"rank", n}, {"terms", std::move(terms)}};
}

inline Polynomial polynomial_from_json(const nlohmann::json& j)
{
  if (!j.is_object() || !j.contains("rank") || !j.contains("terms")) {
    throw std::invalid_argument("polynomial JSON needs \"rank\" and \"terms\"");
  }
  const int n = j.at("rank").get<int>();
  Polynomial p(n);
  for (const auto& t : j.at("terms")) {
    if (!t.contains("coeff") || !t.at("coeff").is_string()) {
      throw std::invalid_argument("polynomial term needs a string \"coeff\"");
    }
    const Rational c = parse_rational(t.at("coeff").get<std::string>());
    std::array<std::vector<unsigned>, 3> exps;
    for (Family f : kFamilies) {
      const std::string key(1, family_name(f));
      if (t.contains(key)) {
        exps[static_cast<int>(f)] = t.at(key).get<std::vector<unsigned>>();
      }
    }
    p.add_term(Monomial::from_exponents(n, exps[0], exps[1], exps[2]), c);
  }
  return p;
}

} // namespace tcchern
