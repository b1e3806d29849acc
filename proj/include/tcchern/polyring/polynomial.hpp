#pragma once

#include "tcchern/polyring/monomial.hpp"
#include "tcchern/polyring/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tcchern {

/// Sparse polynomial in x1..xn, y1..yn, z1..zn with exact rational
/// coefficients. Terms are kept sorted leading-first under BlockGrevlex and
/// no stored coefficient is ever zero, so term-map equality is polynomial
/// equality.
class Polynomial {
public:
  using TermMap = std::map<Monomial, Rational, LeadingFirst>;

  explicit Polynomial(int rank) : rank_(rank) { check_rank(rank); }

  static Polynomial constant(int rank, const Rational& c)
  {
    Polynomial p(rank);
    p.add_term(Monomial(rank), c);
    return p;
  }

  static Polynomial variable(int rank, Family f, int index)
  {
    Polynomial p(rank);
    p.add_term(Monomial::variable(rank, f, index), 1);
    return p;
  }

  static Polynomial term(const Monomial& m, const Rational& c = 1)
  {
    Polynomial p(m.rank());
    p.add_term(m, c);
    return p;
  }

  int rank() const { return rank_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Monomial& leading_monomial() const
  {
    require_nonzero();
    return terms_.begin()->first;
  }

  const Rational& leading_coefficient() const
  {
    require_nonzero();
    return terms_.begin()->second;
  }

  Rational coefficient(const Monomial& m) const
  {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  unsigned total_degree() const
  {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
      d = std::max(d, m.degree());
    }
    return d;
  }

  bool uses(Family f) const
  {
    for (const auto& [m, c] : terms_) {
      if (m.uses(f)) {
        return true;
      }
    }
    return false;
  }

  /// Adds c·m, dropping the term if the coefficient cancels.
  void add_term(const Monomial& m, const Rational& c)
  {
    if (m.rank() != rank_) {
      throw std::invalid_argument("monomial rank " + std::to_string(m.rank()) +
                                  " does not match polynomial rank " + std::to_string(rank_));
    }
    if (c == 0) {
      return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) {
        terms_.erase(it);
      }
    }
  }

  Polynomial& operator+=(const Polynomial& q)
  {
    same_rank(q);
    for (const auto& [m, c] : q.terms_) {
      add_term(m, c);
    }
    return *this;
  }

  Polynomial& operator-=(const Polynomial& q)
  {
    same_rank(q);
    for (const auto& [m, c] : q.terms_) {
      add_term(m, -c);
    }
    return *this;
  }

  Polynomial& operator*=(const Rational& s)
  {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) {
      c *= s;
    }
    return *this;
  }

  /// this += s · m · q, the workhorse of division and S-polynomials.
  void add_scaled(const Polynomial& q, const Rational& s, const Monomial& m)
  {
    same_rank(q);
    if (s == 0) {
      return;
    }
    Rational c;
    for (const auto& [qm, qc] : q.terms_) {
      c = qc * s;
      add_term(qm * m, c);
    }
  }

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(Polynomial p, const Rational& s) { return p *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial p) { return p *= s; }

  friend Polynomial operator-(Polynomial p)
  {
    for (auto& [m, c] : p.terms_) {
      c = -c;
    }
    return p;
  }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q)
  {
    p.same_rank(q);
    Polynomial out(p.rank_);
    Rational c;
    for (const auto& [pm, pc] : p.terms_) {
      for (const auto& [qm, qc] : q.terms_) {
        c = pc * qc;
        out.add_term(pm * qm, c);
      }
    }
    return out;
  }

  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

  friend bool operator==(const Polynomial& p, const Polynomial& q)
  {
    return p.rank_ == q.rank_ && p.terms_ == q.terms_;
  }

  Polynomial monic() const
  {
    if (is_zero()) {
      return *this;
    }
    Rational inv = 1 / leading_coefficient();
    return *this * inv;
  }

  std::string to_string() const
  {
    if (terms_.empty()) {
      return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational mag = abs(c);
      if (first) {
        out += c < 0 ? "-" : "";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      if (m.is_one()) {
        out += mag.get_str();
      } else {
        if (mag != 1) {
          out += mag.get_str() + "*";
        }
        out += m.to_string();
      }
    }
    return out;
  }

private:
  void same_rank(const Polynomial& q) const
  {
    if (q.rank_ != rank_) {
      throw std::invalid_argument("rank mismatch: " + std::to_string(rank_) + " vs " +
                                  std::to_string(q.rank_));
    }
  }

  void require_nonzero() const
  {
    if (terms_.empty()) {
      throw std::domain_error("zero polynomial has no leading term");
    }
  }

  int rank_;
  TermMap terms_;
};

inline Polynomial pow(const Polynomial& base, unsigned exponent)
{
  Polynomial out = Polynomial::constant(base.rank(), 1);
  Polynomial b = base;
  while (exponent != 0) {
    if (exponent & 1u) {
      out = out * b;
    }
    exponent >>= 1;
    if (exponent != 0) {
      b = b * b;
    }
  }
  return out;
}

/// Per-variable replacement table realizing a ring homomorphism.
class Substitution {
public:
  explicit Substitution(int rank) : rank_(rank) { check_rank(rank); }

  static Substitution identity(int rank)
  {
    Substitution s(rank);
    for (Family f : kFamilies) {
      s.keep(f);
    }
    return s;
  }

  Substitution& set(Family f, int index, Polynomial replacement)
  {
    if (replacement.rank() != rank_) {
      throw std::invalid_argument("replacement rank does not match substitution rank");
    }
    if (index < 0 || index >= rank_) {
      throw std::out_of_range("substitution index outside rank");
    }
    table_[static_cast<int>(f)][index] = std::move(replacement);
    return *this;
  }

  /// Maps every variable of family f to itself.
  Substitution& keep(Family f)
  {
    for (int i = 0; i < rank_; ++i) {
      set(f, i, Polynomial::variable(rank_, f, i));
    }
    return *this;
  }

  int rank() const { return rank_; }

  const std::optional<Polynomial>& at(Family f, int index) const
  {
    return table_[static_cast<int>(f)][index];
  }

private:
  int rank_;
  std::array<std::array<std::optional<Polynomial>, kMaxRank>, 3> table_{};
};

/// Applies the homomorphism term by term. Throws if p mentions a variable
/// the table does not cover.
inline Polynomial substitute(const Polynomial& p, const Substitution& s)
{
  if (p.rank() != s.rank()) {
    throw std::invalid_argument("substitution rank does not match polynomial rank");
  }
  const int n = p.rank();
  // powers[f][i][e] caches replacement^e.
  std::array<std::array<std::vector<Polynomial>, kMaxRank>, 3> powers;
  auto power_of = [&](Family f, int i, unsigned e) -> const Polynomial& {
    auto& cache = powers[static_cast<int>(f)][i];
    const auto& base = s.at(f, i);
    if (!base) {
      throw std::invalid_argument(std::string("no replacement for variable ") + family_name(f) +
                                  std::to_string(i + 1));
    }
    if (cache.empty()) {
      cache.push_back(Polynomial::constant(n, 1));
    }
    while (cache.size() <= e) {
      cache.push_back(cache.back() * *base);
    }
    return cache[e];
  };

  Polynomial out(n);
  for (const auto& [m, c] : p.terms()) {
    Polynomial t = Polynomial::constant(n, c);
    for (Family f : kFamilies) {
      for (int i = 0; i < n; ++i) {
        const unsigned e = m.exponent(f, i);
        if (e != 0) {
          t = t * power_of(f, i, e);
        }
      }
    }
    out += t;
  }
  return out;
}

} // namespace tcchern
