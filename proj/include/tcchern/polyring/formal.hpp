#pragma once

#include "tcchern/polyring/rational.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tcchern {

/// Polynomial over abstract commuting symbols (p_m, sigma_i, P_{a,b},
/// Phi^k(iota(p_m)), ...). A term is a sorted multiset of symbols; the
/// empty multiset is the constant term.
///
/// Symbol must be totally ordered and provide a free `to_string(Symbol)`.
template <class Symbol>
class FormalPolynomial {
public:
  using Factors = std::vector<Symbol>;
  using TermMap = std::map<Factors, Rational>;

  FormalPolynomial() = default;

  static FormalPolynomial constant(const Rational& c)
  {
    FormalPolynomial out;
    out.add_term({}, c);
    return out;
  }

  static FormalPolynomial symbol(const Symbol& s, const Rational& c = 1)
  {
    FormalPolynomial out;
    out.add_term({s}, c);
    return out;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(Factors factors) const
  {
    std::sort(factors.begin(), factors.end());
    auto it = terms_.find(factors);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(Factors factors, const Rational& c)
  {
    if (c == 0) {
      return;
    }
    std::sort(factors.begin(), factors.end());
    auto [it, inserted] = terms_.try_emplace(std::move(factors), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) {
        terms_.erase(it);
      }
    }
  }

  FormalPolynomial& operator+=(const FormalPolynomial& q)
  {
    for (const auto& [f, c] : q.terms_) {
      add_term(f, c);
    }
    return *this;
  }

  FormalPolynomial& operator-=(const FormalPolynomial& q)
  {
    for (const auto& [f, c] : q.terms_) {
      add_term(f, -c);
    }
    return *this;
  }

  FormalPolynomial& operator*=(const Rational& s)
  {
    if (s == 0) {
      terms_.clear();
    }
    for (auto& [f, c] : terms_) {
      c *= s;
    }
    return *this;
  }

  friend FormalPolynomial operator+(FormalPolynomial p, const FormalPolynomial& q) { return p += q; }
  friend FormalPolynomial operator-(FormalPolynomial p, const FormalPolynomial& q) { return p -= q; }
  friend FormalPolynomial operator*(FormalPolynomial p, const Rational& s) { return p *= s; }
  friend FormalPolynomial operator*(const Rational& s, FormalPolynomial p) { return p *= s; }

  friend FormalPolynomial operator*(const FormalPolynomial& p, const FormalPolynomial& q)
  {
    FormalPolynomial out;
    for (const auto& [pf, pc] : p.terms_) {
      for (const auto& [qf, qc] : q.terms_) {
        Factors f = pf;
        f.insert(f.end(), qf.begin(), qf.end());
        Rational c = pc * qc;
        out.add_term(std::move(f), c);
      }
    }
    return out;
  }

  friend bool operator==(const FormalPolynomial&, const FormalPolynomial&) = default;

  /// Ring homomorphism into another ring: each symbol is replaced by
  /// `value(symbol)`; `one` is the unit of the target ring.
  template <class Ring, class ValueFn>
  Ring expand(ValueFn&& value, const Ring& one) const
  {
    Ring out = one * Rational(0);
    std::map<Symbol, Ring> cache;
    for (const auto& [factors, c] : terms_) {
      Ring t = one * c;
      for (const Symbol& s : factors) {
        auto it = cache.find(s);
        if (it == cache.end()) {
          it = cache.emplace(s, value(s)).first;
        }
        t = t * it->second;
      }
      out = out + t;
    }
    return out;
  }

  /// Symbol-wise substitution by formal polynomials over another alphabet.
  template <class Target, class ValueFn>
  FormalPolynomial<Target> substitute(ValueFn&& value) const
  {
    return expand(std::forward<ValueFn>(value), FormalPolynomial<Target>::constant(1));
  }

  /// Applies `fn` to every symbol; the map must be injective-compatible
  /// with multiplication (terms are re-merged afterwards).
  template <class Fn>
  FormalPolynomial map_symbols(Fn&& fn) const
  {
    FormalPolynomial out;
    for (const auto& [factors, c] : terms_) {
      Factors f;
      f.reserve(factors.size());
      for (const Symbol& s : factors) {
        f.push_back(fn(s));
      }
      out.add_term(std::move(f), c);
    }
    return out;
  }

  std::string to_string() const
  {
    if (terms_.empty()) {
      return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [factors, c] : terms_) {
      Rational mag = abs(c);
      out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      first = false;
      std::string body;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        std::size_t j = i;
        while (j + 1 < factors.size() && factors[j + 1] == factors[i]) {
          ++j;
        }
        if (!body.empty()) {
          body += '*';
        }
        body += to_string_symbol(factors[i]);
        if (j > i) {
          body += '^' + std::to_string(j - i + 1);
        }
        i = j;
      }
      if (body.empty()) {
        out += mag.get_str();
      } else {
        out += mag == 1 ? body : mag.get_str() + "*" + body;
      }
    }
    return out;
  }

private:
  static std::string to_string_symbol(const Symbol& s)
  {
    using std::to_string;
    return to_string(s);
  }

  TermMap terms_;
};

} // namespace tcchern
