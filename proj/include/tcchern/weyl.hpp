#pragma once

#include "tcchern/polyring/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <compare>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcchern {

enum class GroupKind { U, SU, Sp };

inline std::string to_string(GroupKind k)
{
  switch (k) {
  case GroupKind::U: return "U";
  case GroupKind::SU: return "SU";
  case GroupKind::Sp: return "Sp";
  }
  return "?";
}

inline GroupKind parse_group_kind(const std::string& s)
{
  if (s == "U") return GroupKind::U;
  if (s == "SU") return GroupKind::SU;
  if (s == "Sp") return GroupKind::Sp;
  throw std::invalid_argument("unknown group kind '" + s + "' (expected U, SU or Sp)");
}

struct GroupSpec {
  GroupKind kind;
  int rank;

  /// n! for U and SU, 2^n n! for Sp.
  long long weyl_order() const
  {
    long long order = 1;
    for (int i = 2; i <= rank; ++i) {
      order *= i;
    }
    return kind == GroupKind::Sp ? order << rank : order;
  }

  std::string to_string() const { return tcchern::to_string(kind) + "(" + std::to_string(rank) + ")"; }

  friend auto operator<=>(const GroupSpec&, const GroupSpec&) = default;
};

inline nlohmann::json group_to_json(const GroupSpec& g)
{
  return {{"kind", to_string(g.kind)}, {"rank", g.rank}};
}

inline GroupSpec group_from_json(const nlohmann::json& j)
{
  return {parse_group_kind(j.at("kind").get<std::string>()), j.at("rank").get<int>()};
}

/// Largest ranks for which the Weyl group is enumerated.
struct EnumerationCaps {
  int unitary = 6;
  int symplectic = 4;
};

/// g = ((a_1..a_n), sigma) acting by x_i -> a_i x_{sigma(i)}, diagonally on
/// the x and y families. The z family is only permuted.
class WeylElement {
public:
  static WeylElement identity(int n)
  {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    return WeylElement(std::move(perm), std::vector<int>(static_cast<std::size_t>(n), 1));
  }

  /// perm holds 0-based images; signs are +-1.
  WeylElement(std::vector<int> perm, std::vector<int> signs)
      : perm_(std::move(perm)), signs_(std::move(signs))
  {
    const int n = static_cast<int>(perm_.size());
    if (static_cast<int>(signs_.size()) != n) {
      throw std::invalid_argument("Weyl element: perm and signs differ in length");
    }
    std::vector<bool> seen(perm_.size(), false);
    for (int v : perm_) {
      if (v < 0 || v >= n || seen[v]) {
        throw std::invalid_argument("Weyl element: perm is not a bijection");
      }
      seen[v] = true;
    }
    for (int s : signs_) {
      if (s != 1 && s != -1) {
        throw std::invalid_argument("Weyl element: signs must be +1 or -1");
      }
    }
  }

  int rank() const { return static_cast<int>(perm_.size()); }
  std::span<const int> perm() const { return perm_; }
  std::span<const int> signs() const { return signs_; }

  bool is_identity() const { return *this == identity(rank()); }

  /// g∘h with act(g∘h, p) = act(g, act(h, p)).
  friend WeylElement compose(const WeylElement& g, const WeylElement& h)
  {
    const int n = g.rank();
    if (h.rank() != n) {
      throw std::invalid_argument("Weyl element rank mismatch");
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::vector<int> signs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      perm[i] = g.perm_[h.perm_[i]];
      signs[i] = h.signs_[i] * g.signs_[h.perm_[i]];
    }
    return WeylElement(std::move(perm), std::move(signs));
  }

  friend bool operator==(const WeylElement&, const WeylElement&) = default;

private:
  std::vector<int> perm_;
  std::vector<int> signs_;
};

inline nlohmann::json weyl_to_json(const WeylElement& g)
{
  std::vector<int> perm(g.perm().begin(), g.perm().end());
  for (int& v : perm) {
    ++v;
  }
  return {{"perm", perm}, {"signs", std::vector<int>(g.signs().begin(), g.signs().end())}};
}

inline WeylElement weyl_from_json(const nlohmann::json& j)
{
  auto perm = j.at("perm").get<std::vector<int>>();
  for (int& v : perm) {
    --v;
  }
  return WeylElement(std::move(perm), j.at("signs").get<std::vector<int>>());
}

/// All |W| elements, identity first: permutations in lexicographic order,
/// and for Sp each permutation paired with every sign vector (all +1 first).
inline std::vector<WeylElement> enumerate_group(const GroupSpec& spec, EnumerationCaps caps = {})
{
  check_rank(spec.rank);
  const int cap = spec.kind == GroupKind::Sp ? caps.symplectic : caps.unitary;
  if (spec.rank > cap) {
    throw std::invalid_argument("Weyl group enumeration for " + spec.to_string() +
                                " exceeds the rank cap of " + std::to_string(cap));
  }
  const int n = spec.rank;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  const int sign_patterns = spec.kind == GroupKind::Sp ? (1 << n) : 1;

  std::vector<WeylElement> out;
  out.reserve(static_cast<std::size_t>(spec.weyl_order()));
  do {
    for (int mask = 0; mask < sign_patterns; ++mask) {
      std::vector<int> signs(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        signs[i] = (mask >> i) & 1 ? -1 : 1;
      }
      out.emplace_back(perm, std::move(signs));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline Polynomial act(const WeylElement& g, const Polynomial& p)
{
  const int n = p.rank();
  if (g.rank() != n) {
    throw std::invalid_argument("Weyl element rank " + std::to_string(g.rank()) +
                                " does not match polynomial rank " + std::to_string(n));
  }
  Polynomial out(n);
  for (const auto& [m, c] : p.terms()) {
    Monomial image(n);
    int sign = 1;
    for (int i = 0; i < n; ++i) {
      const int target = g.perm()[i];
      const unsigned ex = m.exponent(Family::x, i);
      const unsigned ey = m.exponent(Family::y, i);
      image.set_exponent(Family::x, target, ex);
      image.set_exponent(Family::y, target, ey);
      image.set_exponent(Family::z, target, m.exponent(Family::z, i));
      if (g.signs()[i] < 0 && (ex + ey) % 2 == 1) {
        sign = -sign;
      }
    }
    out.add_term(image, sign > 0 ? Rational(c) : Rational(-c));
  }
  return out;
}

/// mu(f) = (1/|W|) sum_g g.f, summed in enumeration order.
inline Polynomial symmetrize(const Polynomial& p, const GroupSpec& spec, EnumerationCaps caps = {})
{
  if (spec.rank != p.rank()) {
    throw std::invalid_argument("symmetrize: group rank does not match polynomial rank");
  }
  Polynomial sum(p.rank());
  for (const auto& g : enumerate_group(spec, caps)) {
    sum += act(g, p);
  }
  return sum * make_rational(1, static_cast<long>(spec.weyl_order()));
}

inline bool is_invariant(const Polynomial& p, const GroupSpec& spec, EnumerationCaps caps = {})
{
  if (spec.rank != p.rank()) {
    throw std::invalid_argument("is_invariant: group rank does not match polynomial rank");
  }
  for (const auto& g : enumerate_group(spec, caps)) {
    if (act(g, p) != p) {
      return false;
    }
  }
  return true;
}

enum class Parity { odd, even };

/// (I, J) is odd when some i_k + j_k is odd.
inline Parity parity(std::span<const unsigned> I, std::span<const unsigned> J)
{
  if (I.size() != J.size()) {
    throw std::invalid_argument("parity: multi-indices differ in length");
  }
  for (std::size_t k = 0; k < I.size(); ++k) {
    if ((I[k] + J[k]) % 2 == 1) {
      return Parity::odd;
    }
  }
  return Parity::even;
}

inline Parity parity(const Monomial& m)
{
  for (int k = 0; k < m.rank(); ++k) {
    if ((m.exponent(Family::x, k) + m.exponent(Family::y, k)) % 2 == 1) {
      return Parity::odd;
    }
  }
  return Parity::even;
}

} // namespace tcchern
