#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace tcchern {

/// The three variable families x, y, z. Every polynomial carries all three
/// with a common rank n.
enum class Family : std::uint8_t { x = 0, y = 1, z = 2 };

inline constexpr std::array<Family, 3> kFamilies{Family::x, Family::y, Family::z};

/// Largest rank a monomial key can hold.
inline constexpr int kMaxRank = 8;

inline constexpr char family_name(Family f)
{
  switch (f) {
  case Family::x: return 'x';
  case Family::y: return 'y';
  case Family::z: return 'z';
  }
  return '?';
}

inline void check_rank(int rank)
{
  if (rank < 1 || rank > kMaxRank) {
    throw std::invalid_argument("rank must lie in [1, " + std::to_string(kMaxRank) +
                                "], got " + std::to_string(rank));
  }
}

/// x^I y^J z^K with |I| = |J| = |K| = rank. Fixed-size storage keeps
/// monomials trivially copyable so they can serve as cheap map keys.
class Monomial {
public:
  using Exponent = std::uint16_t;

  Monomial() = default;

  explicit Monomial(int rank) : rank_(static_cast<std::uint8_t>(rank))
  {
    check_rank(rank);
  }

  static Monomial variable(int rank, Family f, int index, unsigned power = 1)
  {
    Monomial m(rank);
    m.set_exponent(f, index, power);
    return m;
  }

  /// Builds x^I y^J z^K; empty spans stand for all-zero exponents.
  static Monomial from_exponents(int rank,
                                 std::span<const unsigned> x,
                                 std::span<const unsigned> y = {},
                                 std::span<const unsigned> z = {})
  {
    Monomial m(rank);
    const std::array<std::span<const unsigned>, 3> parts{x, y, z};
    for (Family f : kFamilies) {
      auto part = parts[static_cast<int>(f)];
      if (part.empty()) {
        continue;
      }
      if (static_cast<int>(part.size()) != rank) {
        throw std::invalid_argument(std::string("exponent sequence for ") + family_name(f) +
                                    " has length " + std::to_string(part.size()) +
                                    ", expected " + std::to_string(rank));
      }
      for (int i = 0; i < rank; ++i) {
        m.set_exponent(f, i, part[i]);
      }
    }
    return m;
  }

  int rank() const { return rank_; }

  unsigned exponent(Family f, int index) const
  {
    return exps_[slot(f, index)];
  }

  void set_exponent(Family f, int index, unsigned e)
  {
    if (index < 0 || index >= rank_) {
      throw std::out_of_range("variable index " + std::to_string(index) + " outside rank " +
                              std::to_string(rank_));
    }
    if (e > std::numeric_limits<Exponent>::max()) {
      throw std::overflow_error("exponent overflow");
    }
    exps_[slot(f, index)] = static_cast<Exponent>(e);
  }

  unsigned degree(Family f) const
  {
    unsigned d = 0;
    for (int i = 0; i < rank_; ++i) {
      d += exps_[slot(f, i)];
    }
    return d;
  }

  unsigned degree() const
  {
    return degree(Family::x) + degree(Family::y) + degree(Family::z);
  }

  bool uses(Family f) const { return degree(f) != 0; }

  bool is_one() const { return degree() == 0; }

  bool divides(const Monomial& other) const
  {
    for (std::size_t s = 0; s < exps_.size(); ++s) {
      if (exps_[s] > other.exps_[s]) {
        return false;
      }
    }
    return true;
  }

  bool coprime_with(const Monomial& other) const
  {
    for (std::size_t s = 0; s < exps_.size(); ++s) {
      if (exps_[s] != 0 && other.exps_[s] != 0) {
        return false;
      }
    }
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b)
  {
    same_rank(a, b);
    Monomial out(a.rank_);
    for (std::size_t s = 0; s < a.exps_.size(); ++s) {
      const unsigned e = unsigned{a.exps_[s]} + b.exps_[s];
      if (e > std::numeric_limits<Exponent>::max()) {
        throw std::overflow_error("exponent overflow");
      }
      out.exps_[s] = static_cast<Exponent>(e);
    }
    return out;
  }

  /// a / b; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b)
  {
    same_rank(a, b);
    if (!b.divides(a)) {
      throw std::domain_error("monomial quotient is not exact");
    }
    Monomial out(a.rank_);
    for (std::size_t s = 0; s < a.exps_.size(); ++s) {
      out.exps_[s] = static_cast<Exponent>(a.exps_[s] - b.exps_[s]);
    }
    return out;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b)
  {
    same_rank(a, b);
    Monomial out(a.rank_);
    for (std::size_t s = 0; s < a.exps_.size(); ++s) {
      out.exps_[s] = std::max(a.exps_[s], b.exps_[s]);
    }
    return out;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string() const
  {
    std::string out;
    for (Family f : kFamilies) {
      for (int i = 0; i < rank_; ++i) {
        const unsigned e = exponent(f, i);
        if (e == 0) {
          continue;
        }
        if (!out.empty()) {
          out += '*';
        }
        out += family_name(f);
        out += std::to_string(i + 1);
        if (e > 1) {
          out += '^' + std::to_string(e);
        }
      }
    }
    return out.empty() ? "1" : out;
  }

private:
  static std::size_t slot(Family f, int index)
  {
    return static_cast<std::size_t>(f) * kMaxRank + static_cast<std::size_t>(index);
  }

  static void same_rank(const Monomial& a, const Monomial& b)
  {
    if (a.rank_ != b.rank_) {
      throw std::invalid_argument("rank mismatch between monomials");
    }
  }

  std::uint8_t rank_ = 0;
  std::array<Exponent, 3 * kMaxRank> exps_{};
};

/// Block order: the x-block decides first, then y, then z; each block is
/// compared by graded reverse lexicographic order with x1 > x2 > ... > xn.
struct BlockGrevlex {
  static constexpr std::string_view name = "block-grevlex-xyz";

  static std::strong_ordering compare(const Monomial& a, const Monomial& b)
  {
    for (Family f : kFamilies) {
      const unsigned da = a.degree(f);
      const unsigned db = b.degree(f);
      if (da != db) {
        return da <=> db;
      }
      for (int i = a.rank() - 1; i >= 0; --i) {
        const unsigned ea = a.exponent(f, i);
        const unsigned eb = b.exponent(f, i);
        if (ea != eb) {
          // The smaller exponent in the last differing variable wins.
          return eb <=> ea;
        }
      }
    }
    return std::strong_ordering::equal;
  }
};

/// Map comparator placing the leading monomial first.
struct LeadingFirst {
  bool operator()(const Monomial& a, const Monomial& b) const
  {
    return BlockGrevlex::compare(a, b) > 0;
  }
};

} // namespace tcchern
