#pragma once

#include "tcchern/polyring/json.hpp"
#include "tcchern/polyring/polynomial.hpp"
#include "tcchern/polyring/symmetric.hpp"
#include "tcchern/weyl.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace tcchern {

/// The only monomial order in use: x-block before y-block before z-block,
/// graded reverse lexicographic inside each block.
struct MonomialOrder {
  static constexpr std::string_view name = BlockGrevlex::name;
  static std::strong_ordering compare(const Monomial& a, const Monomial& b)
  {
    return BlockGrevlex::compare(a, b);
  }
};

/// Remainder of multivariate division of p by `basis`. Every term of the
/// result is irreducible (full reduction, not just of the leading term).
inline Polynomial reduce(Polynomial p, std::span<const Polynomial> basis)
{
  Polynomial remainder(p.rank());
  while (!p.is_zero()) {
    const Monomial lm = p.leading_monomial();
    const Rational lc = p.leading_coefficient();
    bool divided = false;
    for (const Polynomial& g : basis) {
      if (g.rank() != p.rank()) {
        throw std::invalid_argument("reduce: basis rank does not match polynomial rank");
      }
      const Monomial& glm = g.leading_monomial();
      if (glm.divides(lm)) {
        p.add_scaled(g, -lc / g.leading_coefficient(), lm / glm);
        divided = true;
        break;
      }
    }
    if (!divided) {
      remainder.add_term(lm, lc);
      p.add_term(lm, -lc);
    }
  }
  return remainder;
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g)
{
  const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  Polynomial s(f.rank());
  s.add_scaled(f, 1 / f.leading_coefficient(), l / f.leading_monomial());
  s.add_scaled(g, -1 / g.leading_coefficient(), l / g.leading_monomial());
  return s;
}

/// Every S-polynomial of the set reduces to zero against it.
inline bool satisfies_buchberger(std::span<const Polynomial> basis)
{
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].is_zero()) {
      return false;
    }
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (basis[i].leading_monomial().coprime_with(basis[j].leading_monomial())) {
        continue;
      }
      if (!reduce(s_polynomial(basis[i], basis[j]), basis).is_zero()) {
        return false;
      }
    }
  }
  return true;
}

namespace detail {

struct CriticalPair {
  unsigned sugar;
  Monomial lcm;
  std::size_t i;
  std::size_t j;
};

// Smallest sugar first, then smallest lcm, then oldest pair.
inline bool pair_before(const CriticalPair& a, const CriticalPair& b)
{
  if (a.sugar != b.sugar) {
    return a.sugar < b.sugar;
  }
  const auto c = BlockGrevlex::compare(a.lcm, b.lcm);
  if (c != 0) {
    return c < 0;
  }
  return std::tie(a.j, a.i) < std::tie(b.j, b.i);
}

// Drops redundant leading terms, tail-reduces, makes monic, sorts by
// leading monomial (smallest first).
inline std::vector<Polynomial> reduce_basis(std::vector<Polynomial> g)
{
  std::sort(g.begin(), g.end(), [](const Polynomial& a, const Polynomial& b) {
    return BlockGrevlex::compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  std::vector<Polynomial> minimal;
  for (const Polynomial& p : g) {
    bool redundant = false;
    for (const Polynomial& q : minimal) {
      if (q.leading_monomial().divides(p.leading_monomial())) {
        redundant = true;
        break;
      }
    }
    if (!redundant) {
      minimal.push_back(p.monic());
    }
  }
  std::vector<Polynomial> out;
  out.reserve(minimal.size());
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<Polynomial> others;
    for (std::size_t l = 0; l < minimal.size(); ++l) {
      if (l != k) {
        others.push_back(minimal[l]);
      }
    }
    const Polynomial& p = minimal[k];
    Polynomial tail = p;
    tail.add_term(p.leading_monomial(), -p.leading_coefficient());
    Polynomial reduced = reduce(std::move(tail), others);
    reduced.add_term(p.leading_monomial(), 1);
    out.push_back(std::move(reduced));
  }
  return out;
}

} // namespace detail

/// Reduced Gröbner basis under the block order: Buchberger with sugar pair
/// selection and the coprime-leading-term criterion.
inline std::vector<Polynomial> groebner(std::span<const Polynomial> generators)
{
  if (generators.empty()) {
    throw std::invalid_argument("groebner: empty generator list");
  }
  const int n = generators.front().rank();
  std::vector<Polynomial> g;
  std::vector<unsigned> sugar;
  for (const Polynomial& p : generators) {
    if (p.rank() != n) {
      throw std::invalid_argument("groebner: generators have different ranks");
    }
    Polynomial r = reduce(p, g);
    if (!r.is_zero()) {
      sugar.push_back(p.total_degree());
      g.push_back(r.monic());
    }
  }
  if (g.empty()) {
    return {};
  }

  std::vector<detail::CriticalPair> pairs;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      const Monomial& a = g[i].leading_monomial();
      const Monomial& b = g[j].leading_monomial();
      const Monomial l = lcm(a, b);
      const unsigned s = std::max(sugar[i] + (l.degree() - a.degree()),
                                  sugar[j] + (l.degree() - b.degree()));
      pairs.push_back({s, l, i, j});
    }
  };
  for (std::size_t j = 1; j < g.size(); ++j) {
    add_pairs(j);
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), detail::pair_before);
    const detail::CriticalPair pair = *best;
    pairs.erase(best);
    if (g[pair.i].leading_monomial().coprime_with(g[pair.j].leading_monomial())) {
      continue;
    }
    Polynomial r = reduce(s_polynomial(g[pair.i], g[pair.j]), g);
    if (r.is_zero()) {
      continue;
    }
    g.push_back(r.monic());
    sugar.push_back(pair.sugar);
    add_pairs(g.size() - 1);
  }
  return detail::reduce_basis(std::move(g));
}

/// Generators and reduced Gröbner basis of an ideal. Immutable once built.
class IdealSpec {
public:
  explicit IdealSpec(std::vector<Polynomial> generators, std::optional<GroupSpec> group = {})
      : group_(group), generators_(std::move(generators))
  {
    check_generators();
    basis_ = groebner(generators_);
  }

  /// Adopts a precomputed basis after re-verifying it.
  IdealSpec(std::vector<Polynomial> generators, std::vector<Polynomial> basis,
            std::optional<GroupSpec> group)
      : group_(group), generators_(std::move(generators)), basis_(std::move(basis))
  {
    check_generators();
    if (!verify()) {
      throw std::invalid_argument("supplied basis is not a Gröbner basis of the generators");
    }
  }

  const std::optional<GroupSpec>& group() const { return group_; }
  int rank() const { return generators_.front().rank(); }
  std::span<const Polynomial> generators() const { return generators_; }
  std::span<const Polynomial> basis() const { return basis_; }

  /// Buchberger criterion plus membership of every generator.
  bool verify() const
  {
    for (const Polynomial& b : basis_) {
      if (b.rank() != rank()) {
        return false;
      }
    }
    if (!satisfies_buchberger(basis_)) {
      return false;
    }
    for (const Polynomial& g : generators_) {
      if (!reduce(g, basis_).is_zero()) {
        return false;
      }
    }
    return true;
  }

private:
  void check_generators() const
  {
    if (generators_.empty()) {
      throw std::invalid_argument("an ideal needs at least one generator");
    }
    const int n = generators_.front().rank();
    for (const Polynomial& g : generators_) {
      if (g.rank() != n) {
        throw std::invalid_argument("ideal generators have different ranks");
      }
    }
  }

  std::optional<GroupSpec> group_;
  std::vector<Polynomial> generators_;
  std::vector<Polynomial> basis_;
};

/// U(n): e_1..e_n in x. SU(n): p_1..p_n in x and p_1 in y.
/// Sp(n): elementary symmetric polynomials in x_1^2..x_n^2.
inline std::vector<Polynomial> group_ideal_generators(const GroupSpec& spec)
{
  check_rank(spec.rank);
  const int n = spec.rank;
  std::vector<Polynomial> gens;
  switch (spec.kind) {
  case GroupKind::U:
    for (int i = 1; i <= n; ++i) {
      gens.push_back(elementary_symmetric(i, n, Family::x));
    }
    break;
  case GroupKind::SU:
    for (int m = 1; m <= n; ++m) {
      gens.push_back(power_sum(m, n, Family::x));
    }
    gens.push_back(power_sum(1, n, Family::y));
    break;
  case GroupKind::Sp: {
    Substitution squares(n);
    for (int i = 0; i < n; ++i) {
      squares.set(Family::x, i, Polynomial::term(Monomial::variable(n, Family::x, i, 2)));
    }
    for (int i = 1; i <= n; ++i) {
      gens.push_back(substitute(elementary_symmetric(i, n, Family::x), squares));
    }
    break;
  }
  }
  return gens;
}

inline IdealSpec ideal_for_group(const GroupSpec& spec)
{
  return IdealSpec(group_ideal_generators(spec), spec);
}

inline Polynomial normal_form(const Polynomial& p, const IdealSpec& ideal)
{
  if (p.rank() != ideal.rank()) {
    throw std::invalid_argument("normal_form: rank " + std::to_string(p.rank()) +
                                " does not match ideal rank " + std::to_string(ideal.rank()));
  }
  return reduce(p, ideal.basis());
}

inline bool equal_mod_ideal(const Polynomial& p, const Polynomial& q, const IdealSpec& ideal)
{
  return normal_form(p - q, ideal).is_zero();
}

/// Caches one IdealSpec per group. With a cache directory, bases are also
/// persisted as JSON and re-verified when loaded; a file that fails to parse
/// or verify is ignored and overwritten.
class IdealRegistry {
public:
  IdealRegistry() = default;
  explicit IdealRegistry(std::filesystem::path cache_dir) : cache_dir_(std::move(cache_dir)) {}

  /// Registry honouring the TC_CACHE_DIR environment variable.
  static IdealRegistry from_environment()
  {
    if (const char* dir = std::getenv("TC_CACHE_DIR"); dir != nullptr && *dir != '\0') {
      return IdealRegistry(dir);
    }
    return IdealRegistry();
  }

  const std::optional<std::filesystem::path>& cache_dir() const { return cache_dir_; }

  std::shared_ptr<const IdealSpec> get(const GroupSpec& spec)
  {
    std::lock_guard lock(mutex_);
    auto it = ideals_.find(spec);
    if (it != ideals_.end()) {
      return it->second;
    }
    std::shared_ptr<const IdealSpec> ideal = load(spec);
    if (!ideal) {
      ideal = std::make_shared<const IdealSpec>(ideal_for_group(spec));
      store(spec, *ideal);
    }
    ideals_.emplace(spec, ideal);
    return ideal;
  }

  static nlohmann::json cache_json(const GroupSpec& spec, const IdealSpec& ideal)
  {
    nlohmann::json basis = nlohmann::json::array();
    for (const Polynomial& b : ideal.basis()) {
      basis.push_back(polynomial_to_json(b));
    }
    return {{"group", to_string(spec.kind)},
            {"rank", spec.rank},
            {"order", std::string(MonomialOrder::name)},
            {"basis", std::move(basis)}};
  }

  std::optional<std::filesystem::path> cache_file(const GroupSpec& spec) const
  {
    if (!cache_dir_) {
      return std::nullopt;
    }
    return *cache_dir_ / (to_string(spec.kind) + std::to_string(spec.rank) + ".json");
  }

private:
  std::shared_ptr<const IdealSpec> load(const GroupSpec& spec) const
  {
    const auto file = cache_file(spec);
    if (!file || !std::filesystem::exists(*file)) {
      return nullptr;
    }
    try {
      std::ifstream in(*file);
      const nlohmann::json j = nlohmann::json::parse(in);
      if (j.at("group").get<std::string>() != to_string(spec.kind) ||
          j.at("rank").get<int>() != spec.rank ||
          j.at("order").get<std::string>() != MonomialOrder::name) {
        return nullptr;
      }
      std::vector<Polynomial> basis;
      for (const auto& b : j.at("basis")) {
        basis.push_back(polynomial_from_json(b));
      }
      return std::make_shared<const IdealSpec>(group_ideal_generators(spec), std::move(basis),
                                               spec);
    } catch (const std::exception&) {
      return nullptr;
    }
  }

  void store(const GroupSpec& spec, const IdealSpec& ideal) const
  {
    const auto file = cache_file(spec);
    if (!file) {
      return;
    }
    std::error_code ec;
    std::filesystem::create_directories(*cache_dir_, ec);
    const auto tmp = std::filesystem::path(file->string() + ".tmp");
    {
      std::ofstream out(tmp);
      if (!out) {
        return;
      }
      out << cache_json(spec, ideal).dump(1) << '\n';
    }
    std::filesystem::rename(tmp, *file, ec);
  }

  std::optional<std::filesystem::path> cache_dir_;
  std::mutex mutex_;
  std::map<GroupSpec, std::shared_ptr<const IdealSpec>> ideals_;
};

} // namespace tcchern
