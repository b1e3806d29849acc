#pragma once

#include "tcchern/polyring/formal.hpp"
#include "tcchern/polyring/polynomial.hpp"
#include "tcchern/polyring/symmetric.hpp"
#include "tcchern/quotient.hpp"
#include "tcchern/weyl.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tcchern {

// ---------------------------------------------------------------------------
// iota, power maps

/// z_i -> x_i + y_i.
inline Polynomial iota(const Polynomial& p)
{
  if (p.uses(Family::x) || p.uses(Family::y)) {
    throw std::invalid_argument("iota expects a polynomial in the z variables only");
  }
  const int n = p.rank();
  Substitution s(n);
  for (int i = 0; i < n; ++i) {
    s.set(Family::z, i, Polynomial::variable(n, Family::x, i) + Polynomial::variable(n, Family::y, i));
  }
  return substitute(p, s);
}

/// Phi^k: x_i -> x_i, y_i -> k y_i.
inline Polynomial power_map(long k, const Polynomial& p)
{
  if (p.uses(Family::z)) {
    throw std::invalid_argument("power_map expects a polynomial in the x and y variables only");
  }
  Polynomial out(p.rank());
  const Rational base(k);
  for (const auto& [m, c] : p.terms()) {
    out.add_term(m, c * pow(base, m.degree(Family::y)));
  }
  return out;
}

/// psi^k on a single variable family: v_i -> k v_i.
inline Polynomial torus_power_map(long k, const Polynomial& p)
{
  int families = 0;
  for (Family f : kFamilies) {
    families += p.uses(f) ? 1 : 0;
  }
  if (families > 1) {
    throw std::invalid_argument("torus_power_map expects a single variable family");
  }
  Polynomial out(p.rank());
  const Rational base(k);
  for (const auto& [m, c] : p.terms()) {
    out.add_term(m, c * pow(base, m.degree()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generator expressions

/// The symbol Phi^k(iota(p_m)), k != 0, m >= 1.
class GeneratorSymbol {
public:
  GeneratorSymbol(int k, int m) : k_(k), m_(m)
  {
    if (k == 0) {
      throw std::invalid_argument("generator symbol needs a nonzero power k");
    }
    if (m < 1) {
      throw std::invalid_argument("generator symbol needs m >= 1, got " + std::to_string(m));
    }
  }

  int k() const { return k_; }
  int m() const { return m_; }

  friend auto operator<=>(const GeneratorSymbol&, const GeneratorSymbol&) = default;

private:
  int k_;
  int m_;
};

inline std::string to_string(const GeneratorSymbol& s)
{
  return "Phi^" + std::to_string(s.k()) + "(iota(p" + std::to_string(s.m()) + "))";
}

using GeneratorExpr = FormalPolynomial<GeneratorSymbol>;

inline GeneratorExpr generator(int k, int m, const Rational& c = 1)
{
  return GeneratorExpr::symbol(GeneratorSymbol(k, m), c);
}

inline nlohmann::json generator_expr_to_json(const GeneratorExpr& e)
{
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [factors, c] : e.terms()) {
    nlohmann::json fs = nlohmann::json::array();
    for (const GeneratorSymbol& s : factors) {
      fs.push_back({{"k", s.k()}, {"m", s.m()}});
    }
    terms.push_back({{"coeff", format_rational(c)}, {"factors", std::move(fs)}});
  }
  return {{"terms", std::move(terms)}};
}

inline GeneratorExpr generator_expr_from_json(const nlohmann::json& j)
{
  GeneratorExpr out;
  for (const auto& t : j.at("terms")) {
    std::vector<GeneratorSymbol> factors;
    for (const auto& f : t.at("factors")) {
      factors.emplace_back(f.at("k").get<int>(), f.at("m").get<int>());
    }
    out.add_term(std::move(factors), parse_rational(t.at("coeff").get<std::string>()));
  }
  return out;
}

inline int max_index(const GeneratorExpr& e)
{
  int top = 0;
  for (const auto& [factors, c] : e.terms()) {
    for (const GeneratorSymbol& s : factors) {
      top = std::max(top, s.m());
    }
  }
  return top;
}

/// Phi^kappa applied symbolically: every factor's k is multiplied by kappa.
inline GeneratorExpr apply_power_map(int kappa, const GeneratorExpr& e)
{
  if (kappa == 0) {
    throw std::invalid_argument("Phi^0 leaves the generator algebra");
  }
  return e.map_symbols([kappa](const GeneratorSymbol& s) { return GeneratorSymbol(s.k() * kappa, s.m()); });
}

/// sum coeff * prod Phi^k(iota(p_m)) in rank n. Power sums with m > n are
/// rejected unless `index_bound` explicitly allows them.
inline Polynomial evaluate(const GeneratorExpr& e, int n, std::optional<int> index_bound = {})
{
  check_rank(n);
  const int bound = index_bound.value_or(n);
  if (max_index(e) > bound) {
    throw std::invalid_argument("evaluate: power-sum index " + std::to_string(max_index(e)) +
                                " exceeds " + std::to_string(bound) + " in rank " +
                                std::to_string(n));
  }
  return e.expand(
      [n](const GeneratorSymbol& s) {
        return power_map(s.k(), iota(power_sum(s.m(), n, Family::z)));
      },
      Polynomial::constant(n, 1));
}

// ---------------------------------------------------------------------------
// Triangular elimination

/// Pi_{k=2}^{m} (k^m - k^(k-1)).
inline Integer pivot_product(int m)
{
  if (m < 1) {
    throw std::invalid_argument("pivot_product needs m >= 1");
  }
  Integer out = 1;
  for (int k = 2; k <= m; ++k) {
    Integer km;
    Integer kk;
    mpz_ui_pow_ui(km.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(m));
    mpz_ui_pow_ui(kk.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(k - 1));
    out *= km - kk;
  }
  if (out == 0) {
    throw std::logic_error("pivot product vanished");
  }
  return out;
}

/// A_0 = iota(p_m), A_k = Phi^{k+1}(A_{k-1}) - (k+1)^k A_{k-1}, k = 1..m-1.
inline std::vector<Polynomial> a_recursion(int m, int n)
{
  check_rank(n);
  if (m < 1 || m > n) {
    throw std::invalid_argument("a_recursion needs 1 <= m <= n");
  }
  std::vector<Polynomial> out;
  out.push_back(iota(power_sum(m, n, Family::z)));
  for (int k = 1; k < m; ++k) {
    const Polynomial& prev = out.back();
    Polynomial next = power_map(k + 1, prev) - prev * pow(Rational(k + 1), static_cast<unsigned>(k));
    out.push_back(std::move(next));
  }
  return out;
}

namespace detail {

// An expression together with its exact expansion sum_j coeff[j] P_{m-j,j}.
struct Tracked {
  GeneratorExpr expr;
  std::vector<Rational> coeff;

  static Tracked iota_power_sum(int m)
  {
    Tracked t{generator(1, m), std::vector<Rational>(static_cast<std::size_t>(m) + 1)};
    for (int j = 0; j <= m; ++j) {
      t.coeff[j] = Rational(binomial(static_cast<unsigned>(m), static_cast<unsigned>(j)));
    }
    return t;
  }

  Tracked power(int kappa) const
  {
    Tracked t{apply_power_map(kappa, expr), coeff};
    for (std::size_t j = 0; j < t.coeff.size(); ++j) {
      t.coeff[j] *= pow(Rational(kappa), static_cast<unsigned>(j));
    }
    return t;
  }

  Tracked& add_scaled(const Tracked& other, const Rational& s)
  {
    expr += other.expr * s;
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      coeff[j] += other.coeff[j] * s;
    }
    return *this;
  }

  // Phi^kappa(A) - kappa^j A: the P_{m-j,j} coefficient becomes zero.
  Tracked eliminate(int kappa, int j) const
  {
    Tracked t = power(kappa);
    t.add_scaled(*this, -pow(Rational(kappa), static_cast<unsigned>(j)));
    return t;
  }

  // Divides so that the coefficient at `target` is one; every other index
  // in 1..m must already vanish.
  Tracked isolate(int target) const
  {
    for (std::size_t j = 1; j < coeff.size(); ++j) {
      if (static_cast<int>(j) != target && coeff[j] != 0) {
        throw std::logic_error("elimination left P_{" + std::to_string(coeff.size() - 1 - j) +
                               "," + std::to_string(j) + "} behind");
      }
    }
    if (coeff[target] == 0) {
      throw std::logic_error("zero pivot in elimination");
    }
    Tracked t = *this;
    const Rational inv = 1 / coeff[target];
    t.expr *= inv;
    for (Rational& c : t.coeff) {
      c *= inv;
    }
    return t;
  }
};

} // namespace detail

/// Which power maps the elimination uses.
///   proof:      kappa = 2, 3, ..., m killing j = 1, 2, ... in turn, then
///                peeling P_{0,m}, P_{1,m-1}, ... off iota(p_m) one by one.
///   sign_first: kappa = -1 removes every index of the wrong parity at
///                once, then kappa = 2, 3, ... removes the rest directly.
enum class Schedule { proof, sign_first };

inline std::string to_string(Schedule s) { return s == Schedule::proof ? "proof" : "sign-first"; }

inline Schedule parse_schedule(const std::string& s)
{
  if (s == "proof") return Schedule::proof;
  if (s == "sign-first") return Schedule::sign_first;
  throw std::invalid_argument("unknown schedule '" + s + "' (expected proof or sign-first)");
}

/// An expression congruent to P_{m-t,t}(n) modulo any ideal containing
/// P_{m,0}(n); valid for every rank.
inline GeneratorExpr eliminate_to(int m, int t, Schedule schedule = Schedule::proof)
{
  if (m < 1 || t < 1 || t > m) {
    throw std::invalid_argument("eliminate_to needs 1 <= t <= m");
  }
  using detail::Tracked;
  if (schedule == Schedule::sign_first) {
    Tracked a = Tracked::iota_power_sum(m);
    std::vector<int> pending;
    int opposite = -1;
    for (int j = 1; j <= m; ++j) {
      if (j == t) {
        continue;
      }
      if ((j - t) % 2 != 0) {
        opposite = j;
      } else {
        pending.push_back(j);
      }
    }
    if (opposite > 0) {
      a = a.eliminate(-1, opposite);
    }
    int kappa = 2;
    for (int j : pending) {
      a = a.eliminate(kappa++, j);
    }
    return a.isolate(t).expr;
  }

  Tracked sum = Tracked::iota_power_sum(m);
  for (int top = m;; --top) {
    Tracked a = sum;
    for (int k = 1; k < top; ++k) {
      a = a.eliminate(k + 1, k);
    }
    const Tracked piece = a.isolate(top);
    if (top == t) {
      return piece.expr;
    }
    sum.add_scaled(piece, -sum.coeff[top]);
  }
}

// ---------------------------------------------------------------------------
// Decomposition

struct DecompositionTarget {
  GroupSpec group;
  int a;
  int b;
};

struct DecomposeOptions {
  Schedule schedule = Schedule::proof;
  /// Largest total degree a+b accepted for Sp(n); 0 means 2n.
  int sp_max_degree = 0;
};

class CertificationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Throws unless the target is in range for its group.
inline void check_target(const DecompositionTarget& t, const DecomposeOptions& options = {})
{
  check_rank(t.group.rank);
  if (t.a < 0 || t.b < 0) {
    throw std::invalid_argument("a and b must be nonnegative");
  }
  const int m = t.a + t.b;
  if (m < 1) {
    throw std::invalid_argument("a + b must be at least 1");
  }
  if (t.group.kind == GroupKind::Sp) {
    if (m % 2 != 0) {
      throw std::invalid_argument("odd total degree is not signed-invariant");
    }
    const int cap = options.sp_max_degree > 0 ? options.sp_max_degree : 2 * t.group.rank;
    if (m > cap) {
      throw std::invalid_argument("a + b = " + std::to_string(m) + " exceeds the Sp degree cap " +
                                  std::to_string(cap));
    }
  } else if (m > t.group.rank) {
    throw std::invalid_argument("a + b = " + std::to_string(m) + " exceeds the rank " +
                                std::to_string(t.group.rank));
  }
}

/// A generator expression certified congruent to P_{a,b}(n) modulo the
/// group's ideal. Construction performs the check.
class DecompositionResult {
public:
  DecompositionResult(DecompositionTarget target, GeneratorExpr expr, const IdealSpec& ideal)
      : target_(target), expr_(std::move(expr))
  {
    if (ideal.rank() != target_.group.rank) {
      throw std::invalid_argument("ideal rank does not match the decomposition target");
    }
    const int n = target_.group.rank;
    const Polynomial value = evaluate(expr_, n, std::max(n, target_.a + target_.b));
    if (!equal_mod_ideal(value, two_var_power_sum(target_.a, target_.b, n), ideal)) {
      throw CertificationError("expression for P_{" + std::to_string(target_.a) + "," +
                               std::to_string(target_.b) + "} in " + target_.group.to_string() +
                               " failed certification");
    }
    certified_ = true;
  }

  const DecompositionTarget& target() const { return target_; }
  const GeneratorExpr& expr() const { return expr_; }
  bool certified() const { return certified_; }

  nlohmann::json to_json() const
  {
    nlohmann::json j = generator_expr_to_json(expr_);
    j["target"] = {{"group", to_string(target_.group.kind)},
                   {"rank", target_.group.rank},
                   {"a", target_.a},
                   {"b", target_.b}};
    j["certified"] = certified_;
    return j;
  }

private:
  DecompositionTarget target_;
  GeneratorExpr expr_;
  bool certified_ = false;
};

/// P_{a,0} lies in every group ideal, so it decomposes as zero; otherwise
/// the elimination isolates P_{a,b} from iota(p_{a+b}).
inline DecompositionResult decompose(const GroupSpec& group, int a, int b, const IdealSpec& ideal,
                                     const DecomposeOptions& options = {})
{
  const DecompositionTarget target{group, a, b};
  check_target(target, options);
  GeneratorExpr expr = b == 0 ? GeneratorExpr() : eliminate_to(a + b, b, options.schedule);
  return DecompositionResult(target, std::move(expr), ideal);
}

inline DecompositionResult decompose(const GroupSpec& group, int a, int b, IdealRegistry& registry,
                                     const DecomposeOptions& options = {})
{
  check_target({group, a, b}, options);
  return decompose(group, a, b, *registry.get(group), options);
}

inline DecompositionResult decompose(const GroupSpec& group, int a, int b,
                                     const DecomposeOptions& options = {})
{
  check_target({group, a, b}, options);
  return decompose(group, a, b, ideal_for_group(group), options);
}

// ---------------------------------------------------------------------------
// Signed multisymmetric generation

/// The symbol P_{a,b}.
struct TwoVarSymbol {
  int a;
  int b;
  friend auto operator<=>(const TwoVarSymbol&, const TwoVarSymbol&) = default;
};

inline std::string to_string(const TwoVarSymbol& s)
{
  return "P_{" + std::to_string(s.a) + "," + std::to_string(s.b) + "}";
}

using MultisymmetricExpr = FormalPolynomial<TwoVarSymbol>;

inline Polynomial expand_multisymmetric(const MultisymmetricExpr& e, int n)
{
  return e.expand([n](const TwoVarSymbol& s) { return two_var_power_sum(s.a, s.b, n); },
                  Polynomial::constant(n, 1));
}

namespace detail {

using ExponentPairs = std::vector<std::pair<unsigned, unsigned>>;

// Nonzero (i_k, j_k) pairs sorted descending: a W-orbit label.
inline ExponentPairs canonical_pairs(const Monomial& m)
{
  ExponentPairs pairs;
  for (int k = 0; k < m.rank(); ++k) {
    const unsigned i = m.exponent(Family::x, k);
    const unsigned j = m.exponent(Family::y, k);
    if (i + j > 0) {
      pairs.emplace_back(i, j);
    }
  }
  std::sort(pairs.begin(), pairs.end(), std::greater<>());
  return pairs;
}

inline Monomial pairs_monomial(const ExponentPairs& pairs, int n)
{
  Monomial m(n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    m.set_exponent(Family::x, static_cast<int>(k), pairs[k].first);
    m.set_exponent(Family::y, static_cast<int>(k), pairs[k].second);
  }
  return m;
}

class MuGenerator {
public:
  explicit MuGenerator(int n) : n_(n), group_{GroupKind::Sp, n} {}

  const Polynomial& mu(const ExponentPairs& pairs)
  {
    auto it = mu_.find(pairs);
    if (it == mu_.end()) {
      it = mu_.emplace(pairs, symmetrize(Polynomial::term(pairs_monomial(pairs, n_)), group_)).first;
    }
    return it->second;
  }

  MultisymmetricExpr generate(const ExponentPairs& pairs)
  {
    auto it = memo_.find(pairs);
    if (it != memo_.end()) {
      return it->second;
    }
    MultisymmetricExpr out = compute(pairs);
    memo_.emplace(pairs, out);
    return out;
  }

private:
  MultisymmetricExpr compute(const ExponentPairs& pairs)
  {
    if (pairs.empty()) {
      return MultisymmetricExpr::constant(1);
    }
    const Monomial full = pairs_monomial(pairs, n_);
    if (pairs.size() == 1) {
      const Rational c = mu(pairs).coefficient(full);
      const int a = static_cast<int>(pairs[0].first);
      const int b = static_cast<int>(pairs[0].second);
      return MultisymmetricExpr::symbol({a, b}, c);
    }
    // mu(first) mu(rest) = c mu(full) + Theta, Theta supported on fewer indices.
    const ExponentPairs first(pairs.begin(), pairs.begin() + 1);
    const ExponentPairs rest(pairs.begin() + 1, pairs.end());
    const Polynomial product = mu(first) * mu(rest);
    const Rational c = product.coefficient(full) / mu(pairs).coefficient(full);
    if (c == 0) {
      throw std::logic_error("mu_generate: vanishing leading coefficient");
    }
    Polynomial theta = product - mu(pairs) * c;
    MultisymmetricExpr expr = generate(first) * generate(rest);
    while (!theta.is_zero()) {
      const Monomial lead = theta.leading_monomial();
      const ExponentPairs orbit = canonical_pairs(lead);
      if (orbit.size() >= pairs.size()) {
        throw std::logic_error("mu_generate: remainder does not drop in support");
      }
      const Polynomial& mu_orbit = mu(orbit);
      const Rational scale = theta.leading_coefficient() / mu_orbit.coefficient(lead);
      theta -= mu_orbit * scale;
      expr -= generate(orbit) * scale;
    }
    return expr * (1 / c);
  }

  int n_;
  GroupSpec group_;
  std::map<ExponentPairs, Polynomial> mu_;
  std::map<ExponentPairs, MultisymmetricExpr> memo_;
};

} // namespace detail

/// An expression in P_{a,b} whose expansion equals mu(x^I y^J) over Sp(n)
/// exactly.
inline MultisymmetricExpr mu_generate(std::span<const unsigned> I, std::span<const unsigned> J, int n)
{
  check_rank(n);
  if (static_cast<int>(I.size()) != n || static_cast<int>(J.size()) != n) {
    throw std::invalid_argument("mu_generate: multi-indices must have length n");
  }
  if (parity(I, J) == Parity::odd) {
    throw std::invalid_argument("mu_generate: odd multi-index has zero symmetrization");
  }
  const Monomial m = Monomial::from_exponents(n, I, J);
  detail::MuGenerator gen(n);
  return gen.generate(detail::canonical_pairs(m));
}

// ---------------------------------------------------------------------------
// Chern-Weil rewriting

/// sigma_i(Omega_k): the i-th elementary symmetric class of the curvature
/// of the k-th associated bundle.
struct CurvatureSymbol {
  int i;
  int k;
  friend auto operator<=>(const CurvatureSymbol& a, const CurvatureSymbol& b)
  {
    if (auto c = a.k <=> b.k; c != 0) {
      return b.k <=> a.k;  // Omega_1 before Omega_-1, larger k first
    }
    return a.i <=> b.i;
  }
  friend bool operator==(const CurvatureSymbol&, const CurvatureSymbol&) = default;
};

inline std::string to_string(const CurvatureSymbol& s)
{
  return "s" + std::to_string(s.i) + "(Omega_" + std::to_string(s.k) + ")";
}

using CurvatureExpr = FormalPolynomial<CurvatureSymbol>;

/// Rewrites each Phi^k(iota(p_m)) as p_m evaluated on Omega_k and expands
/// p_m through Newton's identities in sigma_1..sigma_n.
inline CurvatureExpr curvature_classes(const GeneratorExpr& e, int n)
{
  std::map<GeneratorSymbol, CurvatureExpr> memo;
  return e.substitute<CurvatureSymbol>([&](const GeneratorSymbol& s) {
    auto it = memo.find(s);
    if (it == memo.end()) {
      CurvatureExpr value;
      const ElementaryExpr newton = power_sum_in_elementary(s.m(), n);
      for (const auto& [factors, c] : newton.terms()) {
        std::vector<CurvatureSymbol> mapped;
        for (const ElementarySymbol& sym : factors) {
          mapped.push_back({sym.i, s.k()});
        }
        value.add_term(std::move(mapped), c);
      }
      it = memo.emplace(s, std::move(value)).first;
    }
    return it->second;
  });
}

} // namespace tcchern
