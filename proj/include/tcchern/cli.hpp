#pragma once

#include "tcchern/chern_weil.hpp"
#include "tcchern/generators.hpp"
#include "tcchern/polyring/json.hpp"
#include "tcchern/polyring/random.hpp"
#include "tcchern/polyring/symmetric.hpp"
#include "tcchern/quotient.hpp"
#include "tcchern/weyl.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tcchern::cli {

inline constexpr std::string_view tool_version = "0.1.0";

struct Caps {
  int max_unitary_rank = 6;
  int max_symplectic_rank = 4;
  int max_degree = 12;
  int min_grid = 16;
  int max_grid = 256;
  /// Largest even a+b decompose accepts for Sp(n); 0 means 2n.
  int sp_max_degree = 0;
};

/// Invalid arguments or inputs; the tool exits with status 2.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Command payload and whether every check in it passed.
struct JobOutcome {
  nlohmann::json payload;
  bool ok = false;
};

/// Payload plus a "job" block with the echoed command, the tool version and
/// the wall time. Everything outside "job.timing_ms" is reproducible.
inline nlohmann::json job_report(const JobOutcome& outcome, const std::vector<std::string>& argv, double timing_ms)
{
  nlohmann::json j = outcome.payload;
  j["job"] = {{"command", argv}, {"tool_version", std::string(tool_version)}, {"timing_ms", timing_ms}};
  return j;
}

/// The report without its timing, for byte-for-byte comparison of reruns.
inline nlohmann::json comparable(nlohmann::json report)
{
  if (report.contains("job")) {
    report["job"].erase("timing_ms");
  }
  return report;
}

inline void check_group(const GroupSpec& g, const Caps& caps = {})
{
  const int cap = g.kind == GroupKind::Sp ? caps.max_symplectic_rank : caps.max_unitary_rank;
  if (g.rank < 1 || g.rank > cap) {
    throw UsageError("rank " + std::to_string(g.rank) + " is outside 1.." + std::to_string(cap) + " for " +
                     to_string(g.kind));
  }
}

inline JobOutcome cmd_decompose(const GroupSpec& group, int a, int b, Schedule schedule, IdealRegistry& registry,
                                const Caps& caps = {})
{
  check_group(group, caps);
  const DecomposeOptions options{schedule, caps.sp_max_degree};
  try {
    check_target({group, a, b}, options);
  }
  catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const DecompositionResult result = decompose(group, a, b, registry, options);
  nlohmann::json payload = result.to_json();
  payload["schedule"] = to_string(schedule);
  return {std::move(payload), result.certified()};
}

namespace detail {

struct Property {
  explicit Property(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  long cases = 0;
  std::string detail;
  nlohmann::json extra = nlohmann::json::object();

  void check(bool ok, const std::string& what)
  {
    ++cases;
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }

  nlohmann::json to_json() const
  {
    nlohmann::json j{{"name", name}, {"passed", passed}, {"cases", cases}};
    j.update(extra);
    if (!passed) {
      j["first_failure"] = detail;
    }
    return j;
  }
};

/// All exponent vectors (I, J) of length n with |I| + |J| <= d.
inline void for_each_xy_monomial(int n, unsigned d, const std::function<void(const Monomial&)>& visit)
{
  std::vector<unsigned> e(static_cast<std::size_t>(2 * n), 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
    if (pos == e.size()) {
      const std::vector<unsigned> I(e.begin(), e.begin() + n), J(e.begin() + n, e.end());
      visit(Monomial::from_exponents(n, I, J));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[pos] = k;
      rec(pos + 1, left - k);
    }
    e[pos] = 0;
  };
  rec(0, d);
}

inline long long binomial_count(int top, int k)
{
  long long out = 1;
  for (int i = 1; i <= k; ++i) {
    out = out * (top - k + i) / i;
  }
  return out;
}

inline std::string monomial_label(const Monomial& m)
{
  return polynomial_to_json(Polynomial::term(m)).at("terms").at(0).dump();
}

} // namespace detail

/// Runs the property suites at the given scale.
inline JobOutcome cmd_verify(const GroupSpec& group, int max_degree, IdealRegistry& registry, const Caps& caps = {},
                             int random_cases = 200, long long exhaustive_limit = 5000)
{
  check_group(group, caps);
  if (max_degree < 1 || max_degree > caps.max_degree) {
    throw UsageError("max-degree must lie in 1.." + std::to_string(caps.max_degree));
  }
  const int n = group.rank;
  const auto d = static_cast<unsigned>(max_degree);
  const unsigned factor_degree = std::max(1u, std::min(d / 2, 3u));
  std::mt19937 rng(20240607u + static_cast<unsigned>(n) * 97u + d);
  std::vector<detail::Property> props;

  {
    detail::Property p{"ring_laws"};
    for (int t = 0; t < random_cases; ++t) {
      const auto a = random_polynomial(rng, n, factor_degree, {Family::x, Family::y, Family::z});
      const auto b = random_polynomial(rng, n, factor_degree, {Family::x, Family::y, Family::z});
      const auto c = random_polynomial(rng, n, factor_degree, {Family::x, Family::y, Family::z});
      p.check(a * (b + c) == a * b + a * c && (a * b) * c == a * (b * c) && a * b == b * a && (a - a).is_zero(),
              "case " + std::to_string(t));
    }
    props.push_back(p);
  }
  {
    detail::Property p{"iota_homomorphism"};
    for (int t = 0; t < random_cases; ++t) {
      const auto a = random_polynomial(rng, n, factor_degree, {Family::z});
      const auto b = random_polynomial(rng, n, factor_degree, {Family::z});
      p.check(iota(a * b) == iota(a) * iota(b) && iota(a + b) == iota(a) + iota(b), "case " + std::to_string(t));
    }
    props.push_back(p);
  }
  {
    detail::Property hom{"power_map_homomorphism"}, comp{"power_map_composition"};
    std::uniform_int_distribution<int> kd(-3, 3);
    for (int t = 0; t < random_cases; ++t) {
      const auto a = random_polynomial(rng, n, factor_degree, {Family::x, Family::y});
      const auto b = random_polynomial(rng, n, factor_degree, {Family::x, Family::y});
      const long k = kd(rng), l = kd(rng);
      hom.check(power_map(k, a * b) == power_map(k, a) * power_map(k, b) &&
                    power_map(k, a + b) == power_map(k, a) + power_map(k, b),
                "case " + std::to_string(t));
      comp.check(power_map(k, power_map(l, a)) == power_map(k * l, a), "case " + std::to_string(t));
    }
    props.push_back(hom);
    props.push_back(comp);
  }
  {
    detail::Property eig{"eigenvalue_law"}, bin{"binomial_identity"};
    for (long k : {-2L, -1L, 0L, 2L, 3L}) {
      for (int m = 1; m <= max_degree; ++m) {
        for (int b = 0; b <= m; ++b) {
          const Polynomial P = two_var_power_sum(m - b, b, n);
          eig.check(power_map(k, P) == P * pow(Rational(k), static_cast<unsigned>(b)),
                    "k=" + std::to_string(k) + " a=" + std::to_string(m - b) + " b=" + std::to_string(b));
        }
        Polynomial rhs(n);
        for (int j = 0; j <= m; ++j) {
          rhs += two_var_power_sum(m - j, j, n) *
                 Rational(binomial(static_cast<unsigned>(m), static_cast<unsigned>(j))) *
                 pow(Rational(k), static_cast<unsigned>(j));
        }
        bin.check(power_map(k, iota(power_sum(m, n, Family::z))) == rhs,
                  "k=" + std::to_string(k) + " m=" + std::to_string(m));
      }
    }
    props.push_back(eig);
    props.push_back(bin);
  }
  {
    const long long total = detail::binomial_count(2 * n + max_degree, max_degree);
    const bool exhaustive = total <= exhaustive_limit;
    const double keep = exhaustive ? 1.0 : static_cast<double>(exhaustive_limit) / static_cast<double>(total);
    std::bernoulli_distribution sample(keep);
    detail::Property mu{group.kind == GroupKind::Sp ? "mu_vanishing" : "mu_projection"};
    detail::for_each_xy_monomial(n, d, [&](const Monomial& m) {
      if (!exhaustive && !sample(rng)) {
        return;
      }
      const Polynomial f = Polynomial::term(m);
      const Polynomial s = symmetrize(f, group);
      bool ok = true;
      if (group.kind == GroupKind::Sp && parity(m) == Parity::odd) {
        ok = s.is_zero();
      }
      else {
        ok = !s.is_zero() && std::all_of(s.terms().begin(), s.terms().end(), [](const auto& t) { return t.second > 0; });
        ok = ok && is_invariant(s, group) && symmetrize(s, group) == s;
      }
      mu.check(ok, detail::monomial_label(m));
    });
    mu.extra["exhaustive"] = exhaustive;
    props.push_back(mu);
  }
  {
    detail::Property sweep{"certification_sweep"};
    const int top = group.kind == GroupKind::Sp ? std::min(2 * n, max_degree) : std::min(n, max_degree);
    for (int m = 1; m <= top; ++m) {
      if (group.kind == GroupKind::Sp && m % 2 != 0) {
        continue;
      }
      for (int b = 0; b <= m; ++b) {
        bool ok = false;
        try {
          ok = decompose(group, m - b, b, registry).certified();
        }
        catch (const CertificationError&) {
          ok = false;
        }
        sweep.check(ok, "a=" + std::to_string(m - b) + " b=" + std::to_string(b));
      }
    }
    props.push_back(sweep);
  }
  if (group.kind != GroupKind::Sp && n == 2 && max_degree >= 2) {
    const IdealSpec& ideal = *registry.get(group);
    const Polynomial ip2 = iota(power_sum(2, 2, Family::z));
    const Polynomial ip2m = power_map(-1, ip2);
    detail::Property low{"rank_two_identities"};
    low.check(equal_mod_ideal(iota(power_sum(1, 2, Family::z)), two_var_power_sum(0, 1, 2), ideal), "P_{0,1}");
    low.check(equal_mod_ideal(two_var_power_sum(0, 2, 2), (ip2 + ip2m) * make_rational(1, 2), ideal), "P_{0,2}");
    low.check(equal_mod_ideal(two_var_power_sum(1, 1, 2), (ip2 - ip2m) * make_rational(1, 4), ideal), "P_{1,1}");
    props.push_back(low);
  }
  if (group.kind == GroupKind::SU) {
    detail::Property zero{"P01_vanishes"};
    zero.check(normal_form(two_var_power_sum(0, 1, n), *registry.get(group)).is_zero(), "P_{0,1}");
    props.push_back(zero);
  }

  nlohmann::json list = nlohmann::json::array();
  bool all = true;
  for (const auto& p : props) {
    list.push_back(p.to_json());
    all = all && p.passed;
  }
  return {{{"group", to_string(group.kind)},
           {"rank", n},
           {"max_degree", max_degree},
           {"properties", std::move(list)},
           {"all_passed", all}},
          all};
}

inline JobOutcome cmd_chern2(const std::string& example, int grid, unsigned workers = 1, const Caps& caps = {})
{
  if (grid < caps.min_grid || grid > caps.max_grid) {
    throw UsageError("grid must lie in " + std::to_string(caps.min_grid) + ".." + std::to_string(caps.max_grid));
  }
  cw::ClutchingExample ex = [&] {
    try {
      return cw::clutching_example(example);
    }
    catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  cw::QuadratureOptions opts;
  opts.workers = workers;
  const cw::Chern2Report report = cw::run_chern2(ex, cw::QuadratureGrid(grid), opts);
  return {cw::to_json(report), report.converged()};
}

inline Polynomial polynomial_input(const nlohmann::json& j)
{
  try {
    return polynomial_from_json(j);
  }
  catch (const std::exception& e) {
    throw UsageError(std::string("invalid polynomial input: ") + e.what());
  }
}

inline JobOutcome cmd_powermap(long k, const nlohmann::json& input)
{
  const Polynomial p = polynomial_input(input);
  Polynomial out = [&] {
    try {
      return power_map(k, p);
    }
    catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  return {{{"k", k}, {"input", polynomial_to_json(p)}, {"result", polynomial_to_json(out)}}, true};
}

inline JobOutcome cmd_normalform(const GroupSpec& group, const nlohmann::json& input, IdealRegistry& registry,
                                 const Caps& caps = {})
{
  check_group(group, caps);
  const Polynomial p = polynomial_input(input);
  if (p.rank() != group.rank) {
    throw UsageError("polynomial rank " + std::to_string(p.rank()) + " does not match " + group.to_string());
  }
  const Polynomial nf = normal_form(p, *registry.get(group));
  return {{{"group", to_string(group.kind)},
           {"rank", group.rank},
           {"input", polynomial_to_json(p)},
           {"normal_form", polynomial_to_json(nf)},
           {"in_ideal", nf.is_zero()}},
          true};
}

} // namespace tcchern::cli
