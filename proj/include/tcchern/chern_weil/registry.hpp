#pragma once

#include "tcchern/chern_weil/chern2.hpp"
#include "tcchern/chern_weil/cocycles.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <charconv>
#include <optional>
#include <stdexcept>
#include <string>

namespace tcchern::cw {

/// A named clutching function with its known second Chern number.
struct ClutchingExample {
  std::string name;
  ClutchingFunction phi;
  std::optional<double> reference;
};

inline constexpr long max_quaternion_power = 8;

/// "paper", "constant" or "qpow:d" with 1 <= |d| <= 8.
inline ClutchingExample clutching_example(const std::string& name)
{
  if (name == "paper") {
    return {name, build_clutching_pair(build_example_cocycles()).phi_Einv, -1.0};
  }
  if (name == "constant") {
    const ChartMap one = ChartMap::constant(SU2Matrix::identity());
    return {name, {one, one}, 0.0};
  }
  const std::string prefix = "qpow:";
  if (name.starts_with(prefix)) {
    const std::string digits = name.substr(prefix.size());
    long d = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
    if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size()) {
      throw std::invalid_argument("malformed quaternion power in '" + name + "'");
    }
    if (d == 0 || std::abs(d) > max_quaternion_power) {
      throw std::invalid_argument("quaternion power must satisfy 1 <= |d| <= " + std::to_string(max_quaternion_power));
    }
    return {name, quaternion_power(d), static_cast<double>(d)};
  }
  throw std::invalid_argument("unknown example '" + name + "' (expected paper, constant or qpow:d)");
}

struct Chern2Report {
  std::string example;
  int n_alpha = 0;
  int n_beta = 0;
  int n_r = 0;
  Chern2Result result;
  Chern2Result coarse;
  std::optional<double> reference;

  static constexpr double convergence_tolerance = 1e-3;

  double grid_change() const { return std::abs(result.c2 - coarse.c2); }
  bool converged() const { return grid_change() < convergence_tolerance; }
};

/// c2 on the given grid and on the grid with every axis halved.
inline Chern2Report run_chern2(const ClutchingExample& ex, const QuadratureGrid& grid, const QuadratureOptions& opts = {})
{
  Chern2Report out;
  out.example = ex.name;
  out.n_alpha = grid.n_alpha();
  out.n_beta = grid.n_beta();
  out.n_r = grid.n_r();
  out.result = chern2(ex.phi, grid, opts);
  out.coarse = chern2(ex.phi, grid.coarsened(), opts);
  out.reference = ex.reference;
  return out;
}

inline nlohmann::json to_json(const Chern2Report& r)
{
  nlohmann::json j;
  j["example"] = r.example;
  j["grid"] = {{"alpha", r.n_alpha}, {"beta", r.n_beta}, {"r", r.n_r}};
  j["integral_J1_plus_J2"] = r.result.integral_J1_plus_J2;
  j["c2"] = r.result.c2;
  j["reference"] = r.reference ? nlohmann::json(*r.reference) : nlohmann::json(nullptr);
  j["converged"] = r.converged();
  j["coarse_c2"] = r.coarse.c2;
  return j;
}

} // namespace tcchern::cw
