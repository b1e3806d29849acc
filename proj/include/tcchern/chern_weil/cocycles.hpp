#pragma once

#include "tcchern/chern_weil/profile.hpp"
#include "tcchern/chern_weil/su2.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace tcchern::cw {

/// Spherical coordinates on the closed unit 3-disk.
struct Spherical {
  double alpha = 0.0;
  double beta = 0.0;
  double r = 0.0;
};

inline constexpr double pi = std::numbers::pi;

/// The disk is a hemisphere of S^3 with the center at height -1 and the
/// rim at height 0: height = -cos(pi r / 2).
inline double height_of_radius(double r) { return -std::cos(pi * r / 2.0); }

/// Radius where the height crosses -1/3; the band r > r_V is the overlap.
inline double overlap_radius() { return 2.0 / pi * std::acos(overlap_half_width); }

/// Smooth map from the disk to SU(2). The jet is optional; without it partial
/// derivatives are taken by finite differences.
struct ChartMap {
  std::function<SU2Matrix(const Spherical&)> value;
  std::function<SU2Jet(const Spherical&)> jet;

  SU2Matrix operator()(const Spherical& p) const { return value(p); }
  bool has_jet() const { return static_cast<bool>(jet); }

  static ChartMap constant(const SU2Matrix& m)
  {
    return {[m](const Spherical&) { return m; }, [m](const Spherical&) { return SU2Jet::constant(m); }};
  }
};

inline ChartMap product(ChartMap a, ChartMap b)
{
  ChartMap out;
  out.value = [a, b](const Spherical& p) { return a.value(p) * b.value(p); };
  if (a.has_jet() && b.has_jet()) {
    out.jet = [a, b](const Spherical& p) { return a.jet(p) * b.jet(p); };
  }
  return out;
}

inline ChartMap inverse(ChartMap a)
{
  ChartMap out;
  out.value = [a](const Spherical& p) { return inverse(a.value(p)); };
  if (a.has_jet()) {
    out.jet = [a](const Spherical& p) { return inverse(a.jet(p)); };
  }
  return out;
}

inline ChartMap power(ChartMap a, long k)
{
  ChartMap out;
  out.value = [a, k](const Spherical& p) { return power(a.value(p), k); };
  if (a.has_jet()) {
    out.jet = [a, k](const Spherical& p) { return power(a.jet(p), k); };
  }
  return out;
}

struct FiniteDifference {
  double step = 1e-5;
  bool richardson = true;
};

/// Partials by central differences, with one Richardson level when enabled.
inline SU2Jet finite_difference_jet(const ChartMap& f, const Spherical& p, FiniteDifference fd = {})
{
  SU2Jet out;
  out.value = f.value(p);
  for (std::size_t axis = 0; axis < 3; ++axis) {
    auto shifted = [&](double h) {
      Spherical q = p;
      (axis == 0 ? q.alpha : axis == 1 ? q.beta : q.r) += h;
      return f.value(q);
    };
    auto central = [&](double h) {
      const SU2Matrix plus = shifted(h), minus = shifted(-h);
      return std::pair{(plus.z - minus.z) / (2.0 * h), (plus.w - minus.w) / (2.0 * h)};
    };
    auto [dz, dw] = central(fd.step);
    if (fd.richardson) {
      const auto [dz2, dw2] = central(fd.step / 2.0);
      dz = (4.0 * dz2 - dz) / 3.0;
      dw = (4.0 * dw2 - dw) / 3.0;
    }
    out.dz[axis] = dz;
    out.dw[axis] = dw;
  }
  return out;
}

inline SU2Jet evaluate_jet(const ChartMap& f, const Spherical& p, FiniteDifference fd = {})
{
  return f.has_jet() ? f.jet(p) : finite_difference_jet(f, p, fd);
}

/// Radial reparametrization of a cocycle: s(r) rises smoothly from 0 at the
/// center to 1 at r_V and stays 1 on the overlap band.
struct RadialCollar {
  double value;
  double derivative;
};

inline RadialCollar radial_collar(double r)
{
  const double rv = overlap_radius();
  return {smooth_step(r / rv), smooth_step_derivative(r / rv) / rv};
}

namespace detail {

inline Complex cis(double t) { return std::polar(1.0, t); }

constexpr Complex I{0.0, 1.0};

/// rho_1 with the radius replaced by s, ds/dr = ds.
inline SU2Jet rho1_jet(double alpha, double beta, double s, double ds)
{
  SU2Jet j;
  const Complex e = cis(alpha);
  if (beta <= pi / 2.0) {
    const double t = pi * s / 2.0;
    j.value = {std::sin(t) * e, std::cos(t)};
    j.dz = {I * j.value.z, 0.0, pi / 2.0 * ds * std::cos(t) * e};
    j.dw = {0.0, 0.0, -pi / 2.0 * ds * std::sin(t)};
  }
  else {
    const double t = s * beta;
    j.value = {std::sin(t) * e, std::cos(t)};
    j.dz = {I * j.value.z, s * std::cos(t) * e, ds * beta * std::cos(t) * e};
    j.dw = {0.0, -s * std::sin(t), -ds * beta * std::sin(t)};
  }
  return j;
}

inline SU2Jet rho2_jet(double beta, double s, double ds)
{
  SU2Jet j;
  const double t = pi * s;
  if (beta <= pi / 2.0) {
    const Complex e = cis(2.0 * beta);
    j.value = {-std::cos(t) * e, std::sin(t)};
    j.dz = {0.0, 2.0 * I * j.value.z, pi * ds * std::sin(t) * e};
  }
  else {
    j.value = {std::cos(t), std::sin(t)};
    j.dz = {0.0, 0.0, -pi * ds * std::sin(t)};
  }
  j.dw = {0.0, 0.0, pi * ds * std::cos(t)};
  return j;
}

inline ChartMap from_jet(std::function<SU2Jet(const Spherical&)> jet)
{
  return {[jet](const Spherical& p) { return jet(p).value; }, jet};
}

} // namespace detail

/// Two maps from the disk to SU(2) defining the transition functions of the
/// three-set cover.
struct CocyclePair {
  ChartMap rho1;
  ChartMap rho2;
};

/// The piecewise formulas exactly as given, split at beta = pi/2. They
/// commute on the rim but depend on r inside the overlap band.
inline CocyclePair raw_example_cocycles()
{
  return {detail::from_jet([](const Spherical& p) { return detail::rho1_jet(p.alpha, p.beta, p.r, 1.0); }),
          detail::from_jet([](const Spherical& p) { return detail::rho2_jet(p.beta, p.r, 1.0); })};
}

/// The same formulas evaluated at s(r) instead of r, so that both maps are
/// constant in r on the overlap band and equal to their rim values there.
inline CocyclePair build_example_cocycles()
{
  return {detail::from_jet([](const Spherical& p) {
            const auto [s, ds] = radial_collar(p.r);
            return detail::rho1_jet(p.alpha, p.beta, s, ds);
          }),
          detail::from_jet([](const Spherical& p) {
            const auto [s, ds] = radial_collar(p.r);
            return detail::rho2_jet(p.beta, s, ds);
          })};
}

inline CocyclePair constant_cocycles() { return {ChartMap::constant({}), ChartMap::constant({})}; }

struct CocycleCheck {
  double max_radial_derivative = 0.0;
  double max_commutator = 0.0;
  Spherical worst_radial;
  Spherical worst_commutator;

  static constexpr double radial_tolerance = 1e-6;
  static constexpr double commutator_tolerance = 1e-10;

  bool radially_constant() const { return max_radial_derivative <= radial_tolerance; }
  bool commuting() const { return max_commutator <= commutator_tolerance; }
  bool ok() const { return radially_constant() && commuting(); }
};

/// Samples an n^3 grid with endpoints included. On the closed overlap band
/// it records the largest central-difference r-derivative and the largest
/// commutator norm.
inline CocycleCheck check_cocycles(const CocyclePair& pair, int n = 64, double step = 1e-5)
{
  if (n < 2) {
    throw std::invalid_argument("cocycle verification grid needs at least 2 points per axis");
  }
  const double rv = overlap_radius();
  CocycleCheck out;
  for (int k = 0; k < n; ++k) {
    const double r = rv + (1.0 - rv) * k / (n - 1);
    for (int i = 0; i < n; ++i) {
      const double alpha = 2.0 * pi * i / n;
      for (int j = 0; j < n; ++j) {
        const Spherical p{alpha, pi * j / (n - 1), r};
        const SU2Matrix a = pair.rho1(p), b = pair.rho2(p);
        const double comm = commutator_norm(a, b);
        if (comm > out.max_commutator) {
          out.max_commutator = comm;
          out.worst_commutator = p;
        }
        const double lo = std::max(rv, r - step), hi = std::min(1.0, r + step);
        for (const ChartMap* f : {&pair.rho1, &pair.rho2}) {
          const double d = distance((*f)({alpha, p.beta, hi}), (*f)({alpha, p.beta, lo})) / (hi - lo);
          if (d > out.max_radial_derivative) {
            out.max_radial_derivative = d;
            out.worst_radial = p;
          }
        }
      }
    }
  }
  return out;
}

/// Two charts of S^3, one per hemisphere, each parametrized by the disk and
/// glued along the rim r = 1.
struct ClutchingFunction {
  ChartMap upper;
  ChartMap lower;

  ClutchingFunction swapped() const { return {lower, upper}; }
};

/// Largest Frobenius distance between the two charts on an n x n rim grid.
inline double rim_mismatch(const ClutchingFunction& phi, int n = 64)
{
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Spherical p{2.0 * pi * i / n, pi * j / (n - 1), 1.0};
      worst = std::max(worst, distance(phi.upper(p), phi.lower(p)));
    }
  }
  return worst;
}

class CocycleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ClutchingPair {
  ClutchingFunction phi_E;
  ClutchingFunction phi_Einv;
};

/// phi_E = rho1 rho2 on both charts; phi_Einv = rho1^-1 rho2^-1 on the upper
/// chart and rho2^-1 rho1^-1 on the lower one.
inline ClutchingPair build_clutching_pair(const CocyclePair& pair, int verification_points = 64)
{
  const CocycleCheck check = check_cocycles(pair, verification_points);
  if (!check.commuting()) {
    throw CocycleError("cocycles fail to commute on the closed overlap band: commutator norm " +
                       std::to_string(check.max_commutator) + " at (alpha, beta, r) = (" +
                       std::to_string(check.worst_commutator.alpha) + ", " +
                       std::to_string(check.worst_commutator.beta) + ", " + std::to_string(check.worst_commutator.r) +
                       ")");
  }
  if (!check.radially_constant()) {
    throw CocycleError("cocycles depend on the radius inside the overlap band: derivative " +
                       std::to_string(check.max_radial_derivative));
  }
  const ChartMap e = product(pair.rho1, pair.rho2);
  const ChartMap i1 = inverse(pair.rho1), i2 = inverse(pair.rho2);
  return {{e, e}, {product(i1, i2), product(i2, i1)}};
}

/// Unit quaternion for the hemisphere charts: the upper chart sends the
/// center to the identity and the lower one to minus the identity.
inline SU2Jet hemisphere_jet(const Spherical& p, bool upper)
{
  const double sa = std::sin(p.alpha), ca = std::cos(p.alpha);
  const double sb = std::sin(p.beta), cb = std::cos(p.beta);
  const double t = pi * p.r / 2.0, st = std::sin(t), ct = std::cos(t);
  const double sign = upper ? 1.0 : -1.0;
  const double n1 = sb * ca, n2 = sb * sa, n3 = cb;
  const std::array<double, 3> dn1{-sb * sa, cb * ca, 0.0};
  const std::array<double, 3> dn2{sb * ca, cb * sa, 0.0};
  const std::array<double, 3> dn3{0.0, -sb, 0.0};
  SU2Jet j;
  j.value = {Complex(sign * ct, st * n1), Complex(st * n2, st * n3)};
  for (std::size_t a = 0; a < 2; ++a) {
    j.dz[a] = Complex(0.0, st * dn1[a]);
    j.dw[a] = Complex(st * dn2[a], st * dn3[a]);
  }
  const double dt = pi / 2.0;
  j.dz[2] = Complex(-sign * st * dt, ct * dt * n1);
  j.dw[2] = Complex(ct * dt * n2, ct * dt * n3);
  return j;
}

/// q -> q^d on S^3 = SU(2).
inline ClutchingFunction quaternion_power(long d)
{
  auto chart = [d](bool upper) {
    return detail::from_jet([d, upper](const Spherical& p) { return power(hemisphere_jet(p, upper), d); });
  };
  return {chart(true), chart(false)};
}

} // namespace tcchern::cw
