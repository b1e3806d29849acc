#pragma once

#include "tcchern/chern_weil/cocycles.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <tuple>

namespace tcchern::cw {

/// A point of the overlap chart: a point of the disk together with the
/// height coordinate that the partition profile depends on.
struct ChartPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double r = 0.0;
  double height = 0.0;

  Spherical disk() const { return {alpha, beta, r}; }
};

/// Tangent vector in the (alpha, beta, r, height) basis.
using Tangent = std::array<double, 4>;
using Frame = std::array<Tangent, 4>;

inline void check_chart_point(const ChartPoint& p)
{
  const bool inside = p.alpha >= 0.0 && p.alpha <= 2.0 * pi && p.beta >= 0.0 && p.beta <= pi && p.r >= 0.0 &&
                      p.r <= 1.0 && p.height >= -1.0 && p.height <= 1.0;
  if (!inside) {
    throw std::out_of_range("point (" + std::to_string(p.alpha) + ", " + std::to_string(p.beta) + ", " +
                            std::to_string(p.r) + ", " + std::to_string(p.height) + ") is outside the chart");
  }
}

namespace detail {

/// dz and dw applied to a tangent vector; the maps ignore the height.
inline std::pair<Complex, Complex> differential(const SU2Jet& j, const Tangent& v)
{
  Complex dz = 0.0, dw = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    dz += v[a] * j.dz[a];
    dw += v[a] * j.dw[a];
  }
  return {dz, dw};
}

inline Eigen::Matrix2cd tangent_matrix(Complex dz, Complex dw)
{
  Eigen::Matrix2cd m;
  m << dz, -std::conj(dw), dw, std::conj(dz);
  return m;
}

/// tau(v) = rho^-1 d(rho)(v).
inline Eigen::Matrix2cd maurer_cartan(const SU2Jet& j, const Tangent& v)
{
  const auto [dz, dw] = differential(j, v);
  return inverse(j.value).matrix() * tangent_matrix(dz, dw);
}

/// 3x3 determinant of three one-forms evaluated on three vectors.
inline Complex wedge3(const std::array<Complex, 3>& a, const std::array<Complex, 3>& b,
                      const std::array<Complex, 3>& c)
{
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

/// Wedge of two 2-forms given as functions of index pairs, on four vectors.
template <class F, class G>
Complex wedge22(F a, G b)
{
  return a(0, 1) * b(2, 3) - a(0, 2) * b(1, 3) + a(0, 3) * b(1, 2) + a(1, 2) * b(0, 3) - a(1, 3) * b(0, 2) +
         a(2, 3) * b(0, 1);
}

} // namespace detail

/// Curvature of the partition-of-unity connection for the k-th power of the
/// cocycle: (df) tau + (f^2 - f) tau ^ tau with tau = rho^-k d(rho^k),
/// evaluated on (X, Y). Partials of rho^k are central differences.
inline Eigen::Matrix2cd curvature_local_form(const ChartMap& rho, long k, const PartitionProfile& f2,
                                             const ChartPoint& p, const Tangent& X, const Tangent& Y,
                                             FiniteDifference fd = {})
{
  check_chart_point(p);
  const double f = f2(p.height);
  const double df = f2.derivative(p.height);
  if ((f == 0.0 || f == 1.0) && df == 0.0) {
    return Eigen::Matrix2cd::Zero();
  }
  const SU2Jet jet = finite_difference_jet(power(rho, k), p.disk(), fd);
  const Eigen::Matrix2cd tx = detail::maurer_cartan(jet, X);
  const Eigen::Matrix2cd ty = detail::maurer_cartan(jet, Y);
  return (df * X[3]) * ty - (df * Y[3]) * tx + (f * f - f) * (tx * ty - ty * tx);
}

/// 4(f-1)^2 f^2 dz dzbar dw dwbar - (f-1) f df ^ A on the frame, with
/// A = 2(zbar dz dw dwbar + wbar dz dzbar dw - 2(z dzbar dw dwbar + w dz dzbar dwbar)).
inline Complex det_curvature_su2(const ChartMap& rho, const PartitionProfile& f2, const ChartPoint& p,
                                 const Frame& frame, FiniteDifference fd = {})
{
  check_chart_point(p);
  const double f = f2(p.height);
  const double df = f2.derivative(p.height);
  const SU2Jet jet = finite_difference_jet(rho, p.disk(), fd);
  const Complex z = jet.value.z, w = jet.value.w;

  std::array<Complex, 4> dz{}, dzb{}, dw{}, dwb{};
  for (std::size_t i = 0; i < 4; ++i) {
    std::tie(dz[i], dw[i]) = detail::differential(jet, frame[i]);
    dzb[i] = std::conj(dz[i]);
    dwb[i] = std::conj(dw[i]);
  }
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i) {
    m(0, i) = dz[i];
    m(1, i) = dzb[i];
    m(2, i) = dw[i];
    m(3, i) = dwb[i];
  }
  const Complex volume = m.determinant();

  auto A = [&](std::size_t i, std::size_t j, std::size_t k) {
    auto pick = [&](const std::array<Complex, 4>& form) { return std::array<Complex, 3>{form[i], form[j], form[k]}; };
    using detail::wedge3;
    return 2.0 * (std::conj(z) * wedge3(pick(dz), pick(dw), pick(dwb)) +
                  std::conj(w) * wedge3(pick(dz), pick(dzb), pick(dw)) -
                  2.0 * (z * wedge3(pick(dzb), pick(dw), pick(dwb)) + w * wedge3(pick(dz), pick(dzb), pick(dwb))));
  };
  const std::array<double, 4> dfv{df * frame[0][3], df * frame[1][3], df * frame[2][3], df * frame[3][3]};
  const Complex df_wedge_A =
      dfv[0] * A(1, 2, 3) - dfv[1] * A(0, 2, 3) + dfv[2] * A(0, 1, 3) - dfv[3] * A(0, 1, 2);
  return 4.0 * (f - 1.0) * (f - 1.0) * f * f * volume - (f - 1.0) * f * df_wedge_A;
}

/// Omega_11 ^ Omega_22 - Omega_12 ^ Omega_21 from curvature_local_form.
inline Complex det_curvature_direct(const ChartMap& rho, const PartitionProfile& f2, const ChartPoint& p,
                                    const Frame& frame, FiniteDifference fd = {})
{
  std::array<std::array<Eigen::Matrix2cd, 4>, 4> omega;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      omega[i][j] = curvature_local_form(rho, 1, f2, p, frame[i], frame[j], fd);
    }
  }
  auto entry = [&](int r, int c) { return [&, r, c](int i, int j) { return omega[i][j](r, c); }; };
  return detail::wedge22(entry(0, 0), entry(1, 1)) - detail::wedge22(entry(0, 1), entry(1, 0));
}

} // namespace tcchern::cw
