#pragma once

#include "tcchern/chern_weil/cocycles.hpp"
#include "tcchern/chern_weil/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tcchern::cw {

class NonFiniteSample : public std::runtime_error {
public:
  NonFiniteSample(const std::string& chart, const Spherical& p)
      : std::runtime_error("non-finite integrand on the " + chart + " chart at (alpha, beta, r) = (" +
                           std::to_string(p.alpha) + ", " + std::to_string(p.beta) + ", " + std::to_string(p.r) + ")"),
        point(p)
  {
  }

  Spherical point;
};

struct QuadratureOptions {
  FiniteDifference fd;
  /// Use the chart's analytic partials when it provides them.
  bool use_jets = true;
  /// Threads over alpha slices; the result does not depend on this.
  unsigned workers = 1;
};

/// (y dx - x dy) ^ du ^ dv + (v du - u dv) ^ dx ^ dy in (alpha, beta, r)
/// with z = x + iy and w = u + iv.
inline double j1_plus_j2(const SU2Jet& j)
{
  const double x = j.value.z.real(), y = j.value.z.imag();
  const double u = j.value.w.real(), v = j.value.w.imag();
  std::array<double, 3> xd{}, yd{}, ud{}, vd{};
  for (std::size_t a = 0; a < 3; ++a) {
    xd[a] = j.dz[a].real();
    yd[a] = j.dz[a].imag();
    ud[a] = j.dw[a].real();
    vd[a] = j.dw[a].imag();
  }
  auto rot = [](double p, double q, const std::array<double, 3>& pd, const std::array<double, 3>& qd, std::size_t a) {
    return q * pd[a] - p * qd[a];
  };
  auto area = [](const std::array<double, 3>& pd, const std::array<double, 3>& qd, std::size_t a, std::size_t b) {
    return pd[a] * qd[b] - qd[a] * pd[b];
  };
  const double j1 = rot(x, y, xd, yd, 0) * area(ud, vd, 1, 2) - rot(x, y, xd, yd, 1) * area(ud, vd, 0, 2) +
                    rot(x, y, xd, yd, 2) * area(ud, vd, 0, 1);
  const double j2 = rot(u, v, ud, vd, 0) * area(xd, yd, 1, 2) - rot(u, v, ud, vd, 1) * area(xd, yd, 0, 2) +
                    rot(u, v, ud, vd, 2) * area(xd, yd, 0, 1);
  return j1 + j2;
}

/// det[g, g_alpha, g_beta, g_r] for g = (x, y, u, v): the pullback of the
/// volume form of the unit 3-sphere.
inline double volume_density(const SU2Jet& j)
{
  Eigen::Matrix4d m;
  m.col(0) << j.value.z.real(), j.value.z.imag(), j.value.w.real(), j.value.w.imag();
  for (int a = 0; a < 3; ++a) {
    m.col(a + 1) << j.dz[a].real(), j.dz[a].imag(), j.dw[a].real(), j.dw[a].imag();
  }
  return m.determinant();
}

/// Integral over the disk of density(jet), independent of the thread count:
/// each alpha slice is summed sequentially, then the slices pairwise.
inline double integrate_chart(const ChartMap& f, const QuadratureGrid& grid,
                              const std::function<double(const SU2Jet&)>& density, const std::string& label,
                              const QuadratureOptions& opts = {})
{
  const auto& A = grid.alpha();
  const auto& B = grid.beta();
  const auto& R = grid.r();
  std::vector<double> slices(A.size(), 0.0);

  auto slice = [&](std::size_t i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < B.size(); ++j) {
      for (std::size_t k = 0; k < R.size(); ++k) {
        const Spherical p{A.nodes()[i], B.nodes()[j], R.nodes()[k]};
        const SU2Jet jet = opts.use_jets && f.has_jet() ? f.jet(p) : finite_difference_jet(f, p, opts.fd);
        const double value = density(jet);
        if (!std::isfinite(value)) {
          throw NonFiniteSample(label, p);
        }
        sum += B.weights()[j] * R.weights()[k] * value;
      }
    }
    slices[i] = A.weights()[i] * sum;
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(A.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < A.size(); ++i) {
      slice(i);
    }
  }
  else {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < A.size(); i += workers) {
              slice(i);
            }
          }
          catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
              failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) {
      std::rethrow_exception(failure);
    }
  }
  return pairwise_sum(slices);
}

struct Chern2Result {
  /// Integral of J1 + J2 over the upper chart minus the lower chart, halved.
  double integral_J1_plus_J2 = 0.0;
  double c2 = 0.0;
  double upper = 0.0;
  double lower = 0.0;
};

/// On each chart the pullback of A has real part -12 (J1 + J2). The sphere
/// is oriented as the lower chart minus the upper chart, so the integral of
/// A is 12 (I_upper - I_lower) and c2 = (1/24 pi^2) of that.
inline Chern2Result chern2(const ClutchingFunction& phi, const QuadratureGrid& grid, const QuadratureOptions& opts = {})
{
  Chern2Result out;
  out.upper = integrate_chart(phi.upper, grid, j1_plus_j2, "upper", opts);
  out.lower = integrate_chart(phi.lower, grid, j1_plus_j2, "lower", opts);
  out.integral_J1_plus_J2 = 0.5 * (out.upper - out.lower);
  out.c2 = out.integral_J1_plus_J2 / (pi * pi);
  return out;
}

/// Degree of the map S^3 -> SU(2): the pulled-back volume over 2 pi^2, with
/// the orientation used by chern2. The identity has degree 1.
inline double mapping_degree(const ClutchingFunction& phi, const QuadratureGrid& grid,
                             const QuadratureOptions& opts = {})
{
  const double upper = integrate_chart(phi.upper, grid, volume_density, "upper", opts);
  const double lower = integrate_chart(phi.lower, grid, volume_density, "lower", opts);
  return (lower - upper) / (2.0 * pi * pi);
}

} // namespace tcchern::cw
