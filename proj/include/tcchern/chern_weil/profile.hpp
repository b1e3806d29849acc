#pragma once

#include "tcchern/chern_weil/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tcchern::cw {

/// psi(t) = exp(-1/t) for t > 0, else 0.
inline double flat_exp(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, all derivatives vanish at
/// both ends.
inline double smooth_step(double t)
{
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = flat_exp(t), b = flat_exp(1.0 - t);
  return a / (a + b);
}

inline double smooth_step_derivative(double t)
{
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = flat_exp(t), b = flat_exp(1.0 - t);
  const double da = a / (t * t), db = b / ((1.0 - t) * (1.0 - t));
  return (da * b + a * db) / ((a + b) * (a + b));
}

/// Half-width of the overlap band in height; profiles are constant outside it.
inline constexpr double overlap_half_width = 1.0 / 3.0;

enum class ProfileDirection { decreasing, increasing };

/// Scalar profile of the height coordinate in [-1, 1]. Constant on each end
/// piece, one end 1 and the other 0, monotone and C1 in between.
class PartitionProfile {
public:
  using Function = std::function<double(double)>;

  PartitionProfile(Function value, Function derivative) : value_(std::move(value)), derivative_(std::move(derivative))
  {
    if (!value_ || !derivative_) {
      throw std::invalid_argument("partition profile needs a value and a derivative");
    }
    validate();
  }

  /// 1 below -1/3, 0 above 1/3.
  static PartitionProfile smooth_bump()
  {
    constexpr double c = overlap_half_width;
    return PartitionProfile([](double t) { return smooth_step((c - t) / (2.0 * c)); },
                            [](double t) { return -smooth_step_derivative((c - t) / (2.0 * c)) / (2.0 * c); });
  }

  /// 0 below -1/3, 1 above 1/3.
  static PartitionProfile reversed_bump()
  {
    constexpr double c = overlap_half_width;
    return PartitionProfile([](double t) { return smooth_step((t + c) / (2.0 * c)); },
                            [](double t) { return smooth_step_derivative((t + c) / (2.0 * c)) / (2.0 * c); });
  }

  double operator()(double t) const { return value_(t); }
  double derivative(double t) const { return derivative_(t); }
  ProfileDirection direction() const { return direction_; }

private:
  void validate()
  {
    constexpr double c = overlap_half_width;
    constexpr int samples = 2000;
    constexpr double tol = 1e-12;
    const double left = value_(-1.0), right = value_(1.0);
    if (std::abs(left - 1.0) <= tol && std::abs(right) <= tol) {
      direction_ = ProfileDirection::decreasing;
    }
    else if (std::abs(left) <= tol && std::abs(right - 1.0) <= tol) {
      direction_ = ProfileDirection::increasing;
    }
    else {
      throw std::invalid_argument("partition profile must be 1 at one end and 0 at the other, got " +
                                  std::to_string(left) + " and " + std::to_string(right));
    }
    const double sign = direction_ == ProfileDirection::decreasing ? -1.0 : 1.0;
    std::vector<double> heights{-c, 0.0, c};
    for (int i = 0; i <= samples; ++i) {
      heights.push_back(-1.0 + 2.0 * i / samples);
    }
    std::sort(heights.begin(), heights.end());
    double previous = left;
    for (double t : heights) {
      const double v = value_(t);
      const double d = derivative_(t);
      if (!std::isfinite(v) || !std::isfinite(d) || v < -tol || v > 1.0 + tol) {
        throw std::invalid_argument("partition profile leaves [0, 1] at height " + std::to_string(t));
      }
      if (t <= -c && std::abs(v - left) > tol) {
        throw std::invalid_argument("partition profile is not constant below -1/3");
      }
      if (t >= c && std::abs(v - right) > tol) {
        throw std::invalid_argument("partition profile is not constant above 1/3");
      }
      if (sign * (v - previous) < -tol || sign * d < -tol) {
        throw std::invalid_argument("partition profile is not monotone at height " + std::to_string(t));
      }
      previous = v;
      constexpr double h = 1e-6;
      if (t - h >= -1.0 && t + h <= 1.0) {
        const double fd = (value_(t + h) - value_(t - h)) / (2.0 * h);
        if (std::abs(fd - d) > 1e-5 * std::max(1.0, std::abs(d))) {
          throw std::invalid_argument("partition profile derivative disagrees with finite differences at height " +
                                      std::to_string(t));
        }
      }
    }
  }

  Function value_;
  Function derivative_;
  ProfileDirection direction_ = ProfileDirection::decreasing;
};

/// Integral over [-1, 1] of (1 - f) f f' by Gauss-Legendre on the three
/// pieces split at -1/3 and 1/3.
inline double f2_moment(const PartitionProfile& f2, int nodes_per_piece = 64)
{
  constexpr double c = overlap_half_width;
  const QuadratureAxis axis({-1.0, -c, c, 1.0}, 3 * nodes_per_piece);
  std::vector<double> terms;
  terms.reserve(axis.size());
  for (std::size_t i = 0; i < axis.size(); ++i) {
    const double t = axis.nodes()[i];
    const double f = f2(t);
    terms.push_back(axis.weights()[i] * (1.0 - f) * f * f2.derivative(t));
  }
  return pairwise_sum(terms);
}

} // namespace tcchern::cw
