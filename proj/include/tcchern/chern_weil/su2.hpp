#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace tcchern::cw {

using Complex = std::complex<double>;

/// The matrix [[z, -conj(w)], [w, conj(z)]] with |z|^2 + |w|^2 = 1.
struct SU2Matrix {
  Complex z{1.0, 0.0};
  Complex w{0.0, 0.0};

  static SU2Matrix identity() { return {}; }

  double norm_squared() const { return std::norm(z) + std::norm(w); }

  Eigen::Matrix2cd matrix() const
  {
    Eigen::Matrix2cd m;
    m << z, -std::conj(w), w, std::conj(z);
    return m;
  }

  friend bool operator==(const SU2Matrix&, const SU2Matrix&) = default;
};

inline constexpr double unit_drift_tolerance = 1e-13;

inline SU2Matrix renormalized(SU2Matrix a)
{
  const double n2 = a.norm_squared();
  if (std::abs(n2 - 1.0) > unit_drift_tolerance) {
    const double s = 1.0 / std::sqrt(n2);
    a.z *= s;
    a.w *= s;
  }
  return a;
}

inline SU2Matrix operator*(const SU2Matrix& a, const SU2Matrix& b)
{
  return renormalized({a.z * b.z - std::conj(a.w) * b.w, a.w * b.z + std::conj(a.z) * b.w});
}

inline SU2Matrix inverse(const SU2Matrix& a) { return {std::conj(a.z), -a.w}; }

/// a^k by repeated squaring; negative k goes through the inverse.
inline SU2Matrix power(const SU2Matrix& a, long k)
{
  SU2Matrix base = k < 0 ? inverse(a) : a;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  SU2Matrix out;
  while (e != 0) {
    if (e & 1ul) {
      out = out * base;
    }
    e >>= 1;
    if (e != 0) {
      base = base * base;
    }
  }
  return out;
}

/// Frobenius norm of ab - ba.
inline double commutator_norm(const SU2Matrix& a, const SU2Matrix& b)
{
  return (a.matrix() * b.matrix() - b.matrix() * a.matrix()).norm();
}

/// Frobenius distance between the matrices.
inline double distance(const SU2Matrix& a, const SU2Matrix& b) { return (a.matrix() - b.matrix()).norm(); }

/// Value and first partials in the chart coordinates (alpha, beta, r).
struct SU2Jet {
  SU2Matrix value;
  std::array<Complex, 3> dz{};
  std::array<Complex, 3> dw{};

  static SU2Jet constant(const SU2Matrix& m) { return {m, {}, {}}; }
};

inline SU2Jet operator*(const SU2Jet& a, const SU2Jet& b)
{
  const Complex az = a.value.z, aw = a.value.w, bz = b.value.z, bw = b.value.w;
  SU2Jet out;
  out.value = a.value * b.value;
  for (std::size_t i = 0; i < 3; ++i) {
    out.dz[i] = a.dz[i] * bz + az * b.dz[i] - std::conj(a.dw[i]) * bw - std::conj(aw) * b.dw[i];
    out.dw[i] = a.dw[i] * bz + aw * b.dz[i] + std::conj(a.dz[i]) * bw + std::conj(az) * b.dw[i];
  }
  return out;
}

inline SU2Jet inverse(const SU2Jet& a)
{
  SU2Jet out;
  out.value = inverse(a.value);
  for (std::size_t i = 0; i < 3; ++i) {
    out.dz[i] = std::conj(a.dz[i]);
    out.dw[i] = -a.dw[i];
  }
  return out;
}

inline SU2Jet power(const SU2Jet& a, long k)
{
  SU2Jet base = k < 0 ? inverse(a) : a;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  SU2Jet out = SU2Jet::constant(SU2Matrix::identity());
  while (e != 0) {
    if (e & 1ul) {
      out = out * base;
    }
    e >>= 1;
    if (e != 0) {
      base = base * base;
    }
  }
  return out;
}

} // namespace tcchern::cw
