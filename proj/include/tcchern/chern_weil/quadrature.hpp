#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcchern::cw {

/// Gauss-Legendre nodes on a union of panels. Nodes never touch a panel end.
class QuadratureAxis {
public:
  /// breaks must be strictly increasing; each panel receives its share of n
  /// in proportion to its length, at least one node each.
  QuadratureAxis(std::vector<double> breaks, int n) : breaks_(std::move(breaks))
  {
    if (breaks_.size() < 2) {
      throw std::invalid_argument("quadrature axis needs at least two break points");
    }
    if (!std::is_sorted(breaks_.begin(), breaks_.end()) ||
        std::adjacent_find(breaks_.begin(), breaks_.end()) != breaks_.end()) {
      throw std::invalid_argument("quadrature break points must be strictly increasing");
    }
    const int panels = static_cast<int>(breaks_.size()) - 1;
    if (n < panels) {
      throw std::invalid_argument("quadrature axis with " + std::to_string(panels) + " panels needs at least " +
                                  std::to_string(panels) + " nodes, got " + std::to_string(n));
    }
    const double length = breaks_.back() - breaks_.front();
    int assigned = 0;
    for (int p = 0; p < panels; ++p) {
      const double a = breaks_[p], b = breaks_[p + 1];
      int count = p + 1 == panels ? n - assigned
                                  : std::max(1, static_cast<int>(std::lround(n * (b - a) / length)));
      count = std::min(count, n - assigned - (panels - p - 1));
      append_panel(a, b, count);
      assigned += count;
    }
  }

  static QuadratureAxis uniform(double a, double b, int n) { return QuadratureAxis({a, b}, n); }

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  double lower() const { return breaks_.front(); }
  double upper() const { return breaks_.back(); }
  double length() const { return upper() - lower(); }
  std::span<const double> breaks() const { return breaks_; }

private:
  /// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
  /// Legendre recurrence, weights come from the first eigenvector components.
  void append_panel(double a, double b, int count)
  {
    const Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(count);
    Eigen::VectorXd off(std::max(count - 1, 0));
    for (int k = 1; k < count; ++k) {
      off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diagonal, off, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("Gauss-Legendre eigenproblem of size " + std::to_string(count) + " did not converge");
    }
    const double half = (b - a) / 2.0, mid = (a + b) / 2.0;
    for (int i = 0; i < count; ++i) {
      const double v = solver.eigenvectors()(0, i);
      nodes_.push_back(mid + half * solver.eigenvalues()[i]);
      weights_.push_back(2.0 * half * v * v);
    }
  }

  std::vector<double> breaks_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Tensor grid on D3 in spherical coordinates: alpha in [0, 2pi], beta in
/// [0, pi] split at pi/2, r in [0, 1] with optional extra breaks.
class QuadratureGrid {
public:
  QuadratureGrid(int n_alpha, int n_beta, int n_r, std::vector<double> r_breaks = {})
      : alpha_(QuadratureAxis::uniform(0.0, 2.0 * std::numbers::pi, n_alpha)),
        beta_({0.0, std::numbers::pi / 2.0, std::numbers::pi}, n_beta),
        r_(radial_breaks(std::move(r_breaks)), n_r), n_alpha_(n_alpha), n_beta_(n_beta), n_r_(n_r)
  {
  }

  explicit QuadratureGrid(int n, std::vector<double> r_breaks = {}) : QuadratureGrid(n, n, n, std::move(r_breaks)) {}

  const QuadratureAxis& alpha() const { return alpha_; }
  const QuadratureAxis& beta() const { return beta_; }
  const QuadratureAxis& r() const { return r_; }
  int n_alpha() const { return n_alpha_; }
  int n_beta() const { return n_beta_; }
  int n_r() const { return n_r_; }

  /// The same panels with every node count halved, rounded up.
  QuadratureGrid coarsened() const
  {
    std::vector<double> inner(r_.breaks().begin() + 1, r_.breaks().end() - 1);
    return QuadratureGrid((n_alpha_ + 1) / 2, (n_beta_ + 1) / 2, (n_r_ + 1) / 2, std::move(inner));
  }

private:
  static std::vector<double> radial_breaks(std::vector<double> inner)
  {
    std::vector<double> out{0.0};
    for (double b : inner) {
      if (!(b > 0.0 && b < 1.0)) {
        throw std::invalid_argument("radial break points must lie strictly inside (0, 1)");
      }
      out.push_back(b);
    }
    out.push_back(1.0);
    return out;
  }

  QuadratureAxis alpha_;
  QuadratureAxis beta_;
  QuadratureAxis r_;
  int n_alpha_;
  int n_beta_;
  int n_r_;
};

/// Pairwise (tree) sum in index order.
inline double pairwise_sum(std::span<const double> values)
{
  if (values.empty()) {
    return 0.0;
  }
  if (values.size() == 1) {
    return values[0];
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

} // namespace tcchern::cw
