// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QTOMO_NUMERICS_HPP_
#define QTOMO_NUMERICS_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qtomo/errors.hpp"

namespace qtomo {

using complex = std::complex<double>;

// Tolerances and truncation settings shared by every module. Defaults are the
// documented ones; every field may be overridden per call.
struct NumericsConfig {
  double cp_tolerance = 1e-9;                  // Choi eigenvalue floor
  double state_tolerance = 1e-12;              // trace / eigenvalue / |a| slack
  double trace_preservation_tolerance = 1e-10;  // || sum A^dag A - I ||
  double quadrature_tolerance = 1e-12;
  double fourier_half_width = 12.0;  // t in [-T, T]
  double fourier_step = 0.05;        // upper bound on dt
  double truncation_threshold = 1e-10;
  double boundary_mass_threshold = 1e-8;
};

inline const NumericsConfig& default_config() {
  static const NumericsConfig config;
  return config;
}

namespace num {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Nodes and positive weights of a one-dimensional rule on [lower, upper].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double lower = 0.0;
  double upper = 0.0;

  std::size_t size() const { return nodes.size(); }

  template <typename F>
  auto integrate(F&& f) const {
    using R = decltype(f(0.0));
    R sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

namespace detail {

// Legendre P_n(x) and its derivative by the three-term recurrence.
inline std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// Integrates x^k for k <= 2n-1 on [-1, 1] and compares with 2/(k+1) or 0.
inline void check_polynomial_exactness(const QuadratureRule& rule, int degree) {
  for (int k = 0; k <= degree; ++k) {
    const double got = rule.integrate([k](double x) { return std::pow(x, k); });
    const double want = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1.0);
    if (std::abs(got - want) > 1e-12) {
      throw Error("Gauss-Legendre self-test failed for x^" + std::to_string(k));
    }
  }
}

}  // namespace detail

/// Gauss-Legendre rule with n nodes mapped to [a, b]. Exact for polynomials of
/// degree <= 2n-1; the reference rule is checked for that at construction.
inline QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0) {
  if (n < 1) throw ParameterError("gauss_legendre: n must be >= 1");
  QuadratureRule ref;
  ref.lower = -1.0;
  ref.upper = 1.0;
  ref.nodes.resize(n);
  ref.weights.resize(n);
  if (n == 1) {
    ref.nodes[0] = 0.0;
    ref.weights[0] = 2.0;
  } else {
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
      double x = std::cos(pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        auto [p, d] = detail::legendre_with_derivative(n, x);
        dp = d;
        const double dx = p / d;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      dp = detail::legendre_with_derivative(n, x).second;
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      ref.nodes[i] = -x;
      ref.nodes[n - 1 - i] = x;
      ref.weights[i] = w;
      ref.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) ref.nodes[n / 2] = 0.0;
  }
  detail::check_polynomial_exactness(ref, 2 * n - 1);

  QuadratureRule rule;
  rule.lower = a;
  rule.upper = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half_width = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half_width * ref.nodes[i];
    rule.weights[i] = half_width * ref.weights[i];
  }
  return rule;
}

/// Equal-weight rule for periodic integrands on [0, 2pi): exact for
/// trigonometric polynomials of degree < n.
inline QuadratureRule periodic_trapezoid(int n) {
  if (n < 1) throw ParameterError("periodic_trapezoid: n must be >= 1");
  QuadratureRule rule;
  rule.lower = 0.0;
  rule.upper = two_pi;
  rule.nodes.resize(n);
  rule.weights.assign(n, two_pi / n);
  for (int j = 0; j < n; ++j) rule.nodes[j] = two_pi * j / n;
  return rule;
}

/// Uniform grid of n points covering [lower, upper] inclusive.
struct UniformGrid {
  double lower = -8.0;
  double upper = 8.0;
  int count = 401;

  double step() const { return (upper - lower) / (count - 1); }
  double node(int i) const { return lower + i * step(); }
  std::vector<double> nodes() const {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = node(i);
    return out;
  }
  // Trapezoid weight of node i.
  double weight(int i) const {
    return (i == 0 || i == count - 1) ? 0.5 * step() : step();
  }
};

inline void validate(const UniformGrid& grid) {
  if (grid.count < 2 || !(grid.upper > grid.lower)) {
    throw GridError("uniform grid needs count >= 2 and upper > lower");
  }
}

/// Composite trapezoid rule on [a, b] with n nodes.
inline QuadratureRule trapezoid(double a, double b, int n) {
  const UniformGrid grid{a, b, n};
  validate(grid);
  QuadratureRule rule;
  rule.lower = a;
  rule.upper = b;
  rule.nodes = grid.nodes();
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) rule.weights[i] = grid.weight(i);
  return rule;
}

inline double gaussian_density(double u, double variance) {
  return std::exp(-u * u / (2.0 * variance)) / std::sqrt(two_pi * variance);
}

struct ConvolutionResult {
  std::vector<double> values;
  double edge_magnitude = 0.0;  // max |f| at the two grid ends
  bool truncated = false;
};

/// g(x) = (2 pi alpha)^(-1/2) \int exp(-(x - k x')^2 / (2 alpha)) f(x') dx'
/// evaluated at every node of `grid`, with f given at the same nodes.
///
/// When the kernel is wide compared with the grid step the trapezoid rule is
/// spectrally accurate and is used directly. Narrow kernels are integrated
/// exactly against the piecewise-linear interpolant of f instead.
inline ConvolutionResult gaussian_convolve(std::span<const double> f, double k, double alpha,
                                           const UniformGrid& grid,
                                           double edge_threshold = 1e-12) {
  validate(grid);
  if (!(alpha > 0.0)) throw ParameterError("gaussian_convolve: alpha must be > 0");
  if (k < 0.0) throw ParameterError("gaussian_convolve: k must be >= 0");
  if (static_cast<int>(f.size()) != grid.count) {
    throw GridError("gaussian_convolve: sample count does not match grid");
  }
  ConvolutionResult out;
  out.values.assign(grid.count, 0.0);
  out.edge_magnitude = std::max(std::abs(f.front()), std::abs(f.back()));
  out.truncated = out.edge_magnitude > edge_threshold;

  const double h = grid.step();
  const double sigma = std::sqrt(alpha);
  const bool wide = k == 0.0 || sigma / k >= 1.5 * h;

  if (wide) {
    for (int i = 0; i < grid.count; ++i) {
      const double x = grid.node(i);
      double sum = 0.0;
      for (int j = 0; j < grid.count; ++j) {
        sum += grid.weight(j) * gaussian_density(x - k * grid.node(j), alpha) * f[j];
      }
      out.values[i] = sum;
    }
    return out;
  }

  // Per segment [x_j, x_j+1], with u = k x' - x:
  //   (1/k) \int N(u) (A + B u) du,  A = f_j + s (x/k - x_j),  B = s/k.
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (int i = 0; i < grid.count; ++i) {
    const double x = grid.node(i);
    double sum = 0.0;
    for (int j = 0; j + 1 < grid.count; ++j) {
      const double x0 = grid.node(j);
      const double x1 = grid.node(j + 1);
      const double u0 = k * x0 - x;
      const double u1 = k * x1 - x;
      const double z0 = u0 / sigma;
      const double z1 = u1 / sigma;
      if ((z0 > 40.0 && z1 > 40.0) || (z0 < -40.0 && z1 < -40.0)) continue;
      const double slope = (f[j + 1] - f[j]) / (x1 - x0);
      const double a = f[j] + slope * (x / k - x0);
      const double b = slope / k;
      const double mass = 0.5 * (std::erf(z1 * inv_sqrt2) - std::erf(z0 * inv_sqrt2));
      const double first = alpha * (gaussian_density(u0, alpha) - gaussian_density(u1, alpha));
      sum += (a * mass + b * first) / k;
    }
    out.values[i] = sum;
  }
  return out;
}

/// Samples of a complex function on the symmetric t-grid used by the
/// line Fourier transform, plus the truncation diagnostic.
class FourierLine {
 public:
  template <typename F>
  FourierLine(F&& f, double half_width, double max_step) {
    if (!(half_width > 0.0) || !(max_step > 0.0)) {
      throw ParameterError("fourier line: T and dt must be positive");
    }
    const int intervals = static_cast<int>(std::ceil(2.0 * half_width / max_step - 1e-12));
    grid_ = UniformGrid{-half_width, half_width, intervals + 1};
    samples_.resize(grid_.count);
    for (int i = 0; i < grid_.count; ++i) samples_[i] = f(grid_.node(i));
    edge_ = std::max(std::abs(samples_.front()), std::abs(samples_.back()));
  }

  /// (1/2pi) \int e^{-ixt} F(t) dt by the trapezoid rule.
  complex operator()(double x) const {
    complex sum = 0.0;
    for (int i = 0; i < grid_.count; ++i) {
      sum += grid_.weight(i) * std::polar(1.0, -x * grid_.node(i)) * samples_[i];
    }
    return sum / two_pi;
  }

  double edge_magnitude() const { return edge_; }
  const UniformGrid& grid() const { return grid_; }

 private:
  UniformGrid grid_;
  std::vector<complex> samples_;
  double edge_ = 0.0;
};

struct LineTransform {
  complex value;
  double edge_magnitude = 0.0;
  bool truncated = false;
};

/// (1/2pi) \int_{-T}^{T} e^{-ixt} F(t) dt. Flags inputs that have not decayed
/// below `threshold` at |t| = T.
template <typename F>
LineTransform fourier_line_transform(F&& f, double x, double half_width, double step,
                                     double threshold = default_config().truncation_threshold) {
  const FourierLine line(std::forward<F>(f), half_width, step);
  return {line(x), line.edge_magnitude(), line.edge_magnitude() > threshold};
}

/// Eigenvalues (ascending) of a 2x2 Hermitian matrix in closed form.
inline std::array<double, 2> hermitian_eigenvalues(const Eigen::Matrix2cd& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double half_gap = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
  const double mean = 0.5 * (a + d);
  return {mean - half_gap, mean + half_gap};
}

/// Eigenvalues (ascending) of a 4x4 Hermitian matrix.
inline std::array<double, 4> hermitian_eigenvalues(const Eigen::Matrix4cd& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m, Eigen::EigenvaluesOnly);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

}  // namespace num
}  // namespace qtomo

#endif  // QTOMO_NUMERICS_HPP_
