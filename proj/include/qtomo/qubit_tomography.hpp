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

#ifndef QTOMO_QUBIT_TOMOGRAPHY_HPP_
#define QTOMO_QUBIT_TOMOGRAPHY_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iomanip>
#include <ostream>
#include <vector>

#include "qtomo/errors.hpp"
#include "qtomo/numerics.hpp"
#include "qtomo/qubit_state.hpp"

namespace qtomo::qubit {

// Spin measurement outcome m = +1/2 or -1/2.
enum class Spin { up = 0, down = 1 };

inline constexpr std::array<Spin, 2> kSpins{Spin::up, Spin::down};

inline double spin_value(Spin m) { return m == Spin::up ? 0.5 : -0.5; }

inline Spin spin_from_value(double m) {
  if (m == 0.5) return Spin::up;
  if (m == -0.5) return Spin::down;
  throw ParameterError("spin outcome must be +1/2 or -1/2");
}

/// Tomographic point x = (m, alpha, beta).
struct TomoPoint {
  Spin m = Spin::up;
  double alpha = 0.0;
  double beta = 0.0;
};

/// Reduces alpha into [0, 2pi) and reflects beta into [0, pi], shifting alpha
/// by pi whenever a reflection happens. The measurement direction is unchanged.
inline TomoPoint canonical(TomoPoint x) {
  double beta = std::fmod(x.beta, num::two_pi);
  if (beta < 0.0) beta += num::two_pi;
  double alpha = x.alpha;
  if (beta > num::pi) {
    beta = num::two_pi - beta;
    alpha += num::pi;
  }
  alpha = std::fmod(alpha, num::two_pi);
  if (alpha < 0.0) alpha += num::two_pi;
  if (alpha >= num::two_pi) alpha = 0.0;
  return {x.m, alpha, beta};
}

/// n = (cos a sin b, sin a sin b, cos b).
inline std::array<double, 3> direction(double alpha, double beta) {
  const double sb = std::sin(beta);
  return {std::cos(alpha) * sb, std::sin(alpha) * sb, std::cos(beta)};
}

// U(x) = I/2 + m s.sigma with s = (-n_x, -n_y, n_z).
inline std::array<double, 3> dequantizer_axis(const TomoPoint& x) {
  const auto n = direction(x.alpha, x.beta);
  return {-n[0], -n[1], n[2]};
}

/// U(x) = I/2 - m cos(a) sin(b) sigma_x - m sin(a) sin(b) sigma_y + m cos(b) sigma_z.
inline Matrix2 dequantizer(const TomoPoint& x) {
  const double m = spin_value(x.m);
  const auto s = dequantizer_axis(x);
  Matrix2 u;
  u << 0.5 + m * s[2], complex(m * s[0], -m * s[1]), complex(m * s[0], m * s[1]),
      0.5 - m * s[2];
  return u;
}

/// D(x) = 3 U(x) - I.
inline Matrix2 quantizer(const TomoPoint& x) {
  return 3.0 * dequantizer(x) - Matrix2::Identity();
}

/// w(x) = Tr(rho U(x)) = 1/2 + m (a . s).
inline double tomogram_of(const BlochVector& a, const TomoPoint& x) {
  const auto s = dequantizer_axis(x);
  return 0.5 + spin_value(x.m) * (a.x * s[0] + a.y * s[1] + a.z * s[2]);
}

inline double tomogram_of(const DensityMatrix& rho, const TomoPoint& x) {
  return tomogram_of(density_to_bloch(rho), x);
}

/// Tr(A U(x)) for an arbitrary operator.
inline complex symbol_of(const Matrix2& a, const TomoPoint& x) {
  return (a * dequantizer(x)).trace();
}

/// Product rule over (alpha, beta): uniform periodic nodes in alpha and
/// Gauss-Legendre nodes in cos(beta). Weights carry the 1/(2pi) factor, so
/// they sum to 2 = (1/2pi) \int d alpha \int sin b d b.
class AngularGrid {
 public:
  static constexpr int kDefaultAlpha = 8;
  static constexpr int kDefaultBeta = 4;

  AngularGrid() : AngularGrid(kDefaultAlpha, kDefaultBeta) {}

  AngularGrid(int n_alpha, int n_beta) : n_alpha_(n_alpha), n_beta_(n_beta) {
    if (n_alpha < 1 || n_beta < 1) throw GridError("angular grid needs at least one node per axis");
    const auto alpha_rule = num::periodic_trapezoid(n_alpha);
    const auto u_rule = num::gauss_legendre(n_beta, -1.0, 1.0);
    alpha_ = alpha_rule.nodes;
    alpha_weight_.resize(n_alpha);
    for (int i = 0; i < n_alpha; ++i) alpha_weight_[i] = alpha_rule.weights[i] / num::two_pi;
    // Increasing beta means decreasing cos(beta).
    beta_.resize(n_beta);
    beta_weight_.resize(n_beta);
    for (int j = 0; j < n_beta; ++j) {
      beta_[j] = std::acos(u_rule.nodes[n_beta - 1 - j]);
      beta_weight_[j] = u_rule.weights[n_beta - 1 - j];
    }
  }

  int alpha_count() const { return n_alpha_; }
  int beta_count() const { return n_beta_; }
  // Angular nodes per spin outcome.
  std::size_t angular_size() const { return static_cast<std::size_t>(n_alpha_) * n_beta_; }
  // All tomographic points, both outcomes.
  std::size_t size() const { return 2 * angular_size(); }

  double alpha(int i) const { return alpha_[i]; }
  double beta(int j) const { return beta_[j]; }
  double weight(int i, int j) const { return alpha_weight_[i] * beta_weight_[j]; }

  // Flat index: spin-major, then alpha, then beta.
  std::size_t index(Spin m, int i, int j) const {
    return static_cast<std::size_t>(m) * angular_size() + static_cast<std::size_t>(i) * n_beta_ + j;
  }
  TomoPoint point(std::size_t k) const {
    const Spin m = k < angular_size() ? Spin::up : Spin::down;
    const std::size_t r = k % angular_size();
    return {m, alpha_[r / n_beta_], beta_[r % n_beta_]};
  }
  double weight(std::size_t k) const {
    const std::size_t r = k % angular_size();
    return alpha_weight_[r / n_beta_] * beta_weight_[r % n_beta_];
  }

  double total_weight() const {
    double s = 0.0;
    for (int i = 0; i < n_alpha_; ++i)
      for (int j = 0; j < n_beta_; ++j) s += weight(i, j);
    return s;
  }

  /// Both outcomes averaged: \int dx f = (1/2) sum_m (1/2pi) \int\int f.
  /// This is the measure under which \int U = \int D = I and the quantizer
  /// reconstructs the state.
  template <typename F>
  auto integrate_averaged(F&& f) const {
    using R = decltype(f(TomoPoint{}));
    R sum = R::Zero();
    for (std::size_t k = 0; k < size(); ++k) sum += (0.5 * weight(k)) * f(point(k));
    return sum;
  }

  /// Same-outcome angular integral (1/2pi) \int\int f(m, a, b) sin b.
  template <typename F>
  double integrate_slice(Spin m, F&& f) const {
    double sum = 0.0;
    for (int i = 0; i < n_alpha_; ++i)
      for (int j = 0; j < n_beta_; ++j) sum += weight(i, j) * f(TomoPoint{m, alpha_[i], beta_[j]});
    return sum;
  }

 private:
  int n_alpha_;
  int n_beta_;
  std::vector<double> alpha_;
  std::vector<double> alpha_weight_;
  std::vector<double> beta_;
  std::vector<double> beta_weight_;
};

/// Symbol sampled on every point of an AngularGrid. Real for states; complex
/// symbols of non-Hermitian operators are used to assemble Choi matrices.
template <typename T>
struct SampledSymbol {
  AngularGrid grid;
  std::vector<T> values;

  T& operator[](std::size_t k) { return values[k]; }
  const T& operator[](std::size_t k) const { return values[k]; }
  T at(Spin m, int i, int j) const { return values[grid.index(m, i, j)]; }
};

using QubitTomogram = SampledSymbol<double>;

inline QubitTomogram sample_tomogram(const DensityMatrix& rho, const AngularGrid& grid) {
  const BlochVector a = density_to_bloch(rho);
  QubitTomogram w{grid, std::vector<double>(grid.size())};
  for (std::size_t k = 0; k < grid.size(); ++k) w[k] = tomogram_of(a, grid.point(k));
  return w;
}

inline SampledSymbol<complex> sample_symbol(const Matrix2& op, const AngularGrid& grid) {
  SampledSymbol<complex> w{grid, std::vector<complex>(grid.size())};
  for (std::size_t k = 0; k < grid.size(); ++k) w[k] = symbol_of(op, grid.point(k));
  return w;
}

inline void require_reconstruction_grid(const AngularGrid& grid) {
  if (grid.alpha_count() < 4 || grid.beta_count() < 2) {
    throw GridError("reconstruction needs N_alpha >= 4 and N_beta >= 2, got " +
                    std::to_string(grid.alpha_count()) + "x" + std::to_string(grid.beta_count()));
  }
}

/// \int D(x) w(x) dx for any sampled symbol (no state validation).
template <typename T>
Matrix2 reconstruct_operator(const SampledSymbol<T>& w) {
  require_reconstruction_grid(w.grid);
  Matrix2 sum = Matrix2::Zero();
  for (std::size_t k = 0; k < w.grid.size(); ++k) {
    sum += (0.5 * w.grid.weight(k) * complex(w.values[k])) * quantizer(w.grid.point(k));
  }
  return sum;
}

inline DensityMatrix reconstruct(const QubitTomogram& w, double tolerance = 1e-10) {
  return DensityMatrix::from_matrix(reconstruct_operator(w), tolerance);
}

/// (f, g) = (1/2pi) \int\int conj(f) g sin b db da on the grid.
template <typename F, typename G>
double inner_product(F&& f, G&& g, const AngularGrid& grid) {
  double sum = 0.0;
  for (int i = 0; i < grid.alpha_count(); ++i) {
    for (int j = 0; j < grid.beta_count(); ++j) {
      const double a = grid.alpha(i);
      const double b = grid.beta(j);
      sum += grid.weight(i, j) * std::real(std::conj(complex(f(a, b))) * complex(g(a, b)));
    }
  }
  return sum;
}

// The orthogonal family 1, cos a sin b, sin a sin b, cos b.
inline double basis_function(int index, double alpha, double beta) {
  switch (index) {
    case 0: return 1.0;
    case 1: return std::cos(alpha) * std::sin(beta);
    case 2: return std::sin(alpha) * std::sin(beta);
    case 3: return std::cos(beta);
    default: throw ParameterError("basis function index must be 0..3");
  }
}

struct NormalizationReport {
  double pointwise_max_dev = 0.0;  // max |sum_m w - 1|
  double slice_max_dev = 0.0;      // max_m |(1/2pi) \int\int w(m) - 1|
  double min_value = 0.0;
  double max_value = 0.0;
};

inline NormalizationReport check_normalization(const QubitTomogram& w) {
  NormalizationReport r;
  const auto& g = w.grid;
  r.min_value = *std::min_element(w.values.begin(), w.values.end());
  r.max_value = *std::max_element(w.values.begin(), w.values.end());
  for (int i = 0; i < g.alpha_count(); ++i)
    for (int j = 0; j < g.beta_count(); ++j)
      r.pointwise_max_dev =
          std::max(r.pointwise_max_dev, std::abs(w.at(Spin::up, i, j) + w.at(Spin::down, i, j) - 1.0));
  for (Spin m : kSpins) {
    double s = 0.0;
    for (int i = 0; i < g.alpha_count(); ++i)
      for (int j = 0; j < g.beta_count(); ++j) s += g.weight(i, j) * w.at(m, i, j);
    r.slice_max_dev = std::max(r.slice_max_dev, std::abs(s - 1.0));
  }
  return r;
}

/// CSV with header m,alpha,beta,w; one row per node, 17 significant digits.
inline void write_csv(std::ostream& os, const QubitTomogram& w) {
  const auto old = os.precision(17);
  os << "m,alpha,beta,w\n";
  for (std::size_t k = 0; k < w.grid.size(); ++k) {
    const TomoPoint x = w.grid.point(k);
    os << spin_value(x.m) << ',' << x.alpha << ',' << x.beta << ',' << w[k] << '\n';
  }
  os.precision(old);
}

}  // namespace qtomo::qubit

#endif  // QTOMO_QUBIT_TOMOGRAPHY_HPP_
