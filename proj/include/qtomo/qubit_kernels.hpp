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

#ifndef QTOMO_QUBIT_KERNELS_HPP_
#define QTOMO_QUBIT_KERNELS_HPP_

#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "qtomo/numerics.hpp"
#include "qtomo/qubit_state.hpp"
#include "qtomo/qubit_tomography.hpp"

namespace qtomo::qubit {

// All kernels below carry the factor delta_{m m'}: a tomogram is mapped
// slice by slice, with the same-outcome measure (1/2pi) \int\int sin b.

/// Reproducing kernel delta_{mm'} Tr(U(x) D(x')) = delta (1/2)(1 + 3 s.s').
inline double kernel_identity(const TomoPoint& x, const TomoPoint& xp) {
  if (x.m != xp.m) return 0.0;
  const auto s = dequantizer_axis(x);
  const auto sp = dequantizer_axis(xp);
  return 0.5 * (1.0 + 3.0 * (s[0] * sp[0] + s[1] * sp[1] + s[2] * sp[2]));
}

/// Kernels of the three Pauli conjugations rho -> sigma_a rho sigma_a.
inline double kernel_sigma(Axis a, const TomoPoint& x, const TomoPoint& xp) {
  if (x.m != xp.m) return 0.0;
  const double f1 = std::cos(x.alpha) * std::sin(x.beta);
  const double f2 = std::sin(x.alpha) * std::sin(x.beta);
  const double f3 = std::cos(x.beta);
  const double g1 = std::cos(xp.alpha) * std::sin(xp.beta);
  const double g2 = std::sin(xp.alpha) * std::sin(xp.beta);
  const double g3 = std::cos(xp.beta);
  switch (a) {
    case Axis::x: return 0.5 * (1.0 + 3.0 * f1 * g1 - 3.0 * f2 * g2 - 3.0 * f3 * g3);
    case Axis::y: return 0.5 * (1.0 - 3.0 * f1 * g1 + 3.0 * f2 * g2 - 3.0 * f3 * g3);
    case Axis::z: return 0.5 * (1.0 - 3.0 * f1 * g1 - 3.0 * f2 * g2 + 3.0 * f3 * g3);
  }
  return 0.0;
}

/// Kernel of the affine channel a -> t + lambda a:
///   delta [1/2 + m(-f1 t_x - f2 t_y + f3 t_z) + (3/2)(l_x f1 f1' + l_y f2 f2' + l_z f3 f3')]
/// with f1 = cos a sin b, f2 = sin a sin b, f3 = cos b.
inline double kernel_general(const BlochVector& t, const std::array<double, 3>& lambda,
                             const TomoPoint& x, const TomoPoint& xp) {
  if (x.m != xp.m) return 0.0;
  const double m = spin_value(x.m);
  const auto s = dequantizer_axis(x);
  const auto sp = dequantizer_axis(xp);
  const double shift = m * (s[0] * t.x + s[1] * t.y + s[2] * t.z);
  const double scale = lambda[0] * s[0] * sp[0] + lambda[1] * s[1] * sp[1] + lambda[2] * s[2] * sp[2];
  return 0.5 + shift + 1.5 * scale;
}

inline double kernel_general(const AffineQubitChannel& c, const TomoPoint& x, const TomoPoint& xp) {
  return kernel_general(c.t, c.lambda, x, xp);
}

/// delta_{mm'} sum_i Tr(U(x) A_i D(x') A_i^dag).
inline double kernel_from_kraus(const KrausChannel& ch, const TomoPoint& x, const TomoPoint& xp) {
  if (x.m != xp.m) return 0.0;
  const Matrix2 d = quantizer(xp);
  Matrix2 image = Matrix2::Zero();
  for (const auto& a : ch.operators()) image += a * d * a.adjoint();
  const complex value = (dequantizer(x) * image).trace();
  if (std::abs(value.imag()) > 1e-12) {
    throw Error("Kraus kernel has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

inline double kernel_pauli_mixture(const PauliMixture& p, const TomoPoint& x, const TomoPoint& xp) {
  double v = p.identity_weight() * kernel_identity(x, xp);
  for (Axis a : kAxes) v += p.weight(a) * kernel_sigma(a, x, xp);
  return v;
}

/// Tomographic integral kernel K(x; x') of a qubit channel.
class QubitKernel {
 public:
  struct Identity {};
  struct Sigma {
    Axis axis;
  };
  using Variant = std::variant<Identity, Sigma, PauliMixture, AffineQubitChannel, KrausChannel>;

  static QubitKernel identity() { return QubitKernel(Identity{}); }
  static QubitKernel sigma(Axis a) { return QubitKernel(Sigma{a}); }
  static QubitKernel pauli_mixture(const PauliMixture& p) { return QubitKernel(p); }
  static QubitKernel general(const AffineQubitChannel& c) { return QubitKernel(c); }
  static QubitKernel from_kraus(const KrausChannel& k) { return QubitKernel(k); }

  double operator()(const TomoPoint& x, const TomoPoint& xp) const {
    struct Eval {
      const TomoPoint& x;
      const TomoPoint& xp;
      double operator()(const Identity&) const { return kernel_identity(x, xp); }
      double operator()(const Sigma& s) const { return kernel_sigma(s.axis, x, xp); }
      double operator()(const PauliMixture& p) const { return kernel_pauli_mixture(p, x, xp); }
      double operator()(const AffineQubitChannel& c) const { return kernel_general(c, x, xp); }
      double operator()(const KrausChannel& k) const { return kernel_from_kraus(k, x, xp); }
    };
    return std::visit(Eval{x, xp}, kernel_);
  }

  const Variant& variant() const { return kernel_; }

  std::string description() const {
    struct Name {
      std::string operator()(const Identity&) const { return "identity"; }
      std::string operator()(const Sigma& s) const { return std::string("sigma_") + axis_name(s.axis); }
      std::string operator()(const PauliMixture&) const { return "pauli-mixture"; }
      std::string operator()(const AffineQubitChannel&) const { return "general-affine"; }
      std::string operator()(const KrausChannel&) const { return "kraus-derived"; }
    };
    return std::visit(Name{}, kernel_);
  }

 private:
  explicit QubitKernel(Variant v) : kernel_(std::move(v)) {}
  Variant kernel_;
};

/// Closed-form kernel for a channel in canonical form (Kraus sets use the
/// trace formula).
inline QubitKernel kernel_of(const ChannelSpec& spec) {
  struct Make {
    QubitKernel operator()(const KrausChannel& k) const { return QubitKernel::from_kraus(k); }
    QubitKernel operator()(const PauliMixture& p) const { return QubitKernel::pauli_mixture(p); }
    QubitKernel operator()(const AffineQubitChannel& c) const { return QubitKernel::general(c); }
  };
  return std::visit(Make{}, spec);
}

/// out(x) = \int K(x; x') w(x') dx' on the tomogram's grid.
template <typename T>
SampledSymbol<T> apply_kernel(const QubitKernel& kernel, const SampledSymbol<T>& w) {
  const auto& grid = w.grid;
  SampledSymbol<T> out{grid, std::vector<T>(grid.size())};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const TomoPoint x = grid.point(k);
    T sum{};
    for (std::size_t kp = 0; kp < grid.size(); ++kp) {
      sum += (grid.weight(kp) * kernel(x, grid.point(kp))) * w[kp];
    }
    out[k] = sum;
  }
  return out;
}

/// Angle map realizing sigma_a U(x) sigma_a = U(angle_involution(a, x)):
///   x: (a, b) -> (-a, pi - b),  y: (a, b) -> (pi - a, pi - b),  z: (a, b) -> (a + pi, b).
inline TomoPoint angle_involution(Axis a, const TomoPoint& x) {
  switch (a) {
    case Axis::x: return canonical({x.m, -x.alpha, num::pi - x.beta});
    case Axis::y: return canonical({x.m, num::pi - x.alpha, num::pi - x.beta});
    case Axis::z: return canonical({x.m, x.alpha + num::pi, x.beta});
  }
  return x;
}

/// Rebuilds the channel from its kernel,
///   Phi(A) = \int D(x) [\int K(x; x') Tr(A U(x')) dx'] dx,
/// on the matrix units and returns its Choi matrix.
inline ChoiMatrix channel_from_kernel(const QubitKernel& kernel,
                                      const AngularGrid& grid = AngularGrid()) {
  require_reconstruction_grid(grid);
  const std::size_t n = grid.size();
  Eigen::MatrixXd dense(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const TomoPoint x = grid.point(k);
    for (std::size_t kp = 0; kp < n; ++kp) dense(k, kp) = grid.weight(kp) * kernel(x, grid.point(kp));
  }
  return choi_from_map([&](const Matrix2& e) {
    const auto symbol = sample_symbol(e, grid);
    Eigen::VectorXcd in(n);
    for (std::size_t k = 0; k < n; ++k) in(k) = symbol[k];
    const Eigen::VectorXcd mapped = dense.cast<complex>() * in;
    SampledSymbol<complex> out{grid, std::vector<complex>(mapped.data(), mapped.data() + n)};
    return reconstruct_operator(out);
  });
}

struct KernelDiagnostics {
  // max_x |\int K(x; x') dx' - 1|; zero only for unital channels, since the
  // row integral equals twice the output tomogram of Phi(I/2).
  double row_integral_max_dev = 0.0;
  // max_x' |\int K(x; x') dx - 1|, the trace-preservation condition.
  double trace_integral_max_dev = 0.0;
  double min_value = std::numeric_limits<double>::infinity();
  TomoPoint min_x;
  TomoPoint min_xp;
  double choi_min_eigenvalue = 0.0;
  bool completely_positive = false;
};

struct ScanGrid {
  int alpha_count = 32;
  int beta_count = 16;
};

/// Scan points: alpha = 2pi i / N_a, beta = pi j / (N_b - 1), both outcomes.
/// The poles are included so antipodal pairs are sampled.
inline std::vector<TomoPoint> scan_points(const ScanGrid& scan) {
  std::vector<TomoPoint> pts;
  pts.reserve(2 * scan.alpha_count * scan.beta_count);
  for (Spin m : kSpins)
    for (int i = 0; i < scan.alpha_count; ++i)
      for (int j = 0; j < scan.beta_count; ++j)
        pts.push_back({m, num::two_pi * i / scan.alpha_count,
                       scan.beta_count > 1 ? num::pi * j / (scan.beta_count - 1) : 0.0});
  return pts;
}

/// Largest deviation from 1 of \int K(x; x') dx' over output nodes x
/// (output_side = false), or of \int K(x; x') dx over input nodes x'
/// (output_side = true).
inline double integral_max_dev(const QubitKernel& kernel, const AngularGrid& grid, bool output_side) {
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const TomoPoint fixed = grid.point(k);
    double sum = 0.0;
    for (std::size_t kp = 0; kp < grid.size(); ++kp) {
      const TomoPoint free = grid.point(kp);
      sum += grid.weight(kp) * (output_side ? kernel(free, fixed) : kernel(fixed, free));
    }
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

/// Row and column normalization on the grid, minimum over a dense scan (a lower bound on
/// the true negativity) and the CP verdict of the reconstructed channel.
inline KernelDiagnostics kernel_diagnostics(const QubitKernel& kernel,
                                            const AngularGrid& grid = AngularGrid(),
                                            const ScanGrid& scan = ScanGrid(),
                                            const NumericsConfig& config = default_config()) {
  KernelDiagnostics d;
  d.row_integral_max_dev = integral_max_dev(kernel, grid, false);
  d.trace_integral_max_dev = integral_max_dev(kernel, grid, true);
  const auto pts = scan_points(scan);
  for (const auto& x : pts) {
    for (const auto& xp : pts) {
      const double v = kernel(x, xp);
      if (v < d.min_value) {
        d.min_value = v;
        d.min_x = x;
        d.min_xp = xp;
      }
    }
  }
  const auto cp = is_cp(channel_from_kernel(kernel, grid), config.cp_tolerance);
  d.choi_min_eigenvalue = cp.min_eigenvalue;
  d.completely_positive = cp.completely_positive;
  return d;
}

/// CSV with header m,alpha,beta,m2,alpha2,beta2,K over all grid node pairs.
inline void write_kernel_csv(std::ostream& os, const QubitKernel& kernel, const AngularGrid& grid) {
  const auto old = os.precision(17);
  os << "m,alpha,beta,m2,alpha2,beta2,K\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const TomoPoint x = grid.point(k);
    for (std::size_t kp = 0; kp < grid.size(); ++kp) {
      const TomoPoint xp = grid.point(kp);
      os << spin_value(x.m) << ',' << x.alpha << ',' << x.beta << ',' << spin_value(xp.m) << ','
         << xp.alpha << ',' << xp.beta << ',' << kernel(x, xp) << '\n';
    }
  }
  os.precision(old);
}

}  // namespace qtomo::qubit

#endif  // QTOMO_QUBIT_KERNELS_HPP_
