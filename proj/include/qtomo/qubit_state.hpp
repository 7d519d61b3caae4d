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

#ifndef QTOMO_QUBIT_STATE_HPP_
#define QTOMO_QUBIT_STATE_HPP_

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qtomo/errors.hpp"
#include "qtomo/numerics.hpp"

namespace qtomo::qubit {

using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

enum class Axis { x = 0, y = 1, z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

inline char axis_name(Axis a) { return "xyz"[static_cast<int>(a)]; }

// Standard basis: sigma_x real off-diagonal, sigma_y = [[0,-i],[i,0]],
// sigma_z diagonal.
inline const Matrix2& pauli(Axis a) {
  static const std::array<Matrix2, 3> matrices = [] {
    std::array<Matrix2, 3> m;
    m[0] << 0.0, 1.0, 1.0, 0.0;
    m[1] << 0.0, complex(0.0, -1.0), complex(0.0, 1.0), 0.0;
    m[2] << 1.0, 0.0, 0.0, -1.0;
    return m;
  }();
  return matrices[static_cast<int>(a)];
}

inline Matrix2 identity2() { return Matrix2::Identity(); }

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](Axis a) const {
    return a == Axis::x ? x : (a == Axis::y ? y : z);
  }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Qubit density matrix: Hermitian (exactly, as stored), unit trace and
/// positive semidefinite within the configured tolerance.
class DensityMatrix {
 public:
  DensityMatrix() : rho_(0.5 * Matrix2::Identity()) {}

  static DensityMatrix from_matrix(const Matrix2& m,
                                   double tolerance = default_config().state_tolerance) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tolerance) {
      throw InvalidState("density matrix is not Hermitian");
    }
    Matrix2 h = 0.5 * (m + m.adjoint());
    const double trace = h.trace().real();
    if (std::abs(trace - 1.0) > tolerance) {
      throw InvalidState("density matrix trace is " + std::to_string(trace) + ", expected 1");
    }
    const auto eig = num::hermitian_eigenvalues(h);
    if (eig[0] < -tolerance) {
      throw InvalidState("density matrix has negative eigenvalue " + std::to_string(eig[0]));
    }
    return DensityMatrix(h);
  }

  const Matrix2& matrix() const { return rho_; }
  complex operator()(int i, int j) const { return rho_(i, j); }

 private:
  explicit DensityMatrix(Matrix2 m) : rho_(std::move(m)) {}
  Matrix2 rho_;
};

/// rho = (I + a.sigma) / 2.
inline DensityMatrix bloch_to_density(const BlochVector& a,
                                      double tolerance = default_config().state_tolerance) {
  if (a.norm() > 1.0 + tolerance) {
    throw InvalidState("Bloch vector length " + std::to_string(a.norm()) + " exceeds 1");
  }
  Matrix2 m;
  m << 0.5 * (1.0 + a.z), complex(0.5 * a.x, -0.5 * a.y), complex(0.5 * a.x, 0.5 * a.y),
      0.5 * (1.0 - a.z);
  return DensityMatrix::from_matrix(m, tolerance);
}

/// Coefficients of (I + a.sigma)/2 for any 2x2 operator, as complex numbers
/// (real for Hermitian input).
inline std::array<complex, 3> pauli_coordinates(const Matrix2& m) {
  return {m(0, 1) + m(1, 0), complex(0.0, 1.0) * (m(0, 1) - m(1, 0)), m(0, 0) - m(1, 1)};
}

inline BlochVector density_to_bloch(const DensityMatrix& rho) {
  const auto c = pauli_coordinates(rho.matrix());
  return {c[0].real(), c[1].real(), c[2].real()};
}

inline BlochVector density_to_bloch(const Matrix2& m,
                                    double tolerance = default_config().state_tolerance) {
  return density_to_bloch(DensityMatrix::from_matrix(m, tolerance));
}

/// Kraus set {A_i} with sum A_i^dag A_i = I.
class KrausChannel {
 public:
  static KrausChannel make(std::vector<Matrix2> operators,
                           double tolerance = default_config().trace_preservation_tolerance) {
    if (operators.empty()) throw ParameterError("Kraus set is empty");
    Matrix2 sum = Matrix2::Zero();
    for (const auto& a : operators) sum += a.adjoint() * a;
    const double dev = (sum - Matrix2::Identity()).cwiseAbs().maxCoeff();
    if (dev > tolerance) {
      throw ParameterError("Kraus set is not trace preserving: |sum A^dag A - I| = " +
                           std::to_string(dev));
    }
    return KrausChannel(std::move(operators));
  }

  const std::vector<Matrix2>& operators() const { return operators_; }

 private:
  explicit KrausChannel(std::vector<Matrix2> ops) : operators_(std::move(ops)) {}
  std::vector<Matrix2> operators_;
};

/// pi_0 rho + sum_a pi_a sigma_a rho sigma_a.
class PauliMixture {
 public:
  static PauliMixture make(double p0, double px, double py, double pz,
                           double tolerance = default_config().state_tolerance) {
    const std::array<double, 4> p{p0, px, py, pz};
    for (double v : p) {
      if (v < 0.0) throw ParameterError("Pauli mixture weight is negative");
    }
    if (std::abs(p0 + px + py + pz - 1.0) > tolerance) {
      throw ParameterError("Pauli mixture weights do not sum to 1");
    }
    return PauliMixture(p);
  }

  double identity_weight() const { return p_[0]; }
  double weight(Axis a) const { return p_[1 + static_cast<int>(a)]; }
  const std::array<double, 4>& weights() const { return p_; }

 private:
  explicit PauliMixture(std::array<double, 4> p) : p_(p) {}
  std::array<double, 4> p_;
};

/// a -> (t_x + l_x a_x, t_y + l_y a_y, t_z + l_z a_z). No intrinsic
/// constraint; complete positivity is decided by the Choi matrix.
struct AffineQubitChannel {
  BlochVector t;
  std::array<double, 3> lambda{1.0, 1.0, 1.0};

  double scale(Axis a) const { return lambda[static_cast<int>(a)]; }
};

using ChannelSpec = std::variant<KrausChannel, PauliMixture, AffineQubitChannel>;

/// Linear extension of the channel to all 2x2 operators.
inline Matrix2 apply_linear(const ChannelSpec& spec, const Matrix2& m) {
  struct Visitor {
    const Matrix2& m;
    Matrix2 operator()(const KrausChannel& k) const {
      Matrix2 out = Matrix2::Zero();
      for (const auto& a : k.operators()) out += a * m * a.adjoint();
      return out;
    }
    Matrix2 operator()(const PauliMixture& p) const {
      Matrix2 out = p.identity_weight() * m;
      for (Axis a : kAxes) out += p.weight(a) * (pauli(a) * m * pauli(a));
      return out;
    }
    Matrix2 operator()(const AffineQubitChannel& c) const {
      // m = x0 I + x.sigma ; Phi(I) = I + t.sigma ; Phi(sigma_j) = l_j sigma_j
      const complex x0 = 0.5 * m.trace();
      const auto coords = pauli_coordinates(m);
      Matrix2 out = x0 * Matrix2::Identity();
      for (Axis a : kAxes) {
        const int i = static_cast<int>(a);
        out += (x0 * c.t[a] + 0.5 * c.lambda[i] * coords[i]) * pauli(a);
      }
      return out;
    }
  };
  return std::visit(Visitor{m}, spec);
}

/// Bloch vector of the affine image, exactly t + lambda * a.
inline BlochVector affine_image(const AffineQubitChannel& c, const BlochVector& a) {
  return {c.t.x + c.lambda[0] * a.x, c.t.y + c.lambda[1] * a.y, c.t.z + c.lambda[2] * a.z};
}

/// Applies the channel to a state. An affine channel that leaves the Bloch
/// ball raises NonCpEvidence; the image is never clipped.
inline DensityMatrix apply_channel(const ChannelSpec& spec, const DensityMatrix& rho,
                                   const NumericsConfig& config = default_config()) {
  if (const auto* affine = std::get_if<AffineQubitChannel>(&spec)) {
    const BlochVector out = affine_image(*affine, density_to_bloch(rho));
    if (out.norm() > 1.0 + config.state_tolerance) {
      throw NonCpEvidence("affine channel maps a valid state to Bloch length " +
                              std::to_string(out.norm()),
                          out.x, out.y, out.z);
    }
    return bloch_to_density(out, config.state_tolerance);
  }
  // Kraus and Pauli outputs are states up to rounding.
  return DensityMatrix::from_matrix(apply_linear(spec, rho.matrix()), 1e-10);
}

/// C = sum_ij E_ij (x) Phi(E_ij); block (i, j) of C is Phi(E_ij).
struct ChoiMatrix {
  Matrix4 entries = Matrix4::Zero();

  /// Tr over the output factor; equals I for trace-preserving maps.
  Matrix2 partial_trace_output() const {
    Matrix2 out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out(i, j) = entries(2 * i, 2 * j) + entries(2 * i + 1, 2 * j + 1);
    return out;
  }
};

inline Matrix2 matrix_unit(int i, int j) {
  Matrix2 e = Matrix2::Zero();
  e(i, j) = 1.0;
  return e;
}

/// Assembles a Choi matrix from a linear map given on the matrix units.
template <typename LinearMap>
ChoiMatrix choi_from_map(LinearMap&& map) {
  ChoiMatrix c;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      c.entries.block<2, 2>(2 * i, 2 * j) = map(matrix_unit(i, j));
    }
  }
  // Hermitian by construction for Hermiticity-preserving maps; remove rounding.
  c.entries = 0.5 * (c.entries + c.entries.adjoint()).eval();
  return c;
}

inline ChoiMatrix choi_of(const ChannelSpec& spec) {
  return choi_from_map([&spec](const Matrix2& e) { return apply_linear(spec, e); });
}

struct CpReport {
  bool completely_positive = false;
  double min_eigenvalue = 0.0;
};

inline CpReport is_cp(const ChoiMatrix& c, double tolerance = default_config().cp_tolerance) {
  const auto eig = num::hermitian_eigenvalues(c.entries);
  return {eig[0] >= -tolerance, eig[0]};
}

/// Extreme points of the non-unital qubit channels:
/// t = (0, 0, sign sqrt((1-lx^2)(1-ly^2))), lambda = (lx, ly, lx ly).
inline AffineQubitChannel extreme_point_channel(double lx, double ly, int sign) {
  if (std::abs(lx) > 1.0 || std::abs(ly) > 1.0) {
    throw ParameterError("extreme point channel needs |lambda_x|, |lambda_y| <= 1");
  }
  if (sign != 1 && sign != -1) throw ParameterError("extreme point sign must be +1 or -1");
  AffineQubitChannel c;
  c.t = {0.0, 0.0, sign * std::sqrt((1.0 - lx * lx) * (1.0 - ly * ly))};
  c.lambda = {lx, ly, lx * ly};
  return c;
}

/// The affine form of a Pauli mixture: t = 0 and the diagonal contraction.
inline AffineQubitChannel to_affine(const PauliMixture& p) {
  const auto& w = p.weights();
  AffineQubitChannel c;
  c.lambda = {w[0] + w[1] - w[2] - w[3], w[0] - w[1] + w[2] - w[3], w[0] - w[1] - w[2] + w[3]};
  return c;
}

}  // namespace qtomo::qubit

#endif  // QTOMO_QUBIT_STATE_HPP_
