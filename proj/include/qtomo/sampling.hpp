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

#ifndef QTOMO_SAMPLING_HPP_
#define QTOMO_SAMPLING_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "qtomo/qubit_state.hpp"

// Seeded generators for property sweeps.
namespace qtomo::qubit::sampling {

template <typename Rng>
BlochVector random_bloch(Rng& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  double x = normal(rng), y = normal(rng), z = normal(rng);
  const double len = std::sqrt(x * x + y * y + z * z);
  const double r = std::cbrt(unit(rng));
  return {r * x / len, r * y / len, r * z / len};
}

template <typename Rng>
DensityMatrix random_state(Rng& rng) {
  return bloch_to_density(random_bloch(rng));
}

/// Random trace-preserving Kraus set: Gaussian matrices G_i, then
/// A_i = G_i S^{-1/2} with S = sum G_i^dag G_i.
template <typename Rng>
KrausChannel random_kraus(Rng& rng, int count = 2) {
  std::normal_distribution<double> normal;
  std::vector<Matrix2> ops(count);
  Matrix2 s = Matrix2::Zero();
  for (auto& g : ops) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g(i, j) = complex(normal(rng), normal(rng));
    s += g.adjoint() * g;
  }
  const Eigen::SelfAdjointEigenSolver<Matrix2> eig(s);
  const Matrix2 inv_sqrt = eig.operatorInverseSqrt();
  for (auto& g : ops) g = g * inv_sqrt;
  return KrausChannel::make(std::move(ops));
}

/// Random completely positive affine channel in canonical form, rejection
/// sampled against the Choi matrix.
template <typename Rng>
AffineQubitChannel random_cp_affine(Rng& rng, double tolerance = 0.0) {
  std::uniform_real_distribution<double> t_dist(-0.5, 0.5);
  std::uniform_real_distribution<double> l_dist(-1.0, 1.0);
  for (;;) {
    AffineQubitChannel c;
    c.t = {t_dist(rng), t_dist(rng), t_dist(rng)};
    c.lambda = {l_dist(rng), l_dist(rng), l_dist(rng)};
    if (is_cp(choi_of(c), tolerance).completely_positive) return c;
  }
}

/// Pauli mixtures with weights in {0, 1/3, 2/3, 1}: the 20 points of the
/// simplex mesh.
inline std::vector<PauliMixture> pauli_mesh() {
  std::vector<PauliMixture> out;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      for (int c = 0; a + b + c <= 3; ++c) {
        const int d = 3 - a - b - c;
        out.push_back(PauliMixture::make(a / 3.0, b / 3.0, c / 3.0, d / 3.0, 1e-12));
      }
  return out;
}

}  // namespace qtomo::qubit::sampling

#endif  // QTOMO_SAMPLING_HPP_
