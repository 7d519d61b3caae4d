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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "qtomo/qubit_kernels.hpp"
#include "qtomo/sampling.hpp"

namespace {

using namespace qtomo;
using namespace qtomo::qubit;

constexpr double kPi = std::numbers::pi;

Matrix2 mat(complex a, complex b, complex c, complex d) {
  Matrix2 m;
  m << a, b, c, d;
  return m;
}

const Matrix2 kSx = mat(0, 1, 1, 0);
const Matrix2 kSy = mat(0, complex(0, -1), complex(0, 1), 0);
const Matrix2 kSz = mat(1, 0, 0, -1);

double max_diff(const Matrix2& a, const Matrix2& b) { return (a - b).cwiseAbs().maxCoeff(); }

Matrix2 u_oracle(const TomoPoint& x) {
  const double m = spin_value(x.m);
  return 0.5 * Matrix2::Identity() - m * std::cos(x.alpha) * std::sin(x.beta) * kSx -
         m * std::sin(x.alpha) * std::sin(x.beta) * kSy + m * std::cos(x.beta) * kSz;
}

// delta_{mm'} sum_i Tr(U(x) A_i D(x') A_i^dag) with U, D built from Pauli sums.
double kraus_kernel_oracle(const std::vector<Matrix2>& ops, const TomoPoint& x, const TomoPoint& xp) {
  if (x.m != xp.m) return 0.0;
  const Matrix2 d = 3.0 * u_oracle(xp) - Matrix2::Identity();
  complex sum = 0.0;
  for (const auto& a : ops) sum += (u_oracle(x) * a * d * a.adjoint()).trace();
  return sum.real();
}

std::vector<Matrix2> amplitude_damping(double gamma) {
  return {mat(1, 0, 0, std::sqrt(1 - gamma)), mat(0, std::sqrt(gamma), 0, 0)};
}

// Choi oracle from vectorized Kraus operators.
Matrix4 choi_from_kraus(const std::vector<Matrix2>& ops) {
  Matrix4 c = Matrix4::Zero();
  for (const auto& a : ops) {
    Eigen::Vector4cd v;
    for (int i = 0; i < 2; ++i)
      for (int r = 0; r < 2; ++r) v(2 * i + r) = a(r, i);
    c += v * v.adjoint();
  }
  return c;
}

double max_dev(const QubitTomogram& a, const QubitTomogram& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

double row_integral(const QubitKernel& k, const AngularGrid& g, const TomoPoint& x) {
  double s = 0.0;
  for (std::size_t kp = 0; kp < g.size(); ++kp) s += g.weight(kp) * k(x, g.point(kp));
  return s;
}

TomoPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(0.0, 2 * kPi), b(0.0, kPi);
  std::bernoulli_distribution coin;
  return {coin(rng) ? Spin::up : Spin::down, a(rng), b(rng)};
}

TEST(KernelSigma, AntipodalValueOfKz) {
  EXPECT_EQ(kernel_sigma(Axis::z, {Spin::up, 0, 0}, {Spin::up, 0, kPi}), -1.0);
  EXPECT_EQ(kernel_sigma(Axis::z, {Spin::down, 0, 0}, {Spin::down, 0, kPi}), -1.0);
}

TEST(KernelSigma, VanishesAcrossOutcomes) {
  std::mt19937_64 rng(1);
  for (int n = 0; n < 100; ++n) {
    auto x = random_point(rng);
    auto xp = random_point(rng);
    xp.m = x.m == Spin::up ? Spin::down : Spin::up;
    for (Axis a : kAxes) EXPECT_EQ(kernel_sigma(a, x, xp), 0.0);
    EXPECT_EQ(kernel_identity(x, xp), 0.0);
    EXPECT_EQ(kernel_general({0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}, x, xp), 0.0);
  }
}

TEST(KernelSigma, MatchesConjugationTraceFormula) {
  std::mt19937_64 rng(2);
  const Matrix2 paulis[] = {kSx, kSy, kSz};
  for (int n = 0; n < 300; ++n) {
    auto x = random_point(rng);
    auto xp = random_point(rng);
    xp.m = x.m;
    for (Axis a : kAxes) {
      EXPECT_NEAR(kernel_sigma(a, x, xp), kraus_kernel_oracle({paulis[static_cast<int>(a)]}, x, xp), 1e-14);
    }
  }
}

TEST(KernelSigma, KzRowsIntegrateToOne) {
  const AngularGrid g;
  const auto kz = QubitKernel::sigma(Axis::z);
  std::mt19937_64 rng(3);
  for (int n = 0; n < 50; ++n) EXPECT_NEAR(row_integral(kz, g, random_point(rng)), 1.0, 1e-12);
}

TEST(KernelGeneral, IdentityParametersReproduceInput) {
  const AngularGrid g;
  const auto k = QubitKernel::general({{0, 0, 0}, {1, 1, 1}});
  std::mt19937_64 rng(4);
  for (int n = 0; n < 20; ++n) {
    const auto w = sample_tomogram(sampling::random_state(rng), g);
    EXPECT_LT(max_dev(apply_kernel(k, w), w), 1e-12);
  }
}

TEST(KernelGeneral, ConstantMapToUpState) {
  const AngularGrid g;
  const auto k = QubitKernel::general({{0, 0, 1}, {0, 0, 0}});
  std::mt19937_64 rng(5);
  for (int n = 0; n < 20; ++n) {
    const auto out = apply_kernel(k, sample_tomogram(sampling::random_state(rng), g));
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto x = g.point(i);
      EXPECT_NEAR(out[i], 0.5 + spin_value(x.m) * std::cos(x.beta), 1e-12);
    }
  }
}

TEST(KernelGeneral, AmplitudeDampingOnDownState) {
  const AngularGrid g;
  const auto k = QubitKernel::general({{0, 0, 0.36}, {0.8, 0.8, 0.64}});
  const auto out = apply_kernel(k, sample_tomogram(DensityMatrix::from_matrix(mat(0, 0, 0, 1)), g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.point(i);
    EXPECT_NEAR(out[i], 0.5 - 0.28 * spin_value(x.m) * std::cos(x.beta), 1e-12);
  }
}

TEST(KernelFromKraus, IdentityIsReproducingKernel) {
  const auto id = KrausChannel::make({Matrix2::Identity()});
  std::mt19937_64 rng(6);
  for (int n = 0; n < 200; ++n) {
    auto x = random_point(rng);
    auto xp = random_point(rng);
    if (n % 2 == 0) xp.m = x.m;
    const double expect =
        x.m == xp.m ? (u_oracle(x) * (3.0 * u_oracle(xp) - Matrix2::Identity())).trace().real() : 0.0;
    EXPECT_NEAR(kernel_from_kraus(id, x, xp), expect, 1e-14);
    EXPECT_NEAR(kernel_identity(x, xp), expect, 1e-14);
  }
}

TEST(KernelFromKraus, SigmaZMatchesClosedForm) {
  const AngularGrid g;
  const auto kz = KrausChannel::make({kSz});
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      EXPECT_NEAR(kernel_from_kraus(kz, g.point(i), g.point(j)), kernel_sigma(Axis::z, g.point(i), g.point(j)),
                  1e-12);
}

TEST(KernelFromKraus, AmplitudeDampingMatchesGeneralKernel) {
  const AngularGrid g;
  const auto ad = KrausChannel::make(amplitude_damping(0.36));
  const auto c = extreme_point_channel(0.8, 0.8, 1);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      EXPECT_NEAR(kernel_from_kraus(ad, g.point(i), g.point(j)), kernel_general(c, g.point(i), g.point(j)),
                  1e-12);
}

TEST(KernelFromKraus, NonTracePreservingSetIsRejected) {
  EXPECT_THROW(KrausChannel::make({mat(1, 0, 0, 0.5)}), ParameterError);
}

TEST(ApplyKernel, SigmaZFlipsTransverseBlochComponents) {
  const AngularGrid g;
  const auto out = apply_kernel(QubitKernel::sigma(Axis::z), sample_tomogram(bloch_to_density({1, 0, 0}), g));
  EXPECT_LT(max_dev(out, sample_tomogram(bloch_to_density({-1, 0, 0}), g)), 1e-12);
}

TEST(ApplyKernel, IdentityKernelIsIdentity) {
  const AngularGrid g;
  const auto w = sample_tomogram(bloch_to_density({0.2, -0.4, 0.1}), g);
  EXPECT_LT(max_dev(apply_kernel(QubitKernel::identity(), w), w), 1e-12);
}

TEST(ApplyKernel, DepolarizingMixtureGivesHalf) {
  const AngularGrid g;
  const auto k = QubitKernel::pauli_mixture(PauliMixture::make(0.25, 0.25, 0.25, 0.25));
  const auto out = apply_kernel(k, sample_tomogram(bloch_to_density({0.6, -0.3, 0.7}), g));
  for (double v : out.values) EXPECT_NEAR(v, 0.5, 1e-12);
}

TEST(AngleInvolution, Examples) {
  const auto z = angle_involution(Axis::z, {Spin::up, 0, kPi / 2});
  EXPECT_NEAR(z.alpha, kPi, 1e-15);
  EXPECT_NEAR(z.beta, kPi / 2, 1e-15);
  const auto x = angle_involution(Axis::x, {Spin::down, 0, 0});
  EXPECT_EQ(x.m, Spin::down);
  EXPECT_NEAR(x.alpha, 0.0, 1e-15);
  EXPECT_NEAR(x.beta, kPi, 1e-15);
}

TEST(AngleInvolution, TwiceIsIdentity) {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 500; ++n) {
    const auto x = canonical(random_point(rng));
    for (Axis a : kAxes) {
      const auto back = angle_involution(a, angle_involution(a, x));
      EXPECT_LT(max_diff(dequantizer(back), dequantizer(x)), 1e-15);
      EXPECT_NEAR(std::remainder(back.alpha - x.alpha, 2 * kPi), 0.0, 1e-12);
      EXPECT_NEAR(back.beta, x.beta, 1e-12);
    }
  }
}

TEST(AngleInvolution, ConjugationIdentity) {
  std::mt19937_64 rng(8);
  const Matrix2 paulis[] = {kSx, kSy, kSz};
  for (int n = 0; n < 1000; ++n) {
    const auto x = random_point(rng);
    for (Axis a : kAxes) {
      const Matrix2& s = paulis[static_cast<int>(a)];
      EXPECT_LT(max_diff(s * u_oracle(x) * s, dequantizer(angle_involution(a, x))), 1e-15);
    }
  }
}

TEST(ChannelFromKernel, ReproducingKernelGivesIdentityChoi) {
  const auto c = channel_from_kernel(QubitKernel::identity());
  EXPECT_LT((c.entries - choi_from_kraus({Matrix2::Identity()})).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ChannelFromKernel, SigmaZGivesUnitaryChoi) {
  const auto c = channel_from_kernel(QubitKernel::sigma(Axis::z));
  EXPECT_LT((c.entries - choi_from_kraus({kSz})).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE(is_cp(c).completely_positive);
}

TEST(ChannelFromKernel, NonCpAffineKernelFailsCheck) {
  const auto c = channel_from_kernel(QubitKernel::general({{0, 0, 1.5}, {0, 0, 0}}));
  const auto r = is_cp(c, 1e-10);
  EXPECT_FALSE(r.completely_positive);
  EXPECT_NEAR(r.min_eigenvalue, -0.25, 1e-12);
}

TEST(ChannelFromKernel, MatchesChoiOfChannel) {
  std::mt19937_64 rng(9);
  for (int n = 0; n < 20; ++n) {
    const ChannelSpec spec = n % 2 ? ChannelSpec(sampling::random_kraus(rng)) : sampling::random_cp_affine(rng);
    const auto c = channel_from_kernel(kernel_of(spec));
    EXPECT_LT((c.entries - choi_of(spec).entries).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(KernelDiagnostics, SigmaZ) {
  const auto d = kernel_diagnostics(QubitKernel::sigma(Axis::z));
  EXPECT_LT(d.row_integral_max_dev, 1e-12);
  EXPECT_LT(d.trace_integral_max_dev, 1e-12);
  EXPECT_NEAR(d.min_value, -1.0, 1e-12);
  EXPECT_TRUE(d.completely_positive);
}

TEST(KernelDiagnostics, IdentityKernelMinimumAtAntipodes) {
  const auto d = kernel_diagnostics(QubitKernel::identity());
  EXPECT_NEAR(d.min_value, -1.0, 1e-12);
  EXPECT_EQ(d.min_x.m, d.min_xp.m);
  const auto n = direction(d.min_x.alpha, d.min_x.beta);
  const auto np = direction(d.min_xp.alpha, d.min_xp.beta);
  EXPECT_NEAR(n[0] * np[0] + n[1] * np[1] + n[2] * np[2], -1.0, 1e-12);
  EXPECT_TRUE(d.completely_positive);
}

TEST(KernelDiagnostics, AmplitudeDamping) {
  // Trace preservation holds for the output-side integral. The row integral
  // over x' equals 2 w_{Phi(I/2)}(x) = 1 + 2 m t_z cos(b), not 1.
  const auto d = kernel_diagnostics(QubitKernel::general(extreme_point_channel(0.8, 0.8, 1)));
  EXPECT_LT(d.trace_integral_max_dev, 1e-12);
  const AngularGrid g;
  double predicted = 0.0;
  for (int j = 0; j < g.beta_count(); ++j) predicted = std::max(predicted, 2 * 0.5 * 0.36 * std::abs(std::cos(g.beta(j))));
  EXPECT_NEAR(d.row_integral_max_dev, predicted, 1e-12);
  EXPECT_LT(d.min_value, 0.0);
  EXPECT_TRUE(d.completely_positive);
}

TEST(Properties, DualPathSweep) {
  std::mt19937_64 rng(10);
  const AngularGrid g;
  std::vector<ChannelSpec> channels;
  for (const auto& p : sampling::pauli_mesh()) channels.emplace_back(p);
  for (int n = 0; n < 50; ++n) channels.emplace_back(sampling::random_cp_affine(rng));
  for (int n = 0; n < 50; ++n) channels.emplace_back(sampling::random_kraus(rng, 1 + n % 3));
  ASSERT_EQ(channels.size(), 120u);
  std::vector<DensityMatrix> states;
  for (int n = 0; n < 20; ++n) states.push_back(sampling::random_state(rng));
  double worst = 0.0;
  for (const auto& ch : channels) {
    const auto k = kernel_of(ch);
    for (const auto& rho : states) {
      worst = std::max(worst, max_dev(apply_kernel(k, sample_tomogram(rho, g)),
                                      sample_tomogram(apply_channel(ch, rho), g)));
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Properties, UnitalRowAndTraceNormalization) {
  const AngularGrid g;
  std::vector<QubitKernel> unital{QubitKernel::identity(), QubitKernel::sigma(Axis::x),
                                  QubitKernel::sigma(Axis::y), QubitKernel::sigma(Axis::z),
                                  QubitKernel::pauli_mixture(PauliMixture::make(0.1, 0.2, 0.3, 0.4)),
                                  QubitKernel::general({{0, 0, 0}, {-0.3, 0.6, 0.9}})};
  for (const auto& k : unital) {
    EXPECT_LT(integral_max_dev(k, g, false), 1e-12) << k.description();
    EXPECT_LT(integral_max_dev(k, g, true), 1e-12) << k.description();
  }
  std::mt19937_64 rng(11);
  for (int n = 0; n < 20; ++n) {
    EXPECT_LT(integral_max_dev(QubitKernel::general(sampling::random_cp_affine(rng)), g, true), 1e-12);
    EXPECT_LT(integral_max_dev(QubitKernel::from_kraus(sampling::random_kraus(rng)), g, true), 1e-12);
  }
}

TEST(Properties, PauliMixtureKernelIsConvexCombination) {
  std::mt19937_64 rng(12);
  const auto p = PauliMixture::make(0.1, 0.2, 0.3, 0.4);
  for (int n = 0; n < 500; ++n) {
    auto x = random_point(rng);
    auto xp = random_point(rng);
    if (n % 4) xp.m = x.m;
    const double combo = 0.1 * kernel_identity(x, xp) + 0.2 * kernel_sigma(Axis::x, x, xp) +
                         0.3 * kernel_sigma(Axis::y, x, xp) + 0.4 * kernel_sigma(Axis::z, x, xp);
    EXPECT_DOUBLE_EQ(kernel_pauli_mixture(p, x, xp), combo);
  }
}

TEST(Properties, PauliKernelsAreNegativeSomewhere) {
  const auto pts = scan_points(ScanGrid{});
  ASSERT_EQ(pts.size(), 2u * 32u * 16u);
  for (Axis a : kAxes) {
    double lowest = 1.0;
    for (const auto& x : pts)
      for (const auto& xp : pts) lowest = std::min(lowest, kernel_sigma(a, x, xp));
    EXPECT_LE(lowest, -1.0 + 1e-12) << axis_name(a);
  }
}

TEST(KernelCsv, HeaderAndSize) {
  const AngularGrid g(4, 2);
  std::ostringstream os;
  write_kernel_csv(os, QubitKernel::sigma(Axis::x), g);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "m,alpha,beta,m2,alpha2,beta2,K");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 16 * 16);
}

}  // namespace
