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

#include <cmath>
#include <numbers>
#include <vector>

#include "qtomo/numerics.hpp"

namespace {

using namespace qtomo;
using num::QuadratureRule;

constexpr double kPi = std::numbers::pi;

// Sample moments of f on a uniform grid by the trapezoid rule.
struct SampleMoments {
  double mass = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

SampleMoments sample_moments(const std::vector<double>& f, const num::UniformGrid& g) {
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < g.count; ++i) {
    const double x = g.node(i);
    m0 += g.weight(i) * f[i];
    m1 += g.weight(i) * x * f[i];
    m2 += g.weight(i) * x * x * f[i];
  }
  const double mean = m1 / m0;
  return {m0, mean, m2 / m0 - mean * mean};
}

std::vector<double> sampled(const num::UniformGrid& g, double (*f)(double)) {
  std::vector<double> out(g.count);
  for (int i = 0; i < g.count; ++i) out[i] = f(g.node(i));
  return out;
}

double gauss_half(double x) { return std::exp(-x * x) / std::sqrt(kPi); }
double gauss_unit(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

TEST(GaussLegendre, SingleNode) {
  const auto r = num::gauss_legendre(1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.nodes[0], 0.0);
  EXPECT_EQ(r.weights[0], 2.0);
}

TEST(GaussLegendre, TwoNodesMatchTextbook) {
  const auto r = num::gauss_legendre(2);
  EXPECT_NEAR(r.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(r.weights[1], 1.0, 1e-15);
  EXPECT_NEAR(r.integrate([](double x) { return x * x; }), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.integrate([](double x) { return x * x * x; }), 0.0, 1e-15);
}

TEST(GaussLegendre, FourNodesIntegrateSixthPower) {
  const auto r = num::gauss_legendre(4);
  EXPECT_NEAR(r.integrate([](double x) { return std::pow(x, 6); }), 2.0 / 7.0, 1e-14);
}

TEST(GaussLegendre, ExactUpToDegreeTwoNMinusOneOnShiftedInterval) {
  const double a = -0.5, b = 2.5;
  for (int n = 1; n <= 12; ++n) {
    const auto r = num::gauss_legendre(n, a, b);
    double total = 0.0;
    for (double w : r.weights) {
      EXPECT_GT(w, 0.0);
      total += w;
    }
    EXPECT_NEAR(total, b - a, 1e-14) << "n=" << n;
    for (int d = 0; d <= 2 * n - 1; ++d) {
      const double exact = (std::pow(b, d + 1) - std::pow(a, d + 1)) / (d + 1);
      const double got = r.integrate([d](double x) { return std::pow(x, d); });
      EXPECT_NEAR(got, exact, 1e-12 * std::max(1.0, std::abs(exact))) << "n=" << n << " d=" << d;
    }
  }
}

TEST(GaussLegendre, RejectsEmptyRule) { EXPECT_THROW(num::gauss_legendre(0), ParameterError); }

TEST(PeriodicTrapezoid, ExactForLowTrigonometricDegree) {
  const auto r = num::periodic_trapezoid(8);
  EXPECT_NEAR(r.integrate([](double) { return 1.0; }), 2.0 * kPi, 1e-14);
  EXPECT_NEAR(r.integrate([](double a) { return std::cos(a) * std::cos(a); }), kPi, 1e-14);
  EXPECT_NEAR(r.integrate([](double a) { return std::sin(3 * a) * std::cos(2 * a); }), 0.0, 1e-14);
}

TEST(GaussianConvolve, NearDeltaReproducesInput) {
  const num::UniformGrid g{-8.0, 8.0, 401};
  const auto f = sampled(g, gauss_half);
  const auto out = num::gaussian_convolve(f, 1.0, 1e-4, g);
  double dev = 0.0;
  for (int i = 0; i < g.count; ++i) dev = std::max(dev, std::abs(out.values[i] - f[i]));
  EXPECT_LT(dev, 1e-3);
  EXPECT_FALSE(out.truncated);
}

TEST(GaussianConvolve, UnitVarianceWithUnitNoiseDoublesVariance) {
  const num::UniformGrid g{-12.0, 12.0, 601};
  const auto out = num::gaussian_convolve(sampled(g, gauss_unit), 1.0, 1.0, g);
  double dev = 0.0;
  for (int i = 0; i < g.count; ++i) {
    const double x = g.node(i);
    dev = std::max(dev, std::abs(out.values[i] - std::exp(-x * x / 4.0) / std::sqrt(4.0 * kPi)));
  }
  EXPECT_LT(dev, 1e-10);
  const auto m = sample_moments(out.values, g);
  EXPECT_NEAR(m.variance, 2.0, 1e-8);
}

TEST(GaussianConvolve, ScaledMomentLaw) {
  // variance 1/2 scaled by k = 2 plus noise 0.5 gives 2.5. The grid is wide
  // enough for the output to decay below 1e-12 at the edges.
  const num::UniformGrid g{-16.0, 16.0, 1281};
  const auto out = num::gaussian_convolve(sampled(g, gauss_half), 2.0, 0.5, g);
  const auto m = sample_moments(out.values, g);
  EXPECT_NEAR(m.mass, 1.0, 1e-8);
  EXPECT_NEAR(m.mean, 0.0, 1e-12);
  EXPECT_NEAR(m.variance, 2.5, 1e-8);
}

TEST(GaussianConvolve, MassConservedAtUnitGain) {
  const num::UniformGrid g{-14.0, 14.0, 701};
  std::vector<double> f(g.count);
  for (int i = 0; i < g.count; ++i) {
    const double x = g.node(i);
    f[i] = (2.0 / std::sqrt(kPi)) * x * x * std::exp(-x * x);
  }
  double before = 0.0;
  for (int i = 0; i < g.count; ++i) before += g.weight(i) * f[i];
  for (double alpha : {0.05, 0.5, 1.0}) {
    const auto out = num::gaussian_convolve(f, 1.0, alpha, g);
    double after = 0.0;
    for (int i = 0; i < g.count; ++i) after += g.weight(i) * out.values[i];
    EXPECT_NEAR(after, before, 1e-10) << "alpha=" << alpha;
  }
}

TEST(GaussianConvolve, FlagsInputThatDoesNotDecay) {
  const num::UniformGrid g{-4.0, 4.0, 81};
  const std::vector<double> flat(g.count, 0.125);
  const auto out = num::gaussian_convolve(flat, 1.0, 0.5, g);
  EXPECT_TRUE(out.truncated);
  EXPECT_DOUBLE_EQ(out.edge_magnitude, 0.125);
}

TEST(GaussianConvolve, RejectsBadParameters) {
  const num::UniformGrid g{-1.0, 1.0, 11};
  const std::vector<double> f(g.count, 0.0);
  EXPECT_THROW(num::gaussian_convolve(f, 1.0, 0.0, g), ParameterError);
  EXPECT_THROW(num::gaussian_convolve(f, -1.0, 1.0, g), ParameterError);
  EXPECT_THROW(num::gaussian_convolve(std::vector<double>(3), 1.0, 1.0, g), GridError);
}

TEST(FourierLineTransform, GaussianAtOrigin) {
  const auto r = num::fourier_line_transform([](double t) { return complex(std::exp(-t * t / 4.0)); },
                                             0.0, 12.0, 0.05);
  EXPECT_NEAR(r.value.real(), 1.0 / std::sqrt(kPi), 1e-12);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-12);
  EXPECT_FALSE(r.truncated);
}

TEST(FourierLineTransform, ShiftTheorem) {
  const auto f = [](double t) { return std::polar(std::exp(-t * t / 4.0), 2.0 * t); };
  const auto r = num::fourier_line_transform(f, 2.0, 12.0, 0.05);
  EXPECT_NEAR(r.value.real(), 1.0 / std::sqrt(kPi), 1e-12);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-12);
}

TEST(FourierLineTransform, NonDecayingInputIsFlagged) {
  const auto r = num::fourier_line_transform([](double) { return complex(1.0); }, 0.3, 12.0, 0.05);
  EXPECT_TRUE(r.truncated);
  EXPECT_DOUBLE_EQ(r.edge_magnitude, 1.0);
  // The truncated transform is the Dirichlet-like kernel sin(Tx)/(pi x), not a delta.
  EXPECT_NEAR(r.value.real(), std::sin(12.0 * 0.3) / (kPi * 0.3), 0.05);
}

TEST(FourierLineTransform, RealSymmetricInputGivesRealOutput) {
  const auto f = [](double t) { return complex((1.0 - t * t / 2.0) * std::exp(-t * t / 4.0)); };
  for (double x : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
    EXPECT_LT(std::abs(num::fourier_line_transform(f, x, 12.0, 0.05).value.imag()), 1e-12);
  }
}

TEST(HermitianEigenvalues, TwoByTwoMatchesCharacteristicPolynomial) {
  Eigen::Matrix2cd m;
  m << 0.7, complex(0.2, -0.1), complex(0.2, 0.1), 0.3;
  const auto ev = num::hermitian_eigenvalues(m);
  // Roots of l^2 - tr l + det.
  const double tr = 1.0, det = 0.7 * 0.3 - (0.04 + 0.01);
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  EXPECT_NEAR(ev[0], 0.5 * (tr - disc), 1e-15);
  EXPECT_NEAR(ev[1], 0.5 * (tr + disc), 1e-15);
}

TEST(HermitianEigenvalues, FourByFourRecoversRotatedSpectrum) {
  // U diag(d) U^dag with U a product of two commuting-free rotations.
  const Eigen::Vector4d d(-0.25, 0.0, 0.5, 1.75);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  const double c = std::cos(0.4), s = std::sin(0.4);
  Eigen::Matrix4cd r1 = Eigen::Matrix4cd::Identity();
  r1(0, 0) = c;
  r1(0, 2) = complex(0.0, -s);
  r1(2, 0) = complex(0.0, -s);
  r1(2, 2) = c;
  Eigen::Matrix4cd r2 = Eigen::Matrix4cd::Identity();
  r2(1, 1) = c;
  r2(1, 3) = -s;
  r2(3, 1) = s;
  r2(3, 3) = c;
  u = r1 * r2;
  const Eigen::Matrix4cd m = u * d.cast<complex>().asDiagonal() * u.adjoint();
  const auto ev = num::hermitian_eigenvalues(m);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev[i], d(i), 1e-14);
}

}  // namespace
