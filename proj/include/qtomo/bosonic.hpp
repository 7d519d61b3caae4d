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

#ifndef QTOMO_BOSONIC_HPP_
#define QTOMO_BOSONIC_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qtomo/errors.hpp"
#include "qtomo/numerics.hpp"

// Conventions: [Q, P] = i, vacuum quadrature variance 1/2,
// F(q, p) = Tr(rho exp(i(qQ + pP))), X_phi = cos(phi) Q + sin(phi) P.
namespace qtomo::boson {

struct Vacuum {};
struct Coherent {
  double q = 0.0;  // <Q>
  double p = 0.0;  // <P>
};
struct Thermal {
  double mean_photons = 0.0;
};
struct Fock {
  int n = 0;
};
// The quadrature cos(theta) Q + sin(theta) P has variance e^{-2r}/2, the
// orthogonal one e^{2r}/2.
struct Squeezed {
  double r = 0.0;
  double theta = 0.0;
};

using BosonicState = std::variant<Vacuum, Coherent, Thermal, Fock, Squeezed>;

inline constexpr int kMaxFockNumber = 10;

inline void validate(const BosonicState& state) {
  if (const auto* t = std::get_if<Thermal>(&state); t && !(t->mean_photons >= 0.0)) {
    throw InvalidState("thermal state needs mean photon number >= 0");
  }
  if (const auto* f = std::get_if<Fock>(&state); f && (f->n < 0 || f->n > kMaxFockNumber)) {
    throw InvalidState("Fock number must be in [0, " + std::to_string(kMaxFockNumber) + "]");
  }
}

/// Laguerre polynomial L_n(x) by recurrence.
inline double laguerre(int n, double x) {
  if (n == 0) return 1.0;
  double l0 = 1.0;
  double l1 = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double l2 = ((2.0 * k + 1.0 - x) * l1 - k * l0) / (k + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

class CharacteristicFn {
 public:
  using Evaluator = std::function<complex(double, double)>;

  explicit CharacteristicFn(Evaluator f) : f_(std::move(f)) {}

  complex operator()(double q, double p) const { return f_(q, p); }

 private:
  Evaluator f_;
};

namespace detail {

struct GaussianMoments {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double vqq = 0.5;
  double vqp = 0.0;
  double vpp = 0.5;
};

inline CharacteristicFn gaussian_charfn(const GaussianMoments& g) {
  return CharacteristicFn([g](double q, double p) {
    const double quad = g.vqq * q * q + 2.0 * g.vqp * q * p + g.vpp * p * p;
    return std::polar(std::exp(-0.5 * quad), q * g.mean_q + p * g.mean_p);
  });
}

}  // namespace detail

inline CharacteristicFn char_fn(const BosonicState& state) {
  validate(state);
  struct Make {
    CharacteristicFn operator()(const Vacuum&) const { return detail::gaussian_charfn({}); }
    CharacteristicFn operator()(const Coherent& c) const {
      return detail::gaussian_charfn({c.q, c.p, 0.5, 0.0, 0.5});
    }
    CharacteristicFn operator()(const Thermal& t) const {
      const double v = t.mean_photons + 0.5;
      return detail::gaussian_charfn({0.0, 0.0, v, 0.0, v});
    }
    CharacteristicFn operator()(const Fock& f) const {
      const int n = f.n;
      return CharacteristicFn([n](double q, double p) {
        const double s = q * q + p * p;
        return complex(std::exp(-0.25 * s) * laguerre(n, 0.5 * s), 0.0);
      });
    }
    CharacteristicFn operator()(const Squeezed& s) const {
      const double lo = 0.5 * std::exp(-2.0 * s.r);
      const double hi = 0.5 * std::exp(2.0 * s.r);
      const double c = std::cos(s.theta);
      const double sn = std::sin(s.theta);
      return detail::gaussian_charfn(
          {0.0, 0.0, lo * c * c + hi * sn * sn, (lo - hi) * c * sn, lo * sn * sn + hi * c * c});
    }
  };
  return std::visit(Make{}, state);
}

/// Quadrature line x in [lower, upper] (uniform) times the phase circle
/// phi_j = 2 pi j / phi_count.
struct TomogramGrid {
  num::UniformGrid x{-8.0, 8.0, 401};
  int phi_count = 64;

  double phi(int j) const { return num::two_pi * j / phi_count; }
  double phi_step() const { return num::two_pi / phi_count; }
};

inline void validate(const TomogramGrid& grid) {
  num::validate(grid.x);
  if (grid.phi_count < 1) throw GridError("phase grid needs at least one node");
}

/// omega(x, phi) sampled on a TomogramGrid, stored phase-major.
class OpticalTomogram {
 public:
  OpticalTomogram() = default;
  explicit OpticalTomogram(TomogramGrid grid)
      : grid_(grid), values_(static_cast<std::size_t>(grid.phi_count) * grid.x.count, 0.0) {}

  const TomogramGrid& grid() const { return grid_; }

  double& at(int ix, int jphi) { return values_[index(ix, jphi)]; }
  double at(int ix, int jphi) const { return values_[index(ix, jphi)]; }

  std::span<double> slice(int jphi) {
    return {values_.data() + static_cast<std::size_t>(jphi) * grid_.x.count,
            static_cast<std::size_t>(grid_.x.count)};
  }
  std::span<const double> slice(int jphi) const {
    return {values_.data() + static_cast<std::size_t>(jphi) * grid_.x.count,
            static_cast<std::size_t>(grid_.x.count)};
  }
  const std::vector<double>& values() const { return values_; }

  // Diagnostics from whichever transform produced the samples.
  double max_imag_residue = 0.0;
  double edge_magnitude = 0.0;
  bool truncated = false;

 private:
  std::size_t index(int ix, int jphi) const {
    return static_cast<std::size_t>(jphi) * grid_.x.count + ix;
  }

  TomogramGrid grid_;
  std::vector<double> values_;
};

/// omega(x, phi) = (1/2pi) \int e^{-ixt} F(t cos phi, t sin phi) dt by the
/// trapezoid rule on [-T, T]. Flags F that has not decayed at |t| = T.
inline OpticalTomogram tomogram_from_charfn(const CharacteristicFn& f,
                                            const TomogramGrid& grid = TomogramGrid(),
                                            const NumericsConfig& config = default_config()) {
  validate(grid);
  const double half_width = config.fourier_half_width;
  const num::FourierLine probe([](double) { return complex(0.0); }, half_width, config.fourier_step);
  const num::UniformGrid& tg = probe.grid();

  // phase[i, n] = w_n e^{-i x_i t_n} / 2pi
  Eigen::MatrixXcd phase(grid.x.count, tg.count);
  for (int i = 0; i < grid.x.count; ++i)
    for (int n = 0; n < tg.count; ++n)
      phase(i, n) = (tg.weight(n) / num::two_pi) * std::polar(1.0, -grid.x.node(i) * tg.node(n));

  Eigen::MatrixXcd samples(tg.count, grid.phi_count);
  double edge = 0.0;
  for (int j = 0; j < grid.phi_count; ++j) {
    const double c = std::cos(grid.phi(j));
    const double s = std::sin(grid.phi(j));
    for (int n = 0; n < tg.count; ++n) samples(n, j) = f(tg.node(n) * c, tg.node(n) * s);
    edge = std::max({edge, std::abs(samples(0, j)), std::abs(samples(tg.count - 1, j))});
  }
  const Eigen::MatrixXcd result = phase * samples;

  OpticalTomogram out(grid);
  for (int j = 0; j < grid.phi_count; ++j) {
    for (int i = 0; i < grid.x.count; ++i) {
      out.at(i, j) = result(i, j).real();
      out.max_imag_residue = std::max(out.max_imag_residue, std::abs(result(i, j).imag()));
    }
  }
  out.edge_magnitude = edge;
  out.truncated = edge > config.truncation_threshold;
  return out;
}

inline int phase_index(const TomogramGrid& grid, double phi) {
  double r = std::fmod(phi, num::two_pi);
  if (r < 0.0) r += num::two_pi;
  const int j = static_cast<int>(std::lround(r / grid.phi_step())) % grid.phi_count;
  double gap = std::abs(r - grid.phi(j));
  gap = std::min(gap, num::two_pi - gap);
  if (gap > 1e-9) throw GridError("phase " + std::to_string(phi) + " is not a grid node");
  return j;
}

/// F(t cos phi, t sin phi) = \int e^{itx} omega(x, phi) dx on the x-grid.
/// phi must be a grid node and |t| at most the Nyquist bound pi / dx.
inline complex charfn_from_tomogram(const OpticalTomogram& w, double t, double phi) {
  const auto& g = w.grid();
  const double nyquist = num::pi / g.x.step();
  if (std::abs(t) > nyquist) {
    throw ParameterError("|t| = " + std::to_string(std::abs(t)) + " exceeds the grid limit " +
                         std::to_string(nyquist));
  }
  const int j = phase_index(g, phi);
  const auto slice = w.slice(j);
  complex sum = 0.0;
  for (int i = 0; i < g.x.count; ++i) sum += g.x.weight(i) * slice[i] * std::polar(1.0, t * g.x.node(i));
  return sum;
}

enum class ChannelKind { covariant, contravariant };

inline const char* kind_name(ChannelKind kind) {
  return kind == ChannelKind::covariant ? "covariant" : "contravariant";
}

struct GaussianChannelParams {
  ChannelKind kind = ChannelKind::covariant;
  double k = 0.0;      // gain
  double alpha = 0.5;  // added noise

  /// Smallest admissible alpha for this kind and gain.
  double noise_bound() const {
    return kind == ChannelKind::covariant ? std::abs(k * k - 1.0) / 2.0 : (k * k + 1.0) / 2.0;
  }
};

/// Covariant: k >= 0, k != 1, alpha >= |k^2-1|/2.
/// Contravariant: k >= 0, alpha >= (k^2+1)/2.
inline void validate(const GaussianChannelParams& params) {
  if (!(params.k >= 0.0)) throw ParameterError("channel constraint violated: k >= 0");
  if (params.kind == ChannelKind::covariant && params.k == 1.0) {
    throw ParameterError("channel constraint violated: k != 1 for covariant channels");
  }
  const double bound = params.noise_bound();
  if (!(params.alpha >= bound - 1e-12)) {
    const std::string rule =
        params.kind == ChannelKind::covariant ? "alpha >= |k^2-1|/2" : "alpha >= (k^2+1)/2";
    throw ParameterError("channel constraint violated: " + rule + " (alpha=" +
                         std::to_string(params.alpha) + ", bound=" + std::to_string(bound) + ")");
  }
}

/// F(q, p) -> F(kq, +-kp) exp(-alpha (q^2 + p^2) / 2); the sign is - for the
/// contravariant channel.
inline CharacteristicFn apply_gaussian_channel_direct(const CharacteristicFn& f,
                                                      const GaussianChannelParams& params) {
  validate(params);
  const double sign = params.kind == ChannelKind::covariant ? 1.0 : -1.0;
  const double k = params.k;
  const double alpha = params.alpha;
  return CharacteristicFn([f, sign, k, alpha](double q, double p) {
    return f(k * q, sign * k * p) * std::exp(-0.5 * alpha * (q * q + p * p));
  });
}

/// Phase index read by output phase j: the same phase for the covariant
/// channel, the reflected phase -phi for the contravariant one
/// (F(kq, -kp) on the ray at phi is F on the ray at -phi).
inline int source_phase(const TomogramGrid& grid, ChannelKind kind, int j) {
  return kind == ChannelKind::covariant ? j : (grid.phi_count - j) % grid.phi_count;
}

/// Kernel path: omega'(x, phi) = (2 pi alpha)^(-1/2) \int e^{-(x-kx')^2/2alpha} omega(x', phi_s) dx'.
inline OpticalTomogram apply_gaussian_kernel(const OpticalTomogram& w,
                                             const GaussianChannelParams& params,
                                             double edge_threshold = 1e-12) {
  validate(params);
  const auto& grid = w.grid();
  OpticalTomogram out(grid);
  for (int j = 0; j < grid.phi_count; ++j) {
    const auto conv = num::gaussian_convolve(w.slice(source_phase(grid, params.kind, j)), params.k,
                                             params.alpha, grid.x, edge_threshold);
    std::copy(conv.values.begin(), conv.values.end(), out.slice(j).begin());
    out.edge_magnitude = std::max(out.edge_magnitude, conv.edge_magnitude);
    out.truncated = out.truncated || conv.truncated;
  }
  return out;
}

struct KernelMarginals {
  double output_integral = 0.0;              // \int K dx dphi
  std::optional<double> input_integral;      // \int K dx' dphi'; empty when divergent (k = 0)
};

/// Marginals of K(x, phi; x', phi') at the anchor (x, x'), each by a fine
/// trapezoid over +-12 standard deviations of the Gaussian factor. The phase
/// delta integrates to 1 on either side.
inline KernelMarginals kernel_marginals(const GaussianChannelParams& params, double anchor = 0.7) {
  validate(params);
  const double alpha = params.alpha;
  const double k = params.k;
  const double sigma = std::sqrt(alpha);
  const int n = 4001;
  KernelMarginals m;
  {
    const double centre = k * anchor;
    const auto rule = num::trapezoid(centre - 12.0 * sigma, centre + 12.0 * sigma, n);
    m.output_integral = rule.integrate(
        [&](double x) { return num::gaussian_density(x - k * anchor, alpha); });
  }
  if (k > 0.0) {
    const double centre = anchor / k;
    const double width = 12.0 * sigma / k;
    const auto rule = num::trapezoid(centre - width, centre + width, n);
    m.input_integral = rule.integrate(
        [&](double xp) { return num::gaussian_density(anchor - k * xp, alpha); });
  }
  return m;
}

struct Moments {
  double mass = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

/// Trapezoid moments of the phase slice j.
inline Moments moments(const OpticalTomogram& w, int j) {
  const auto& g = w.grid().x;
  const auto s = w.slice(j);
  Moments m;
  double first = 0.0;
  double second = 0.0;
  for (int i = 0; i < g.count; ++i) {
    const double x = g.node(i);
    m.mass += g.weight(i) * s[i];
    first += g.weight(i) * x * s[i];
    second += g.weight(i) * x * x * s[i];
  }
  m.mean = first / m.mass;
  m.variance = second / m.mass - m.mean * m.mean;
  return m;
}

/// max_phi |\int omega(x, phi) dx - 1|.
inline double normalization_max_dev(const OpticalTomogram& w) {
  double dev = 0.0;
  for (int j = 0; j < w.grid().phi_count; ++j) dev = std::max(dev, std::abs(moments(w, j).mass - 1.0));
  return dev;
}

/// max |omega(x, phi + pi) - omega(-x, phi)|; needs an even phase count and a
/// symmetric x-grid.
inline double reflection_max_dev(const OpticalTomogram& w) {
  const auto& g = w.grid();
  if (g.phi_count % 2 != 0) throw GridError("reflection check needs an even phase count");
  double dev = 0.0;
  const int half = g.phi_count / 2;
  for (int j = 0; j < g.phi_count; ++j)
    for (int i = 0; i < g.x.count; ++i)
      dev = std::max(dev, std::abs(w.at(i, (j + half) % g.phi_count) - w.at(g.x.count - 1 - i, j)));
  return dev;
}

inline double min_value(const OpticalTomogram& w) {
  return *std::min_element(w.values().begin(), w.values().end());
}

inline double max_abs_difference(const OpticalTomogram& a, const OpticalTomogram& b) {
  if (a.values().size() != b.values().size()) throw GridError("tomograms are on different grids");
  double dev = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    dev = std::max(dev, std::abs(a.values()[i] - b.values()[i]));
  return dev;
}

/// CSV with header x,phi,omega, phase-major.
inline void write_csv(std::ostream& os, const OpticalTomogram& w) {
  const auto old = os.precision(17);
  os << "x,phi,omega\n";
  const auto& g = w.grid();
  for (int j = 0; j < g.phi_count; ++j)
    for (int i = 0; i < g.x.count; ++i) os << g.x.node(i) << ',' << g.phi(j) << ',' << w.at(i, j) << '\n';
  os.precision(old);
}

}  // namespace qtomo::boson

#endif  // QTOMO_BOSONIC_HPP_
