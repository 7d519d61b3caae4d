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

#ifndef QTOMO_PLANE_HPP_
#define QTOMO_PLANE_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <ostream>
#include <vector>

#include "qtomo/bosonic.hpp"
#include "qtomo/errors.hpp"
#include "qtomo/numerics.hpp"

namespace qtomo::boson {

/// Omega(r cos phi, r sin phi) = 2 omega(r, phi) / r on the polar grid
/// r_i in (0, R] (positive half of the tomogram's x-grid) times the phase
/// grid. Each ray carries half of the tomogram's mass, so the factor 2 makes
/// (1/2pi) \int\int Omega dx dy = 1.
class PlaneDistribution {
 public:
  PlaneDistribution() = default;
  PlaneDistribution(double step, int radial_count, int phi_count)
      : step_(step),
        radial_count_(radial_count),
        phi_count_(phi_count),
        values_(static_cast<std::size_t>(radial_count) * phi_count, 0.0),
        origin_(phi_count, 0.0) {}

  int radial_count() const { return radial_count_; }
  int phi_count() const { return phi_count_; }
  double radius(int i) const { return (i + 1) * step_; }  // i = 0 .. radial_count-1
  double step() const { return step_; }
  double phi(int j) const { return num::two_pi * j / phi_count_; }

  double& at(int i, int j) { return values_[static_cast<std::size_t>(j) * radial_count_ + i]; }
  double at(int i, int j) const { return values_[static_cast<std::size_t>(j) * radial_count_ + i]; }

  // lim_{r -> 0} r Omega(r, phi_j).
  double& origin_limit(int j) { return origin_[j]; }
  double origin_limit(int j) const { return origin_[j]; }

  // r Omega on the closed radial grid [0, R]; node 0 is the origin limit.
  double radial_weighted(int node, int j) const {
    return node == 0 ? origin_[j] : radius(node - 1) * at(node - 1, j);
  }
  double radial_weight(int node) const {
    return (node == 0 || node == radial_count_) ? 0.5 * step_ : step_;
  }

  const std::vector<double>& values() const { return values_; }

  bool truncated = false;
  double boundary_mass = 0.0;

 private:
  double step_ = 0.0;
  int radial_count_ = 0;
  int phi_count_ = 0;
  std::vector<double> values_;
  std::vector<double> origin_;
};

// Index of the x = 0 node of a symmetric, odd-sized grid.
inline int origin_index(const num::UniformGrid& x) {
  if (x.count % 2 == 0 || std::abs(x.lower + x.upper) > 1e-12 * x.upper) {
    throw GridError("plane representation needs a symmetric x-grid with a node at 0");
  }
  return (x.count - 1) / 2;
}

inline PlaneDistribution plane_distribution(const OpticalTomogram& w) {
  const auto& g = w.grid();
  const int c = origin_index(g.x);
  const int radial = g.x.count - 1 - c;
  PlaneDistribution out(g.x.step(), radial, g.phi_count);
  for (int j = 0; j < g.phi_count; ++j) {
    out.origin_limit(j) = 2.0 * w.at(c, j);
    for (int i = 0; i < radial; ++i) out.at(i, j) = 2.0 * w.at(c + 1 + i, j) / out.radius(i);
  }
  return out;
}

/// (1/2pi) \int\int Omega dx dy = (1/2pi) \int dphi \int r Omega dr.
inline double normalization(const PlaneDistribution& p) {
  double total = 0.0;
  for (int j = 0; j < p.phi_count(); ++j) {
    double radial = 0.0;
    for (int node = 0; node <= p.radial_count(); ++node)
      radial += p.radial_weight(node) * p.radial_weighted(node, j);
    total += radial;
  }
  return total * (num::two_pi / p.phi_count()) / num::two_pi;
}

inline double min_value(const PlaneDistribution& p) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : p.values()) m = std::min(m, v);
  return m;
}

/// F(t cos phi, t sin phi) = (1/2) \int_0^inf r [e^{itr} Omega(r, phi) + e^{-itr} Omega(r, phi + pi)] dr
/// at phase node j. The opposite ray supplies the x < 0 half of the line.
inline complex charfn_from_plane(const PlaneDistribution& p, double t, int j) {
  if (p.phi_count() % 2 != 0) throw GridError("plane charfn needs an even phase count");
  const int opposite = (j + p.phi_count() / 2) % p.phi_count();
  complex sum = 0.0;
  for (int node = 0; node <= p.radial_count(); ++node) {
    const double r = node * p.step();
    sum += p.radial_weight(node) * (std::polar(p.radial_weighted(node, j), t * r) +
                                    std::polar(p.radial_weighted(node, opposite), -t * r));
  }
  return 0.5 * sum;
}

/// Gaussian channel acting directly on Omega:
///   Omega'(rho, phi) = (2 pi alpha)^(-1/2) / rho \int_0^inf r [e^{-(rho - kr)^2/2alpha} Omega(r, phi_s)
///                                                + e^{-(rho + kr)^2/2alpha} Omega(r, phi_s + pi)] dr
/// where phi_s = phi (covariant) or -phi (contravariant, i.e. (x, y) -> (x, -y)).
inline PlaneDistribution apply_plane_channel(const PlaneDistribution& p,
                                             const GaussianChannelParams& params,
                                             const NumericsConfig& config = default_config()) {
  validate(params);
  if (p.phi_count() % 2 != 0) throw GridError("plane channel needs an even phase count");
  const int n_phi = p.phi_count();
  const double k = params.k;
  const double alpha = params.alpha;
  PlaneDistribution out(p.step(), p.radial_count(), n_phi);
  for (int j = 0; j < n_phi; ++j) {
    const int src = params.kind == ChannelKind::covariant ? j : (n_phi - j) % n_phi;
    const int opp = (src + n_phi / 2) % n_phi;
    for (int out_node = 0; out_node <= p.radial_count(); ++out_node) {
      const double rho = out_node * p.step();
      double sum = 0.0;
      for (int node = 0; node <= p.radial_count(); ++node) {
        const double r = node * p.step();
        sum += p.radial_weight(node) *
               (num::gaussian_density(rho - k * r, alpha) * p.radial_weighted(node, src) +
                num::gaussian_density(rho + k * r, alpha) * p.radial_weighted(node, opp));
      }
      if (out_node == 0) {
        out.origin_limit(j) = sum;
      } else {
        out.at(out_node - 1, j) = sum / rho;
      }
    }
  }
  out.boundary_mass = std::abs(1.0 - normalization(out));
  out.truncated = out.boundary_mass > config.boundary_mass_threshold;
  return out;
}

inline double max_abs_difference(const PlaneDistribution& a, const PlaneDistribution& b) {
  if (a.values().size() != b.values().size()) throw GridError("plane distributions differ in shape");
  double dev = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    dev = std::max(dev, std::abs(a.values()[i] - b.values()[i]));
  for (int j = 0; j < a.phi_count(); ++j)
    dev = std::max(dev, std::abs(a.origin_limit(j) - b.origin_limit(j)));
  return dev;
}

/// CSV with header x,y,Omega over the polar nodes (r > 0).
inline void write_csv(std::ostream& os, const PlaneDistribution& p) {
  const auto old = os.precision(17);
  os << "x,y,Omega\n";
  for (int j = 0; j < p.phi_count(); ++j) {
    const double c = std::cos(p.phi(j));
    const double s = std::sin(p.phi(j));
    for (int i = 0; i < p.radial_count(); ++i) {
      os << p.radius(i) * c << ',' << p.radius(i) * s << ',' << p.at(i, j) << '\n';
    }
  }
  os.precision(old);
}

}  // namespace qtomo::boson

#endif  // QTOMO_PLANE_HPP_
