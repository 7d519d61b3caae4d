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

#ifndef QTOMO_VERIFY_HPP_
#define QTOMO_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtomo/bosonic.hpp"
#include "qtomo/plane.hpp"
#include "qtomo/qubit_kernels.hpp"
#include "qtomo/qubit_state.hpp"
#include "qtomo/qubit_tomography.hpp"
#include "qtomo/sampling.hpp"

namespace qtomo {

enum class Comparison { at_most, at_least, less_than, equal };

struct Check {
  std::string name;
  int criterion = 0;
  double measured = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::at_most;
  bool pass = false;
};

struct RunReport {
  std::string suite;
  std::vector<Check> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  void add(std::string name, int criterion, double measured, double threshold, Comparison cmp) {
    bool ok = false;
    switch (cmp) {
      case Comparison::at_most: ok = measured <= threshold; break;
      case Comparison::at_least: ok = measured >= threshold; break;
      case Comparison::less_than: ok = measured < threshold; break;
      case Comparison::equal: ok = measured == threshold; break;
    }
    checks.push_back({std::move(name), criterion, measured, threshold, cmp, ok});
  }
};

inline const char* comparison_symbol(Comparison c) {
  switch (c) {
    case Comparison::at_most: return "<=";
    case Comparison::at_least: return ">=";
    case Comparison::less_than: return "<";
    case Comparison::equal: return "==";
  }
  return "?";
}

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"criterion", c.criterion},
                      {"measured", c.measured},
                      {"threshold", c.threshold},
                      {"comparison", comparison_symbol(c.comparison)},
                      {"pass", c.pass}});
  }
  return {{"suite", r.suite}, {"checks", checks}, {"pass", r.pass()}};
}

namespace verify_detail {

using namespace qubit;

inline double max_entry(const Matrix2& m) { return m.cwiseAbs().maxCoeff(); }

inline void qubit_checks(RunReport& report) {
  std::mt19937_64 rng(20240611);
  const AngularGrid grid;

  // 1. reconstruction round trip
  {
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
      const auto rho = sampling::random_state(rng);
      const Matrix2 back = reconstruct_operator(sample_tomogram(rho, grid));
      worst = std::max(worst, max_entry(back - rho.matrix()));
    }
    report.add("round_trip_max_entry_error", 1, worst, 1e-12, Comparison::at_most);
  }

  // 2. kernel path vs direct path
  {
    std::vector<ChannelSpec> channels;
    for (const auto& p : sampling::pauli_mesh()) channels.emplace_back(p);
    for (int n = 0; n < 50; ++n) channels.emplace_back(sampling::random_cp_affine(rng));
    for (int n = 0; n < 50; ++n) channels.emplace_back(sampling::random_kraus(rng));
    std::vector<DensityMatrix> states;
    for (int n = 0; n < 20; ++n) states.push_back(sampling::random_state(rng));
    double worst = 0.0;
    for (const auto& ch : channels) {
      const auto kernel = kernel_of(ch);
      for (const auto& rho : states) {
        const auto via_kernel = apply_kernel(kernel, sample_tomogram(rho, grid));
        const auto direct = sample_tomogram(apply_channel(ch, rho), grid);
        for (std::size_t k = 0; k < grid.size(); ++k)
          worst = std::max(worst, std::abs(via_kernel[k] - direct[k]));
      }
    }
    report.add("qubit_dual_path_max_dev", 2, worst, 1e-10, Comparison::at_most);
  }

  // 3. negativity witnesses
  {
    const auto pts = scan_points(ScanGrid{});
    for (Axis a : kAxes) {
      double lowest = 1.0;
      for (const auto& x : pts)
        for (const auto& xp : pts) lowest = std::min(lowest, kernel_sigma(a, x, xp));
      report.add(std::string("K_") + axis_name(a) + "_scan_minimum", 3, lowest, -1.0 + 1e-12,
                 Comparison::at_most);
    }
    const double kz = kernel_sigma(Axis::z, {Spin::up, 0.0, 0.0}, {Spin::up, 0.0, num::pi});
    report.add("K_z_antipodal_value", 3, kz, -1.0, Comparison::equal);
  }

  // 4. normalization of closed-form kernels. The row integral over x' is 1
  // for unital channels; for every channel the integral over the output
  // argument is 1 (trace preservation), and for non-unital ones the row
  // integral equals 2 w_{Phi(I/2)}(x).
  {
    const std::vector<QubitKernel> unital{
        QubitKernel::identity(), QubitKernel::sigma(Axis::x), QubitKernel::sigma(Axis::y),
        QubitKernel::sigma(Axis::z), QubitKernel::pauli_mixture(PauliMixture::make(0.4, 0.3, 0.2, 0.1)),
        QubitKernel::general({{0.0, 0.0, 0.0}, {0.5, -0.4, 0.2}})};
    const std::vector<AffineQubitChannel> non_unital{extreme_point_channel(0.8, 0.8, 1),
                                                     {{0.1, -0.2, 0.3}, {0.5, -0.4, 0.2}}};
    double row = 0.0;
    double trace = 0.0;
    for (const auto& kernel : unital) {
      row = std::max(row, integral_max_dev(kernel, grid, false));
      trace = std::max(trace, integral_max_dev(kernel, grid, true));
    }
    double shifted_row = 0.0;
    for (const auto& c : non_unital) {
      const auto kernel = QubitKernel::general(c);
      trace = std::max(trace, integral_max_dev(kernel, grid, true));
      const auto half = apply_channel(c, bloch_to_density({0.0, 0.0, 0.0}));
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const TomoPoint x = grid.point(k);
        double sum = 0.0;
        for (std::size_t kp = 0; kp < grid.size(); ++kp) sum += grid.weight(kp) * kernel(x, grid.point(kp));
        shifted_row = std::max(shifted_row, std::abs(sum - 2.0 * tomogram_of(half, x)));
      }
    }
    report.add("unital_row_integral_max_dev", 4, row, 1e-12, Comparison::at_most);
    report.add("trace_integral_max_dev", 4, trace, 1e-12, Comparison::at_most);
    report.add("non_unital_row_integral_vs_2w_max_dev", 4, shifted_row, 1e-12, Comparison::at_most);
  }

  // 5. CP oracle on extreme points
  {
    double lowest = 0.0;
    double inflated_highest = -1.0;
    const double values[] = {-0.9, -0.5, 0.0, 0.3, 0.8};
    for (double lx : values)
      for (double ly : values)
        for (int sign : {1, -1}) {
          auto c = extreme_point_channel(lx, ly, sign);
          lowest = std::min(lowest, is_cp(choi_of(c)).min_eigenvalue);
          c.t.z *= 1.2;
          inflated_highest = std::max(inflated_highest, is_cp(choi_of(c)).min_eigenvalue);
        }
    report.add("extreme_point_choi_min_eigenvalue", 5, lowest, -1e-10, Comparison::at_least);
    report.add("inflated_extreme_point_choi_max_min_eigenvalue", 5, inflated_highest, -1e-3,
               Comparison::less_than);
  }

  // 6. conjugation identity
  {
    std::uniform_real_distribution<double> ang(0.0, num::two_pi);
    std::uniform_real_distribution<double> pol(0.0, num::pi);
    std::bernoulli_distribution coin;
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
      const TomoPoint x{coin(rng) ? Spin::up : Spin::down, ang(rng), pol(rng)};
      for (Axis a : kAxes) {
        const Matrix2 lhs = pauli(a) * dequantizer(x) * pauli(a);
        worst = std::max(worst, max_entry(lhs - dequantizer(angle_involution(a, x))));
      }
    }
    report.add("conjugation_identity_max_dev", 6, worst, 1e-15, Comparison::at_most);
  }
}

inline void boson_checks(RunReport& report) {
  using namespace boson;
  const TomogramGrid grid;

  // 7. kernel path vs characteristic-function path
  {
    const std::vector<BosonicState> states{Vacuum{}, Coherent{2.0, -0.5}, Thermal{1.0}, Fock{1},
                                           Squeezed{0.2, 0.3}};
    double worst = 0.0;
    for (const auto& state : states) {
      const auto f = char_fn(state);
      const auto input = tomogram_from_charfn(f, grid);
      for (ChannelKind kind : {ChannelKind::covariant, ChannelKind::contravariant}) {
        for (double k : {0.0, 0.5, 2.0}) {
          const double bound = GaussianChannelParams{kind, k, 0.0}.noise_bound();
          for (double alpha : {bound, bound + 0.5}) {
            const GaussianChannelParams params{kind, k, alpha};
            const auto kernel_path = apply_gaussian_kernel(input, params);
            const auto direct = tomogram_from_charfn(apply_gaussian_channel_direct(f, params), grid);
            worst = std::max(worst, max_abs_difference(kernel_path, direct));
          }
        }
      }
    }
    report.add("boson_dual_path_max_dev", 7, worst, 1e-6, Comparison::at_most);
  }

  // 8. Gaussian moment law on vacuum
  {
    const auto vac = tomogram_from_charfn(char_fn(Vacuum{}), grid);
    const std::pair<GaussianChannelParams, double> cases[] = {
        {{ChannelKind::covariant, 0.5, 0.5}, 0.625}, {{ChannelKind::contravariant, 1.0, 1.0}, 1.5}};
    for (const auto& [params, expected] : cases) {
      const auto out = apply_gaussian_kernel(vac, params);
      double worst = 0.0;
      for (int j = 0; j < grid.phi_count; ++j) worst = std::max(worst, std::abs(moments(out, j).variance - expected));
      report.add(std::string(kind_name(params.kind)) + "_output_variance_dev", 8, worst, 1e-6,
                 Comparison::at_most);
    }
  }

  // 9. kernel marginals
  {
    for (ChannelKind kind : {ChannelKind::covariant, ChannelKind::contravariant}) {
      for (double k : {0.5, 2.0}) {
        const GaussianChannelParams params{kind, k, GaussianChannelParams{kind, k, 0.0}.noise_bound()};
        const auto m = kernel_marginals(params);
        const std::string tag = std::string(kind_name(kind)) + "_k" + (k == 0.5 ? "0.5" : "2");
        report.add(tag + "_output_marginal_dev", 9, std::abs(m.output_integral - 1.0), 1e-8,
                   Comparison::at_most);
        report.add(tag + "_input_marginal_dev", 9, std::abs(*m.input_integral - 1.0 / k), 1e-8,
                   Comparison::at_most);
      }
    }
  }

  // 10. plane representation
  {
    double norm_dev = 0.0;
    double lowest = 0.0;
    double consistency = 0.0;
    for (const BosonicState& state : {BosonicState{Vacuum{}}, BosonicState{Coherent{2.0, 0.0}}}) {
      const auto w = tomogram_from_charfn(char_fn(state), grid);
      const auto plane = plane_distribution(w);
      norm_dev = std::max(norm_dev, std::abs(normalization(plane) - 1.0));
      lowest = std::min(lowest, min_value(plane));
      for (const GaussianChannelParams& params :
           {GaussianChannelParams{ChannelKind::covariant, 0.5, 0.5},
            GaussianChannelParams{ChannelKind::contravariant, 1.0, 1.0}}) {
        const auto direct = apply_plane_channel(plane, params);
        const auto polar = plane_distribution(apply_gaussian_kernel(w, params));
        consistency = std::max(consistency, max_abs_difference(direct, polar));
        norm_dev = std::max(norm_dev, std::abs(normalization(direct) - 1.0));
        lowest = std::min(lowest, min_value(direct));
      }
    }
    report.add("plane_normalization_dev", 10, norm_dev, 1e-6, Comparison::at_most);
    report.add("plane_min_value", 10, lowest, -1e-10, Comparison::at_least);
    report.add("plane_channel_vs_polar_max_dev", 10, consistency, 1e-6, Comparison::at_most);
  }

  // 11. Fock-1 tomogram
  {
    const auto w = tomogram_from_charfn(char_fn(Fock{1}), grid);
    double worst = 0.0;
    for (int j = 0; j < grid.phi_count; ++j)
      for (int i = 0; i < grid.x.count; ++i) {
        const double x = grid.x.node(i);
        worst = std::max(worst, std::abs(w.at(i, j) - 2.0 / std::sqrt(num::pi) * x * x * std::exp(-x * x)));
      }
    report.add("fock1_tomogram_max_error", 11, worst, 1e-8, Comparison::at_most);
  }
}

}  // namespace verify_detail

/// Runs the invariant suite: "qubit", "boson" or "all".
inline RunReport run_verification(const std::string& suite) {
  if (suite != "qubit" && suite != "boson" && suite != "all") {
    throw ParameterError("unknown suite '" + suite + "' (expected qubit, boson or all)");
  }
  RunReport report;
  report.suite = suite;
  if (suite != "boson") verify_detail::qubit_checks(report);
  if (suite != "qubit") verify_detail::boson_checks(report);
  return report;
}

}  // namespace qtomo

#endif  // QTOMO_VERIFY_HPP_
