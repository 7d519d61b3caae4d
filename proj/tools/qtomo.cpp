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

// qtomo: command-line front end for the tomographic channel library.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtomo/descriptors.hpp"
#include "qtomo/qtomo.hpp"
#include "qtomo/verify.hpp"

namespace {

using nlohmann::json;
using namespace qtomo;

constexpr double kQubitAgreement = 1e-8;
constexpr double kBosonAgreement = 1e-6;

// Exit status carried out of a subcommand.
struct Outcome {
  int code = 0;
};

// CSV goes to --out (stdout when absent). The JSON report goes to --report;
// without it, to stdout when the CSV went to a file and to stderr otherwise.
struct Sinks {
  std::string out;
  std::string report;

  template <typename Writer>
  void write_csv(Writer&& writer) const {
    if (out.empty() || out == "-") {
      writer(std::cout);
      std::cout.flush();
      return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) throw ParameterError("cannot open output file '" + out + "'");
    writer(file);
  }

  void write_report(const json& j) const {
    const std::string text = j.dump(2) + "\n";
    if (!report.empty() && report != "-") {
      std::ofstream file(report, std::ios::binary);
      if (!file) throw ParameterError("cannot open report file '" + report + "'");
      file << text;
    } else if (report == "-" || (!out.empty() && out != "-")) {
      std::cout << text;
    } else {
      std::cerr << text;
    }
  }
};

qubit::AngularGrid parse_grid(const std::string& text) {
  int na = 0;
  int nb = 0;
  char comma = 0;
  std::istringstream ss(text);
  if (!(ss >> na >> comma >> nb) || comma != ',' || !ss.eof()) {
    throw ParameterError("grid must be written as N_alpha,N_beta (got '" + text + "')");
  }
  qubit::AngularGrid grid(na, nb);
  qubit::require_reconstruction_grid(grid);
  return grid;
}

json bloch_json(const qubit::BlochVector& a) { return json::array({a.x, a.y, a.z}); }

json point_json(const qubit::TomoPoint& x) {
  return {{"m", qubit::spin_value(x.m)}, {"alpha", x.alpha}, {"beta", x.beta}};
}

// ---------------------------------------------------------------- qubit

struct QubitTomogramArgs {
  std::string state;
  std::string grid = "8,4";
  Sinks sinks;
};

Outcome run_qubit_tomogram(const QubitTomogramArgs& args) {
  const auto rho = descriptors::parse_qubit_state(args.state);
  const auto grid = parse_grid(args.grid);
  const auto w = qubit::sample_tomogram(rho, grid);
  args.sinks.write_csv([&](std::ostream& os) { qubit::write_csv(os, w); });
  return {};
}

struct QubitChannelArgs {
  std::string channel;
  std::string state;
  std::string path = "both";
  std::string grid = "8,4";
  Sinks sinks;
};

Outcome run_qubit_channel(const QubitChannelArgs& args) {
  const auto spec = descriptors::parse_qubit_channel(args.channel);
  const auto rho = descriptors::parse_qubit_state(args.state);
  const auto grid = parse_grid(args.grid);
  const auto kernel = qubit::kernel_of(spec);
  const auto cp = qubit::is_cp(qubit::choi_of(spec));

  // The direct path goes through the Bloch formula so that a non-CP affine map
  // still yields its (possibly non-state) output symbol.
  const auto coords = qubit::pauli_coordinates(qubit::apply_linear(spec, rho.matrix()));
  const qubit::BlochVector out_bloch{coords[0].real(), coords[1].real(), coords[2].real()};
  qubit::QubitTomogram direct{grid, std::vector<double>(grid.size())};
  for (std::size_t k = 0; k < grid.size(); ++k) direct[k] = qubit::tomogram_of(out_bloch, grid.point(k));

  json report{{"command", "qubit-channel"},
              {"channel", kernel.description()},
              {"path", args.path},
              {"grid", {grid.alpha_count(), grid.beta_count()}},
              {"input_bloch", bloch_json(qubit::density_to_bloch(rho))},
              {"output_bloch", bloch_json(out_bloch)},
              {"choi_min_eigenvalue", cp.min_eigenvalue},
              {"completely_positive", cp.completely_positive}};
  if (out_bloch.norm() > 1.0 + default_config().state_tolerance) report["output_is_state"] = false;
  if (!cp.completely_positive) {
    report["warning"] = {{"message", "channel is not completely positive"},
                         {"choi_min_eigenvalue", cp.min_eigenvalue}};
  }

  const qubit::QubitTomogram* emitted = &direct;
  qubit::QubitTomogram via_kernel;
  Outcome outcome;
  if (args.path == "kernel" || args.path == "both") {
    via_kernel = qubit::apply_kernel(kernel, qubit::sample_tomogram(rho, grid));
    emitted = &via_kernel;
  }
  if (args.path == "both") {
    double dev = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) dev = std::max(dev, std::abs(via_kernel[k] - direct[k]));
    const bool ok = dev < kQubitAgreement;
    report["max_deviation"] = dev;
    report["threshold"] = kQubitAgreement;
    report["pass"] = ok;
    outcome.code = ok ? 0 : 1;
  }
  args.sinks.write_csv([&](std::ostream& os) { qubit::write_csv(os, *emitted); });
  if (args.path == "both" || !args.sinks.report.empty() || !cp.completely_positive) {
    args.sinks.write_report(report);
  }
  return outcome;
}

struct QubitKernelArgs {
  std::string channel;
  std::string grid = "8,4";
  Sinks sinks;
};

Outcome run_qubit_kernel(const QubitKernelArgs& args) {
  const auto spec = descriptors::parse_qubit_channel(args.channel);
  const auto grid = parse_grid(args.grid);
  const auto kernel = qubit::kernel_of(spec);
  const auto d = qubit::kernel_diagnostics(kernel, grid);
  args.sinks.write_csv([&](std::ostream& os) { qubit::write_kernel_csv(os, kernel, grid); });
  args.sinks.write_report({{"channel", kernel.description()},
                           {"row_integral_max_dev", d.row_integral_max_dev},
                           {"trace_integral_max_dev", d.trace_integral_max_dev},
                           {"min_value", d.min_value},
                           {"min_value_location", {{"x", point_json(d.min_x)}, {"x2", point_json(d.min_xp)}}},
                           {"choi_min_eigenvalue", d.choi_min_eigenvalue},
                           {"completely_positive", d.completely_positive}});
  return {};
}

// ---------------------------------------------------------------- boson

struct BosonArgs {
  std::string state;
  std::string channel;
  std::string kind = "covariant";
  std::optional<double> k;
  std::optional<double> alpha;
  std::string representation = "tomogram";
  std::string path = "both";
  double half_width = 8.0;
  int points = 401;
  int phi_count = 64;
  Sinks sinks;
};

boson::GaussianChannelParams channel_params(const BosonArgs& args) {
  if (!args.channel.empty()) {
    if (args.k || args.alpha) throw ParameterError("use either --channel or --k/--alpha, not both");
    return descriptors::parse_gaussian_channel(args.channel);
  }
  if (!args.k || !args.alpha) throw ParameterError("boson needs --channel or both --k and --alpha");
  return {descriptors::parse_channel_kind(args.kind), *args.k, *args.alpha};
}

json moments_json(const boson::OpticalTomogram& w) {
  json rows = json::array();
  for (int j = 0; j < w.grid().phi_count; ++j) {
    const auto m = boson::moments(w, j);
    rows.push_back({{"phi", w.grid().phi(j)}, {"mass", m.mass}, {"mean", m.mean}, {"variance", m.variance}});
  }
  return rows;
}

Outcome run_boson(const BosonArgs& args) {
  const auto state = descriptors::parse_bosonic_state(args.state);
  const auto params = channel_params(args);
  boson::validate(params);
  if (args.representation != "tomogram" && args.representation != "plane") {
    throw ParameterError("representation must be tomogram or plane");
  }
  boson::TomogramGrid grid;
  grid.x = {-args.half_width, args.half_width, args.points};
  grid.phi_count = args.phi_count;
  boson::validate(grid);

  const auto f_in = boson::char_fn(state);
  const auto w_in = boson::tomogram_from_charfn(f_in, grid);
  const bool need_direct = args.path == "direct" || args.path == "both";
  const bool need_kernel = args.path == "kernel" || args.path == "both";

  const auto marginals = boson::kernel_marginals(params);
  json report{{"command", "boson"},
              {"state", args.state},
              {"channel",
               {{"kind", boson::kind_name(params.kind)},
                {"k", params.k},
                {"alpha", params.alpha},
                {"noise_bound", params.noise_bound()}}},
              {"representation", args.representation},
              {"path", args.path},
              {"marginals",
               {{"output_integral", marginals.output_integral},
                {"input_integral", marginals.input_integral ? json(*marginals.input_integral) : json("divergent")}}}};

  Outcome outcome;
  std::optional<boson::OpticalTomogram> w_direct;
  if (need_direct) {
    w_direct = boson::tomogram_from_charfn(boson::apply_gaussian_channel_direct(f_in, params), grid);
  }
  std::optional<boson::OpticalTomogram> w_kernel;
  if (need_kernel) w_kernel = boson::apply_gaussian_kernel(w_in, params);
  const auto& w_out = w_kernel ? *w_kernel : *w_direct;
  report["moments"] = moments_json(w_out);
  report["truncated"] = w_out.truncated || w_in.truncated;

  if (args.representation == "tomogram") {
    report["normalization_max_dev"] = boson::normalization_max_dev(w_out);
    report["min_value"] = boson::min_value(w_out);
    if (w_direct && w_kernel) report["max_deviation"] = boson::max_abs_difference(*w_direct, *w_kernel);
    args.sinks.write_csv([&](std::ostream& os) { boson::write_csv(os, w_out); });
  } else {
    std::optional<boson::PlaneDistribution> p_direct;
    std::optional<boson::PlaneDistribution> p_kernel;
    if (w_direct) p_direct = boson::plane_distribution(*w_direct);
    if (need_kernel) p_kernel = boson::apply_plane_channel(boson::plane_distribution(w_in), params);
    const auto& p_out = p_kernel ? *p_kernel : *p_direct;
    report["normalization"] = boson::normalization(p_out);
    report["min_value"] = boson::min_value(p_out);
    report["boundary_mass"] = p_out.boundary_mass;
    report["plane_truncated"] = p_out.truncated;
    if (p_direct && p_kernel) report["max_deviation"] = boson::max_abs_difference(*p_direct, *p_kernel);
    args.sinks.write_csv([&](std::ostream& os) { boson::write_csv(os, p_out); });
  }
  if (report.contains("max_deviation")) {
    const bool ok = report["max_deviation"].get<double>() < kBosonAgreement;
    report["threshold"] = kBosonAgreement;
    report["pass"] = ok;
    outcome.code = ok ? 0 : 1;
  }
  args.sinks.write_report(report);
  return outcome;
}

// ---------------------------------------------------------------- verify

Outcome run_verify(const std::string& suite, const Sinks& sinks) {
  const auto report = run_verification(suite);
  const std::string text = to_json(report).dump(2) + "\n";
  if (sinks.report.empty() || sinks.report == "-") {
    std::cout << text;
  } else {
    std::ofstream file(sinks.report, std::ios::binary);
    if (!file) throw ParameterError("cannot open report file '" + sinks.report + "'");
    file << text;
  }
  return {report.pass() ? 0 : 1};
}

void add_sinks(CLI::App* cmd, Sinks& sinks) {
  cmd->add_option("--out,-o", sinks.out, "CSV output path (default: stdout)");
  cmd->add_option("--report", sinks.report, "JSON report path ('-' for stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum channels in the tomographic representation"};
  app.require_subcommand(1);

  QubitTomogramArgs tomo_args;
  auto* tomo = app.add_subcommand("qubit-tomogram", "Sample the spin tomogram of a qubit state");
  tomo->add_option("--state", tomo_args.state, "bloch:x,y,z or matrix:<json>")->required();
  tomo->add_option("--grid", tomo_args.grid, "N_alpha,N_beta")->capture_default_str();
  add_sinks(tomo, tomo_args.sinks);

  QubitChannelArgs chan_args;
  auto* chan = app.add_subcommand("qubit-channel", "Apply a qubit channel to a tomogram");
  chan->add_option("--channel", chan_args.channel, "pauli:..|affine:..|extreme:..|kraus:<json>|<json>")
      ->required();
  chan->add_option("--state", chan_args.state, "bloch:x,y,z or matrix:<json>")->required();
  chan->add_option("--path", chan_args.path, "direct, kernel or both")
      ->check(CLI::IsMember({"direct", "kernel", "both"}))
      ->capture_default_str();
  chan->add_option("--grid", chan_args.grid, "N_alpha,N_beta")->capture_default_str();
  add_sinks(chan, chan_args.sinks);

  QubitKernelArgs kern_args;
  auto* kern = app.add_subcommand("qubit-kernel", "Dump a qubit kernel and its diagnostics");
  kern->add_option("--channel", kern_args.channel, "channel descriptor")->required();
  kern->add_option("--grid", kern_args.grid, "N_alpha,N_beta")->capture_default_str();
  kern->add_option("--out,-o", kern_args.sinks.out, "kernel CSV path (default: stdout)");
  kern->add_option("--report,--diagnostics", kern_args.sinks.report, "diagnostics JSON path ('-' for stdout)");

  BosonArgs boson_args;
  auto* bos = app.add_subcommand("boson", "Apply a Gaussian channel to a single-mode state");
  bos->add_option("--state", boson_args.state, "vacuum|coherent:q,p|thermal:n|fock:n|squeezed:r,theta")
      ->required();
  bos->add_option("--channel", boson_args.channel, "JSON {kind, k, alpha}");
  bos->add_option("--kind", boson_args.kind, "covariant or contravariant")->capture_default_str();
  bos->add_option("--k", boson_args.k, "gain k >= 0");
  bos->add_option("--alpha", boson_args.alpha, "added noise alpha");
  bos->add_option("--representation", boson_args.representation, "tomogram or plane")
      ->check(CLI::IsMember({"tomogram", "plane"}))
      ->capture_default_str();
  bos->add_option("--path", boson_args.path, "direct, kernel or both")
      ->check(CLI::IsMember({"direct", "kernel", "both"}))
      ->capture_default_str();
  bos->add_option("--half-width", boson_args.half_width, "x-grid spans [-L, L]")->capture_default_str();
  bos->add_option("--points", boson_args.points, "x-grid points (odd)")->capture_default_str();
  bos->add_option("--phi-count", boson_args.phi_count, "phase grid points")->capture_default_str();
  add_sinks(bos, boson_args.sinks);

  std::string suite = "all";
  Sinks verify_sinks;
  auto* ver = app.add_subcommand("verify", "Run the invariant suite and print a JSON report");
  ver->add_option("suite_name", suite, "qubit, boson or all")->check(CLI::IsMember({"qubit", "boson", "all"}));
  ver->add_option("--suite", suite, "qubit, boson or all")->check(CLI::IsMember({"qubit", "boson", "all"}));
  ver->add_option("--report", verify_sinks.report, "JSON report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Outcome outcome;
    if (*tomo) outcome = run_qubit_tomogram(tomo_args);
    if (*chan) outcome = run_qubit_channel(chan_args);
    if (*kern) outcome = run_qubit_kernel(kern_args);
    if (*bos) outcome = run_boson(boson_args);
    if (*ver) outcome = run_verify(suite, verify_sinks);
    return outcome.code;
  } catch (const InvalidState& e) {
    std::cerr << "error: invalid state: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GridError& e) {
    std::cerr << "error: grid: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
