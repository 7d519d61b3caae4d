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

#ifndef QTOMO_DESCRIPTORS_HPP_
#define QTOMO_DESCRIPTORS_HPP_

#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qtomo/bosonic.hpp"
#include "qtomo/errors.hpp"
#include "qtomo/qubit_state.hpp"

// Text descriptors accepted by the command-line tool.
//
//   qubit states    bloch:x,y,z | matrix:<json 2x2>
//   qubit channels  pauli:p0,px,py,pz | affine:tx,ty,tz,lx,ly,lz | extreme:lx,ly,sign
//                   | kraus:<json list of 2x2> | {"kind": "pauli"|"affine"|"kraus", ...}
//   bosonic states  vacuum | coherent:q,p | thermal:n | fock:n | squeezed:r,theta
//   Gaussian channel {"kind": "covariant"|"contravariant", "k": .., "alpha": ..}
//
// A 2x2 matrix is [[a, b], [c, d]] where each entry is a number or [re, im].
namespace qtomo::descriptors {

namespace detail {

inline std::vector<double> parse_numbers(std::string_view text, std::size_t expected,
                                         std::string_view what) {
  std::vector<double> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0') {
      throw ParameterError("bad number '" + item + "' in " + std::string(what));
    }
    out.push_back(v);
  }
  if (out.size() != expected) {
    throw ParameterError(std::string(what) + " expects " + std::to_string(expected) + " numbers");
  }
  return out;
}

inline std::pair<std::string, std::string> split_tag(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return {std::string(text), ""};
  return {std::string(text.substr(0, colon)), std::string(text.substr(colon + 1))};
}

inline complex parse_entry(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParameterError("matrix entry must be a number or [re, im]");
}

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace detail

inline qubit::Matrix2 parse_matrix(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2) {
    throw ParameterError("matrix must be a 2x2 nested array");
  }
  qubit::Matrix2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = detail::parse_entry(j[r][c]);
  return m;
}

inline qubit::DensityMatrix parse_qubit_state(std::string_view text) {
  const auto [tag, body] = detail::split_tag(text);
  if (tag == "bloch") {
    const auto v = detail::parse_numbers(body, 3, "bloch state");
    return qubit::bloch_to_density({v[0], v[1], v[2]});
  }
  if (tag == "matrix") return qubit::DensityMatrix::from_matrix(parse_matrix(detail::parse_json(body)));
  throw ParameterError("unknown qubit state descriptor '" + std::string(text) + "'");
}

inline qubit::ChannelSpec parse_kraus(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ParameterError("Kraus descriptor must be a list of matrices");
  std::vector<qubit::Matrix2> ops;
  for (const auto& m : j) ops.push_back(parse_matrix(m));
  return qubit::KrausChannel::make(std::move(ops));
}

inline qubit::ChannelSpec parse_channel_json(const nlohmann::json& j) {
  const std::string kind = j.value("kind", "");
  if (kind == "pauli") {
    const auto p = j.at("p").get<std::vector<double>>();
    if (p.size() != 4) throw ParameterError("pauli channel needs 4 weights");
    return qubit::PauliMixture::make(p[0], p[1], p[2], p[3]);
  }
  if (kind == "affine") {
    const auto t = j.at("t").get<std::vector<double>>();
    const auto l = j.at("lambda").get<std::vector<double>>();
    if (t.size() != 3 || l.size() != 3) throw ParameterError("affine channel needs t[3] and lambda[3]");
    return qubit::AffineQubitChannel{{t[0], t[1], t[2]}, {l[0], l[1], l[2]}};
  }
  if (kind == "kraus") return parse_kraus(j.at("operators"));
  throw ParameterError("unknown channel kind '" + kind + "'");
}

inline qubit::ChannelSpec parse_qubit_channel(std::string_view text) {
  try {
    if (!text.empty() && text.front() == '{') return parse_channel_json(detail::parse_json(text));
    const auto [tag, body] = detail::split_tag(text);
    if (tag == "pauli") {
      const auto p = detail::parse_numbers(body, 4, "pauli channel");
      return qubit::PauliMixture::make(p[0], p[1], p[2], p[3]);
    }
    if (tag == "affine") {
      const auto v = detail::parse_numbers(body, 6, "affine channel");
      return qubit::AffineQubitChannel{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
    }
    if (tag == "extreme") {
      const auto v = detail::parse_numbers(body, 3, "extreme channel");
      return qubit::extreme_point_channel(v[0], v[1], static_cast<int>(v[2]));
    }
    if (tag == "kraus") return parse_kraus(detail::parse_json(body));
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad channel descriptor: ") + e.what());
  }
  throw ParameterError("unknown qubit channel descriptor '" + std::string(text) + "'");
}

inline boson::BosonicState parse_bosonic_state(std::string_view text) {
  const auto [tag, body] = detail::split_tag(text);
  boson::BosonicState state;
  if (tag == "vacuum" && body.empty()) {
    state = boson::Vacuum{};
  } else if (tag == "coherent") {
    const auto v = detail::parse_numbers(body, 2, "coherent state");
    state = boson::Coherent{v[0], v[1]};
  } else if (tag == "thermal") {
    state = boson::Thermal{detail::parse_numbers(body, 1, "thermal state")[0]};
  } else if (tag == "fock") {
    const double n = detail::parse_numbers(body, 1, "Fock state")[0];
    if (n != static_cast<int>(n)) throw InvalidState("Fock number must be an integer");
    state = boson::Fock{static_cast<int>(n)};
  } else if (tag == "squeezed") {
    const auto v = detail::parse_numbers(body, 2, "squeezed state");
    state = boson::Squeezed{v[0], v[1]};
  } else {
    throw ParameterError("unknown bosonic state descriptor '" + std::string(text) + "'");
  }
  boson::validate(state);
  return state;
}

inline boson::ChannelKind parse_channel_kind(std::string_view kind) {
  if (kind == "covariant") return boson::ChannelKind::covariant;
  if (kind == "contravariant") return boson::ChannelKind::contravariant;
  throw ParameterError("channel kind must be covariant or contravariant");
}

inline boson::GaussianChannelParams parse_gaussian_channel(std::string_view text) {
  const auto j = detail::parse_json(text);
  try {
    boson::GaussianChannelParams p{parse_channel_kind(j.at("kind").get<std::string>()),
                                   j.at("k").get<double>(), j.at("alpha").get<double>()};
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad Gaussian channel descriptor: ") + e.what());
  }
}

}  // namespace qtomo::descriptors

#endif  // QTOMO_DESCRIPTORS_HPP_
