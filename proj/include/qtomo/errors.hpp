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

#ifndef QTOMO_ERRORS_HPP_
#define QTOMO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qtomo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input does not describe a valid quantum state.
class InvalidState : public Error {
 public:
  using Error::Error;
};

// Channel or algorithm parameters violate a stated constraint.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Quadrature grid too coarse or misaligned for the requested operation.
class GridError : public Error {
 public:
  using Error::Error;
};

// A channel mapped a valid state outside the state space. Carries the
// offending Bloch vector so callers can report it.
class NonCpEvidence : public Error {
 public:
  NonCpEvidence(const std::string& what, double ax, double ay, double az)
      : Error(what), bloch_{ax, ay, az} {}

  double x() const { return bloch_[0]; }
  double y() const { return bloch_[1]; }
  double z() const { return bloch_[2]; }

 private:
  double bloch_[3];
};

}  // namespace qtomo

#endif  // QTOMO_ERRORS_HPP_
