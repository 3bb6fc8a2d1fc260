// Copyright 2026 The ricsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ricsim/states.hpp"

#include <cmath>
#include <vector>

namespace ricsim {

TelecloningParams::TelecloningParams(double alpha, double beta, double p)
    : alpha_(alpha),
      beta_(beta),
      p_(p),
      q_(1.0 - p),
      normalizer_(1.0 + p * p + (1.0 - p) * (1.0 - p)) {}

TelecloningParams TelecloningParams::make(double alpha,
                                          std::optional<double> beta,
                                          double p) {
  if (!std::isfinite(alpha) || (beta && !std::isfinite(*beta)) ||
      !std::isfinite(p)) {
    throw ContractViolation("parameters must be finite");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ContractViolation("p must lie in [0, 1]");
  }
  double b = 0.0;
  if (beta) {
    b = *beta;
  } else {
    if (std::abs(alpha) > 1.0) {
      throw ContractViolation("alpha^2 + beta^2 = 1 requires |alpha| <= 1");
    }
    b = std::sqrt(1.0 - alpha * alpha);
  }
  if (std::abs(alpha * alpha + b * b - 1.0) > kAccumulatedTolerance) {
    throw ContractViolation("alpha^2 + beta^2 = 1 is violated");
  }
  return TelecloningParams(alpha, b, p);
}

PureState input_state(const TelecloningParams& params) {
  return PureState(1, {params.alpha(), params.beta()});
}

PureState telecloning_state(const TelecloningParams& params) {
  const double a = params.alpha();
  const double b = params.beta();
  const double p = params.p();
  const double q = params.q();
  const double scale = 1.0 / std::sqrt(params.normalizer());

  std::vector<Complex> amps(8);
  amps[0b000] = a * scale;
  amps[0b101] = a * p * scale;
  amps[0b110] = a * q * scale;
  amps[0b111] = b * scale;
  amps[0b010] = b * p * scale;
  amps[0b001] = b * q * scale;
  return PureState(3, std::move(amps));
}

PureState ghz4() {
  std::vector<Complex> amps(16);
  amps[0] = M_SQRT1_2;
  amps[15] = M_SQRT1_2;
  return PureState(4, std::move(amps));
}

PureState bell_state(BellIndex i) {
  std::vector<Complex> amps(4);
  switch (i.value()) {
    case 0:
      amps[0b00] = M_SQRT1_2;
      amps[0b11] = M_SQRT1_2;
      break;
    case 1:
      amps[0b00] = M_SQRT1_2;
      amps[0b11] = -M_SQRT1_2;
      break;
    case 2:
      amps[0b01] = M_SQRT1_2;
      amps[0b10] = M_SQRT1_2;
      break;
    default:
      amps[0b01] = M_SQRT1_2;
      amps[0b10] = -M_SQRT1_2;
      break;
  }
  return PureState(2, std::move(amps));
}

DenseOperator bell_projector(BellIndex i) { return bell_state(i).density_matrix(); }

const std::array<DenseOperator, 4>& bell_projectors() {
  static const std::array<DenseOperator, 4> projectors = {
      bell_projector(BellIndex(0)), bell_projector(BellIndex(1)),
      bell_projector(BellIndex(2)), bell_projector(BellIndex(3))};
  return projectors;
}

MixedState smolin_state() {
  std::vector<MixedState::Member> members;
  members.reserve(4);
  for (int i = 0; i < 4; ++i) {
    const PureState pair = bell_state(BellIndex(i));
    members.push_back({0.25, tensor(pair, pair)});
  }
  return MixedState(std::move(members));
}

}  // namespace ricsim
