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

#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>

#include "ricsim/qmath.hpp"

namespace ricsim {

/// Global register layout. Senders hold A, B, C and E, F, G; David holds D.
enum Qubit : int { kA = 0, kB = 1, kC = 2, kD = 3, kE = 4, kF = 5, kG = 6 };
inline constexpr int kRegisterQubits = 7;

/// Parameters of the three-qubit diluted state: the input amplitudes
/// (alpha, beta) and the asymmetry p, with q = 1 - p and N = 1 + p^2 + q^2.
class TelecloningParams {
 public:
  /// Throws ContractViolation unless alpha^2 + beta^2 = 1 (within 1e-9) and
  /// p lies in [0, 1]. `beta` defaults to +sqrt(1 - alpha^2).
  static TelecloningParams make(double alpha, std::optional<double> beta,
                                double p);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double p() const { return p_; }
  double q() const { return q_; }
  double normalizer() const { return normalizer_; }

  /// The nominal regime p > q. Outside it the protocol still works.
  bool is_asymmetric_regime() const { return p_ > q_; }

 private:
  TelecloningParams(double alpha, double beta, double p);

  double alpha_;
  double beta_;
  double p_;
  double q_;
  double normalizer_;
};

/// Index of a Bell state:
///   0: (|00> + |11>)/sqrt2   1: (|00> - |11>)/sqrt2
///   2: (|01> + |10>)/sqrt2   3: (|01> - |10>)/sqrt2
class BellIndex {
 public:
  constexpr explicit BellIndex(int value) : value_(value) {
    if (value < 0 || value > 3) throw ContractViolation("Bell index out of range");
  }
  constexpr int value() const { return value_; }
  constexpr auto operator<=>(const BellIndex&) const = default;

 private:
  int value_;
};

/// The unknown qubit alpha|0> + beta|1>.
PureState input_state(const TelecloningParams& params);

/// alpha|phi0> + beta|phi1> on (A, B, C), where
///   |phi0> = (|000> + p|101> + q|110>)/sqrt(N)
///   |phi1> = (|111> + p|010> + q|001>)/sqrt(N).
PureState telecloning_state(const TelecloningParams& params);

/// (|0000> + |1111>)/sqrt2 on (D, E, F, G).
PureState ghz4();

PureState bell_state(BellIndex i);
DenseOperator bell_projector(BellIndex i);
/// The four Bell projectors in index order.
const std::array<DenseOperator, 4>& bell_projectors();

/// 1/4 sum_i |Phi_i><Phi_i|_(D,E) (x) |Phi_i><Phi_i|_(F,G), kept as an
/// ensemble of four equal-weight pure products.
MixedState smolin_state();

}  // namespace ricsim
