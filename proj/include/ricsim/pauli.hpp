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
#include <cstdint>
#include <string_view>
#include <vector>

#include "ricsim/qmath.hpp"
#include "ricsim/states.hpp"

namespace ricsim {

/// Pauli labels in the protocol's numbering. Bell outcome i is associated
/// with label i: |Phi_i> = (I (x) sigma_i)|Phi_0> up to phase.
enum class PauliLabel : std::uint8_t { kI = 0, kZ = 1, kX = 2, kY = 3 };

inline constexpr std::array<PauliLabel, 4> kAllPauliLabels = {
    PauliLabel::kI, PauliLabel::kZ, PauliLabel::kX, PauliLabel::kY};

constexpr int to_int(PauliLabel p) { return static_cast<int>(p); }
PauliLabel pauli_from_int(int value);
std::string_view pauli_name(PauliLabel p);
/// Roman numeral of the correction class, I..IV.
std::string_view class_name(PauliLabel p);

constexpr PauliLabel pauli_for(BellIndex outcome) {
  return static_cast<PauliLabel>(outcome.value());
}

DenseOperator pauli_matrix(PauliLabel p);

/// Label c with sigma_a sigma_b proportional to sigma_c. Labels form the
/// Klein four-group under this product.
PauliLabel pauli_mul_mod_phase(PauliLabel a, PauliLabel b);

/// Bell outcomes on (A,E), (B,F), (C,G).
struct OutcomeTriple {
  BellIndex ae;
  BellIndex bf;
  BellIndex cg;

  /// 16*l + 4*j + k
  constexpr int index() const {
    return 16 * ae.value() + 4 * bf.value() + cg.value();
  }
  static constexpr OutcomeTriple from_index(int index) {
    if (index < 0 || index >= 64) throw ContractViolation("outcome index out of range");
    return {BellIndex(index / 16), BellIndex((index / 4) % 4), BellIndex(index % 4)};
  }
  constexpr auto operator<=>(const OutcomeTriple&) const = default;
};

inline constexpr int kNumOutcomes = 64;

/// All 64 triples in index order.
std::vector<OutcomeTriple> all_outcomes();

/// Product of the three outcome labels mod phase; David applies this label.
PauliLabel correction_for(const OutcomeTriple& outcome);

using CorrectionTable = std::array<PauliLabel, kNumOutcomes>;

/// correction_for tabulated by outcome index.
const CorrectionTable& standard_correction_table();

/// Outcomes grouped by correction class, indexed by label (I, II, III, IV).
std::array<std::vector<OutcomeTriple>, 4> correction_classes();

}  // namespace ricsim
