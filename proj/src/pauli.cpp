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

#include "ricsim/pauli.hpp"

namespace ricsim {

PauliLabel pauli_from_int(int value) {
  if (value < 0 || value > 3) throw ContractViolation("Pauli label out of range");
  return static_cast<PauliLabel>(value);
}

std::string_view pauli_name(PauliLabel p) {
  static constexpr std::array<std::string_view, 4> names = {"I", "Z", "X", "Y"};
  return names[to_int(p)];
}

std::string_view class_name(PauliLabel p) {
  static constexpr std::array<std::string_view, 4> names = {"I", "II", "III", "IV"};
  return names[to_int(p)];
}

DenseOperator pauli_matrix(PauliLabel p) {
  const Complex i{0.0, 1.0};
  switch (p) {
    case PauliLabel::kI:
      return DenseOperator(2, {1.0, 0.0, 0.0, 1.0});
    case PauliLabel::kZ:
      return DenseOperator(2, {1.0, 0.0, 0.0, -1.0});
    case PauliLabel::kX:
      return DenseOperator(2, {0.0, 1.0, 1.0, 0.0});
    case PauliLabel::kY:
      return DenseOperator(2, {0.0, -i, i, 0.0});
  }
  throw ContractViolation("Pauli label out of range");
}

PauliLabel pauli_mul_mod_phase(PauliLabel a, PauliLabel b) {
  // Z <-> bit 0, X <-> bit 1, Y = X|Z; the product mod phase is XOR.
  return static_cast<PauliLabel>(to_int(a) ^ to_int(b));
}

std::vector<OutcomeTriple> all_outcomes() {
  std::vector<OutcomeTriple> out;
  out.reserve(kNumOutcomes);
  for (int i = 0; i < kNumOutcomes; ++i) out.push_back(OutcomeTriple::from_index(i));
  return out;
}

PauliLabel correction_for(const OutcomeTriple& outcome) {
  return pauli_mul_mod_phase(
      pauli_mul_mod_phase(pauli_for(outcome.ae), pauli_for(outcome.bf)),
      pauli_for(outcome.cg));
}

const CorrectionTable& standard_correction_table() {
  static const CorrectionTable table = [] {
    CorrectionTable t{};
    for (const OutcomeTriple& o : all_outcomes()) t[o.index()] = correction_for(o);
    return t;
  }();
  return table;
}

std::array<std::vector<OutcomeTriple>, 4> correction_classes() {
  std::array<std::vector<OutcomeTriple>, 4> classes;
  for (const OutcomeTriple& o : all_outcomes()) {
    classes[to_int(correction_for(o))].push_back(o);
  }
  return classes;
}

}  // namespace ricsim
