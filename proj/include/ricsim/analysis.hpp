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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ricsim/pauli.hpp"
#include "ricsim/protocol.hpp"
#include "ricsim/states.hpp"

namespace ricsim {

using OutcomeProbabilities = std::array<double, kNumOutcomes>;

struct DistributionTable {
  ResourceKind resource;
  TelecloningParams params;
  /// Indexed by OutcomeTriple::index().
  OutcomeProbabilities probabilities;

  double total() const;
};

DistributionTable exact_distribution(ResourceKind kind,
                                     const TelecloningParams& params);

/// One input hypothesis of a discrete prior.
struct Hypothesis {
  double weight;
  TelecloningParams params;
};

struct LeakageReport {
  ResourceKind resource;
  std::vector<Hypothesis> prior;
  /// I(outcome; hypothesis) in bits.
  double mutual_information_bits;
  std::vector<DistributionTable> conditionals;
};

/// Base-2 entropy with 0 log 0 = 0.
double shannon_entropy_bits(std::span<const double> probabilities);

/// H(sum_x w_x P(.|x)) - sum_x w_x H(P(.|x)) over the exact outcome tables.
/// Throws ContractViolation on an empty prior, non-positive weights, or
/// weights not summing to 1 within 1e-9.
LeakageReport mutual_information(ResourceKind kind,
                                 std::span<const Hypothesis> prior);

struct GoodnessOfFit {
  double statistic;
  int degrees_of_freedom;
  double critical_value;
  double p_value;
  /// Counts landed on an outcome of zero expected probability.
  bool impossible_outcome_observed;
  bool passed;
};

/// Upper-tail critical value of the chi-square distribution.
double chi_square_critical_value(int degrees_of_freedom, double significance);

/// Pearson chi-square test of `counts` against `expected`. Outcomes with
/// expected probability below 1e-14 are excluded from the statistic and must
/// have zero counts; degrees of freedom = (remaining outcomes) - 1.
GoodnessOfFit chi_square_test(const OutcomeCounts& counts,
                              const OutcomeProbabilities& expected,
                              double significance = 0.01);

// ---------------------------------------------------------------------------
// Verification reports

enum class Relation { kAtMost, kAtLeast, kGreaterThan };

std::string_view relation_symbol(Relation r);

struct CheckResult {
  std::string section;
  std::string name;
  Relation relation;
  double bound;
  double observed;
  bool passed;
};

class VerificationReport {
 public:
  /// Records `observed` against `bound`; NaN observations fail.
  void add(std::string section, std::string name, Relation relation,
           double bound, double observed);
  void append(const VerificationReport& other);

  const std::vector<CheckResult>& checks() const { return checks_; }
  bool all_passed() const;
  std::size_t failure_count() const;

 private:
  std::vector<CheckResult> checks_;
};

/// alpha in {0, 0.28, 0.6, 0.8, 1} x p in {0.5, 0.6, 0.7, 0.9, 1.0}.
std::vector<TelecloningParams> default_grid();
/// alpha in {-1, -0.9, ..., 1} x p in {0, 0.05, ..., 1}.
std::vector<TelecloningParams> dense_grid();

struct VerifyOptions {
  CorrectionTable corrections = standard_correction_table();
  bool include_sampling = true;
  std::uint64_t shots = 64000;
  std::uint64_t seed = 42;
};

/// Runs every structural and statistical check over `grid`; failures become
/// report entries. Throws ContractViolation on an empty grid.
VerificationReport verify_all(std::span<const TelecloningParams> grid,
                              const VerifyOptions& options = {});

/// PPT across the 2:2 cuts, unlockability by a joint Bell measurement on
/// (D,E), and maximally mixed single-qubit marginals.
VerificationReport bound_entanglement_suite();

/// Minimum partial-transpose eigenvalue of the Smolin resource when the
/// qubits `subset` (0..3 = D,E,F,G) are transposed.
double smolin_min_pt_eigenvalue(std::span<const int> subset);

/// Fidelity of the (F,G) conditional state with |Phi_i> after a joint Bell
/// measurement with outcome i on (D,E) of the Smolin resource.
double smolin_unlock_fidelity(BellIndex outcome);

/// The identity-correction class written out term by term (16 triples).
const std::vector<OutcomeTriple>& reference_identity_class();
/// The identity-correction outcomes that occur with the GHZ resource
/// (12 triples).
const std::vector<OutcomeTriple>& reference_ghz_identity_outcomes();

}  // namespace ricsim
