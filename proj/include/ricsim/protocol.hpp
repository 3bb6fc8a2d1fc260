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
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "ricsim/pauli.hpp"
#include "ricsim/qmath.hpp"
#include "ricsim/states.hpp"

// Remote information concentration over the 7-qubit register
// [A, B, C, D, E, F, G]. Alice, Bob and Charlie each Bell-measure their pair
// (A,E), (B,F), (C,G) and send the outcome to David, who applies the product
// Pauli to D.

namespace ricsim {

enum class ResourceKind { kGhz, kSmolin };

std::string_view resource_name(ResourceKind kind);
std::optional<ResourceKind> parse_resource(std::string_view name);

/// The shared resource on (D, E, F, G). GHZ is a one-member ensemble.
MixedState resource_state(ResourceKind kind);

enum class Party { kAlice = 0, kBob = 1, kCharlie = 2, kDavid = 3 };

std::string_view party_name(Party party);

struct ClassicalMessage {
  Party sender;
  BellIndex outcome;
};

struct ProtocolTranscript {
  std::array<ClassicalMessage, 3> messages;
  PauliLabel correction;
  Party applied_by = Party::kDavid;
};

struct BranchRecord {
  OutcomeTriple outcome;
  double probability;
  PauliLabel correction;
  PureState d_state;
  double fidelity;
  /// False for zero-probability outcomes; those carry the input state and
  /// fidelity 1 by convention.
  bool reachable;
};

/// Order in which the senders measure, as a permutation of
/// {Alice, Bob, Charlie}.
using MeasurementOrder = std::array<Party, 3>;
inline constexpr MeasurementOrder kStandardOrder = {Party::kAlice, Party::kBob,
                                                    Party::kCharlie};

/// (sender qubit, resource qubit) measured by a sending party.
std::array<int, 2> measured_pair(Party sender);

/// David's rule: one message from each sender, correction looked up from
/// the combined outcome. Throws ContractViolation on a malformed message set.
PauliLabel david_correction(std::span<const ClassicalMessage> messages,
                            const CorrectionTable& table);

/// Independent stream for run `run_index` under root `seed`.
std::mt19937_64 derive_stream(std::uint64_t seed, std::uint64_t run_index);
/// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(std::mt19937_64& engine);

struct RunResult {
  ProtocolTranscript transcript;
  BranchRecord branch;
  /// Ensemble member the resource was drawn from (always 0 for GHZ).
  int resource_member;
};

/// One sampled protocol execution on stream (seed, run_index).
RunResult run_stream(ResourceKind kind, const TelecloningParams& params,
                     std::uint64_t seed, std::uint64_t run_index,
                     const CorrectionTable& table = standard_correction_table());

/// Same as run_stream with run index 0.
RunResult run_once(ResourceKind kind, const TelecloningParams& params,
                   std::uint64_t seed,
                   const CorrectionTable& table = standard_correction_table());

/// One outcome of one ensemble member, with `probability` conditional on the
/// member having been drawn.
struct MemberBranch {
  int member;
  double weight;
  OutcomeTriple outcome;
  double probability;
  PauliLabel correction;
  double fidelity;
  bool reachable;
};

/// Exact branches per ensemble member, member-major then outcome index.
std::vector<MemberBranch> enumerate_member_branches(
    ResourceKind kind, const TelecloningParams& params,
    const CorrectionTable& table = standard_correction_table(),
    const MeasurementOrder& order = kStandardOrder);

/// Exact 64-row table in outcome-index order, averaged over the ensemble.
std::vector<BranchRecord> enumerate_branches(
    ResourceKind kind, const TelecloningParams& params,
    const CorrectionTable& table = standard_correction_table(),
    const MeasurementOrder& order = kStandardOrder);

using OutcomeCounts = std::array<std::uint64_t, kNumOutcomes>;

struct SampleSummary {
  std::uint64_t shots;
  OutcomeCounts counts;
  double mean_fidelity;
  double min_fidelity;
};

/// `shots` runs on streams (seed, 0..shots-1).
SampleSummary sample_runs(ResourceKind kind, const TelecloningParams& params,
                          std::uint64_t shots, std::uint64_t seed,
                          const CorrectionTable& table = standard_correction_table());

OutcomeCounts sample_distribution(ResourceKind kind,
                                  const TelecloningParams& params,
                                  std::uint64_t shots, std::uint64_t seed);

}  // namespace ricsim
