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

#include "ricsim/protocol.hpp"

#include <algorithm>
#include <cmath>

namespace ricsim {
namespace {

constexpr std::array<int, 1> kDavidQubit = {kD};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double squared_norm(std::span<const Complex> v) {
  double acc = 0.0;
  for (const Complex& z : v) acc += std::norm(z);
  return acc;
}

// Single-qubit state vector of a (nearly) pure 2x2 density matrix, up to
// global phase.
PureState dominant_state(const DenseOperator& rho) {
  const std::size_t c = rho(0, 0).real() >= rho(1, 1).real() ? 0 : 1;
  const double scale = 1.0 / std::sqrt(rho(c, c).real());
  return PureState::normalized(1, {rho(0, c) * scale, rho(1, c) * scale});
}

DenseOperator conjugate(const DenseOperator& rho, PauliLabel p) {
  const DenseOperator s = pauli_matrix(p);
  return s * rho * s.adjoint();
}

BellIndex outcome_of(const OutcomeTriple& o, Party sender) {
  switch (sender) {
    case Party::kAlice:
      return o.ae;
    case Party::kBob:
      return o.bf;
    case Party::kCharlie:
      return o.cg;
    case Party::kDavid:
      break;
  }
  throw ContractViolation("David does not measure");
}

void check_order(const MeasurementOrder& order) {
  std::array<bool, 3> seen{};
  for (Party p : order) {
    const int i = static_cast<int>(p);
    if (i < 0 || i > 2 || seen[i]) {
      throw ContractViolation("measurement order must permute the three senders");
    }
    seen[i] = true;
  }
}

}  // namespace

std::string_view resource_name(ResourceKind kind) {
  return kind == ResourceKind::kGhz ? "ghz" : "smolin";
}

std::optional<ResourceKind> parse_resource(std::string_view name) {
  if (name == "ghz") return ResourceKind::kGhz;
  if (name == "smolin") return ResourceKind::kSmolin;
  return std::nullopt;
}

MixedState resource_state(ResourceKind kind) {
  return kind == ResourceKind::kGhz ? MixedState::from_pure(ghz4())
                                    : smolin_state();
}

std::string_view party_name(Party party) {
  static constexpr std::array<std::string_view, 4> names = {"Alice", "Bob",
                                                            "Charlie", "David"};
  return names[static_cast<int>(party)];
}

std::array<int, 2> measured_pair(Party sender) {
  switch (sender) {
    case Party::kAlice:
      return {kA, kE};
    case Party::kBob:
      return {kB, kF};
    case Party::kCharlie:
      return {kC, kG};
    case Party::kDavid:
      break;
  }
  throw ContractViolation("David holds no measured pair");
}

PauliLabel david_correction(std::span<const ClassicalMessage> messages,
                            const CorrectionTable& table) {
  if (messages.size() != 3) {
    throw ContractViolation("David expects exactly three messages");
  }
  std::array<std::optional<BellIndex>, 3> by_sender;
  for (const ClassicalMessage& m : messages) {
    const int s = static_cast<int>(m.sender);
    if (s < 0 || s > 2) throw ContractViolation("message from a non-sender");
    if (by_sender[s]) throw ContractViolation("duplicate message from a sender");
    by_sender[s] = m.outcome;
  }
  const OutcomeTriple outcome{*by_sender[0], *by_sender[1], *by_sender[2]};
  return table[outcome.index()];
}

std::mt19937_64 derive_stream(std::uint64_t seed, std::uint64_t run_index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ run_index));
}

double uniform_unit(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

namespace {

// Everything about a run that does not depend on the random stream.
struct PreparedSystem {
  PureState chi;
  MixedState resource;
  std::vector<PureState> joints;  // telecloning state (x) each member
};

PreparedSystem prepare(ResourceKind kind, const TelecloningParams& params) {
  MixedState resource = resource_state(kind);
  const PureState psi = telecloning_state(params);
  std::vector<PureState> joints;
  for (const MixedState::Member& m : resource.ensemble()) {
    joints.push_back(tensor(psi, m.state));
  }
  return {input_state(params), std::move(resource), std::move(joints)};
}

RunResult run_prepared(const PreparedSystem& system, std::mt19937_64& engine,
                       const CorrectionTable& table) {
  const auto& ensemble = system.resource.ensemble();

  // Draw the resource member first; GHZ has exactly one.
  const double u_member = uniform_unit(engine);
  std::size_t member = ensemble.size() - 1;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    cumulative += ensemble[i].weight;
    if (u_member < cumulative) {
      member = i;
      break;
    }
  }

  PureState state = system.joints[member];
  std::array<ClassicalMessage, 3> messages = {
      ClassicalMessage{Party::kAlice, BellIndex(0)},
      ClassicalMessage{Party::kBob, BellIndex(0)},
      ClassicalMessage{Party::kCharlie, BellIndex(0)}};
  double probability = 1.0;
  for (std::size_t i = 0; i < kStandardOrder.size(); ++i) {
    const std::array<int, 2> pair = measured_pair(kStandardOrder[i]);
    MeasurementResult m =
        measure_projective(bell_projectors(), pair, state, uniform_unit(engine));
    messages[i] = {kStandardOrder[i], BellIndex(static_cast<int>(m.outcome))};
    probability *= m.probability;
    state = std::move(m.post_state);
  }

  const PauliLabel correction = david_correction(messages, table);
  state = apply_local(pauli_matrix(correction), kDavidQubit, state);
  const DenseOperator rho_d = partial_trace(state, kDavidQubit);

  const OutcomeTriple outcome{messages[0].outcome, messages[1].outcome,
                              messages[2].outcome};
  BranchRecord branch{outcome,
                      probability * ensemble[member].weight,
                      correction,
                      dominant_state(rho_d),
                      fidelity(system.chi, rho_d),
                      true};
  return {ProtocolTranscript{messages, correction, Party::kDavid},
          std::move(branch), static_cast<int>(member)};
}

}  // namespace

RunResult run_stream(ResourceKind kind, const TelecloningParams& params,
                     std::uint64_t seed, std::uint64_t run_index,
                     const CorrectionTable& table) {
  std::mt19937_64 engine = derive_stream(seed, run_index);
  return run_prepared(prepare(kind, params), engine, table);
}

RunResult run_once(ResourceKind kind, const TelecloningParams& params,
                   std::uint64_t seed, const CorrectionTable& table) {
  return run_stream(kind, params, seed, 0, table);
}

namespace {

struct ProjectedBranch {
  double probability;
  DenseOperator corrected_rho_d;  // normalized; identity/2 when unreachable
};

ProjectedBranch project_branch(const PureState& joint, const OutcomeTriple& o,
                               PauliLabel correction,
                               const MeasurementOrder& order) {
  std::vector<Complex> v(joint.amplitudes().begin(), joint.amplitudes().end());
  for (Party sender : order) {
    const std::array<int, 2> pair = measured_pair(sender);
    v = apply_on_targets(bell_projectors()[outcome_of(o, sender).value()], pair,
                         v, kRegisterQubits);
  }
  const double prob = squared_norm(v);
  if (prob <= kNegligibleProbability) {
    return {prob, 0.5 * DenseOperator::identity(2)};
  }
  const PureState post = PureState::normalized(kRegisterQubits, std::move(v));
  return {prob, conjugate(partial_trace(post, kDavidQubit), correction)};
}

}  // namespace

std::vector<MemberBranch> enumerate_member_branches(
    ResourceKind kind, const TelecloningParams& params,
    const CorrectionTable& table, const MeasurementOrder& order) {
  check_order(order);
  const PureState chi = input_state(params);
  const PureState psi = telecloning_state(params);
  const MixedState resource = resource_state(kind);

  std::vector<MemberBranch> out;
  out.reserve(resource.ensemble().size() * kNumOutcomes);
  for (std::size_t m = 0; m < resource.ensemble().size(); ++m) {
    const PureState joint = tensor(psi, resource.ensemble()[m].state);
    for (const OutcomeTriple& o : all_outcomes()) {
      const PauliLabel correction = table[o.index()];
      const ProjectedBranch b = project_branch(joint, o, correction, order);
      const bool reachable = b.probability > kNegligibleProbability;
      out.push_back({static_cast<int>(m), resource.ensemble()[m].weight, o,
                     b.probability, correction,
                     reachable ? fidelity(chi, b.corrected_rho_d) : 1.0,
                     reachable});
    }
  }
  return out;
}

std::vector<BranchRecord> enumerate_branches(ResourceKind kind,
                                             const TelecloningParams& params,
                                             const CorrectionTable& table,
                                             const MeasurementOrder& order) {
  check_order(order);
  const PureState chi = input_state(params);
  const PureState psi = telecloning_state(params);
  const MixedState resource = resource_state(kind);

  std::vector<PureState> joints;
  for (const MixedState::Member& member : resource.ensemble()) {
    joints.push_back(tensor(psi, member.state));
  }

  std::vector<BranchRecord> out;
  out.reserve(kNumOutcomes);
  for (const OutcomeTriple& o : all_outcomes()) {
    const PauliLabel correction = table[o.index()];
    double probability = 0.0;
    DenseOperator rho = DenseOperator::zero(2);
    for (std::size_t m = 0; m < joints.size(); ++m) {
      const ProjectedBranch b = project_branch(joints[m], o, correction, order);
      const double w = resource.ensemble()[m].weight * b.probability;
      probability += w;
      rho += w * b.corrected_rho_d;
    }
    if (probability <= kNegligibleProbability) {
      out.push_back({o, probability, correction, chi, 1.0, false});
      continue;
    }
    rho *= 1.0 / probability;
    out.push_back({o, probability, correction, dominant_state(rho),
                   fidelity(chi, rho), true});
  }
  return out;
}

SampleSummary sample_runs(ResourceKind kind, const TelecloningParams& params,
                          std::uint64_t shots, std::uint64_t seed,
                          const CorrectionTable& table) {
  if (shots == 0) throw ContractViolation("shots must be at least 1");
  const PreparedSystem system = prepare(kind, params);
  SampleSummary summary{shots, {}, 0.0, 1.0};
  double fidelity_sum = 0.0;
  for (std::uint64_t i = 0; i < shots; ++i) {
    std::mt19937_64 engine = derive_stream(seed, i);
    const RunResult r = run_prepared(system, engine, table);
    ++summary.counts[r.branch.outcome.index()];
    fidelity_sum += r.branch.fidelity;
    summary.min_fidelity = std::min(summary.min_fidelity, r.branch.fidelity);
  }
  summary.mean_fidelity = fidelity_sum / static_cast<double>(shots);
  return summary;
}

OutcomeCounts sample_distribution(ResourceKind kind,
                                  const TelecloningParams& params,
                                  std::uint64_t shots, std::uint64_t seed) {
  return sample_runs(kind, params, shots, seed).counts;
}

}  // namespace ricsim
