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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "oracles.hpp"
#include "ricsim/analysis.hpp"

using namespace ricsim;

namespace {

constexpr double kTol = 1e-12;

const std::array<double, 5> kAlphas = {0.0, 0.28, 0.6, 0.8, 1.0};
const std::array<double, 5> kPs = {0.5, 0.6, 0.7, 0.9, 1.0};

TelecloningParams params(double alpha, double p) {
  return TelecloningParams::make(alpha, std::nullopt, p);
}

}  // namespace

TEST(protocol, resource_names) {
  EXPECT_EQ(parse_resource("ghz"), ResourceKind::kGhz);
  EXPECT_EQ(parse_resource("smolin"), ResourceKind::kSmolin);
  EXPECT_FALSE(parse_resource("GHZ").has_value());
  EXPECT_EQ(resource_name(ResourceKind::kSmolin), "smolin");
  EXPECT_EQ(resource_state(ResourceKind::kGhz).ensemble().size(), 1u);
  EXPECT_EQ(resource_state(ResourceKind::kSmolin).ensemble().size(), 4u);
}

TEST(protocol, measured_pairs) {
  EXPECT_EQ(measured_pair(Party::kAlice), (std::array<int, 2>{kA, kE}));
  EXPECT_EQ(measured_pair(Party::kBob), (std::array<int, 2>{kB, kF}));
  EXPECT_EQ(measured_pair(Party::kCharlie), (std::array<int, 2>{kC, kG}));
  EXPECT_THROW(measured_pair(Party::kDavid), ContractViolation);
}

TEST(protocol, david_correction_uses_messages_in_any_arrival_order) {
  const CorrectionTable& table = standard_correction_table();
  const std::array<ClassicalMessage, 3> in_order = {
      ClassicalMessage{Party::kAlice, BellIndex(2)},
      ClassicalMessage{Party::kBob, BellIndex(0)},
      ClassicalMessage{Party::kCharlie, BellIndex(3)}};
  const std::array<ClassicalMessage, 3> shuffled = {in_order[2], in_order[0], in_order[1]};
  EXPECT_EQ(david_correction(in_order, table), PauliLabel::kZ);
  EXPECT_EQ(david_correction(shuffled, table), PauliLabel::kZ);
}

TEST(protocol, david_correction_rejects_bad_transcripts) {
  const CorrectionTable& table = standard_correction_table();
  const std::array<ClassicalMessage, 2> short_list = {
      ClassicalMessage{Party::kAlice, BellIndex(0)},
      ClassicalMessage{Party::kBob, BellIndex(0)}};
  EXPECT_THROW(david_correction(short_list, table), ContractViolation);
  const std::array<ClassicalMessage, 3> duplicate = {
      ClassicalMessage{Party::kAlice, BellIndex(0)},
      ClassicalMessage{Party::kAlice, BellIndex(1)},
      ClassicalMessage{Party::kCharlie, BellIndex(0)}};
  EXPECT_THROW(david_correction(duplicate, table), ContractViolation);
  const std::array<ClassicalMessage, 3> from_david = {
      ClassicalMessage{Party::kAlice, BellIndex(0)},
      ClassicalMessage{Party::kDavid, BellIndex(1)},
      ClassicalMessage{Party::kCharlie, BellIndex(0)}};
  EXPECT_THROW(david_correction(from_david, table), ContractViolation);
}

TEST(protocol, ghz_branches_match_brute_force_oracle) {
  for (double alpha : kAlphas) {
    for (double p : kPs) {
      const TelecloningParams pr = params(alpha, p);
      const auto branches = enumerate_branches(ResourceKind::kGhz, pr);
      ASSERT_EQ(branches.size(), 64u);
      for (const BranchRecord& b : branches) {
        const oracle::BranchOracle ref =
            oracle::branch(false, alpha, pr.beta(), p, b.outcome.ae.value(),
                           b.outcome.bf.value(), b.outcome.cg.value(),
                           to_int(b.correction));
        EXPECT_NEAR(b.probability, ref.probability, kTol);
        if (b.reachable) {
          EXPECT_NEAR(b.fidelity, 1.0, kTol);
          EXPECT_NEAR(ref.worst_fidelity, 1.0, kTol);
          EXPECT_NEAR(fidelity(input_state(pr), b.d_state), 1.0, kTol);
        }
      }
    }
  }
}

TEST(protocol, ghz_closed_form_probabilities) {
  for (double p : kPs) {
    const TelecloningParams pr = params(0.6, p);
    const double unit = 1.0 / (16.0 * pr.normalizer());
    const auto branches = enumerate_branches(ResourceKind::kGhz, pr);
    auto prob = [&](int l, int j, int k) { return branches[16 * l + 4 * j + k].probability; };
    EXPECT_NEAR(prob(0, 0, 0), unit, kTol);
    EXPECT_NEAR(prob(2, 0, 2), p * p * unit, kTol);
    EXPECT_NEAR(prob(2, 2, 0), pr.q() * pr.q() * unit, kTol);
    EXPECT_NEAR(prob(0, 2, 2), 0.0, kTol);
    EXPECT_FALSE(branches[10].reachable);
  }
}

TEST(protocol, ghz_reachable_count) {
  const auto inner = enumerate_branches(ResourceKind::kGhz, params(0.6, 0.7));
  EXPECT_EQ(std::count_if(inner.begin(), inner.end(),
                          [](const BranchRecord& b) { return b.reachable; }),
            48);
  // At p = 1 the q^2 branches vanish too.
  const auto edge = enumerate_branches(ResourceKind::kGhz, params(0.6, 1.0));
  EXPECT_EQ(std::count_if(edge.begin(), edge.end(),
                          [](const BranchRecord& b) { return b.reachable; }),
            32);
}

TEST(protocol, unreachable_branch_convention) {
  const TelecloningParams pr = params(0.6, 0.7);
  const BranchRecord b = enumerate_branches(ResourceKind::kGhz, pr)[10];
  EXPECT_FALSE(b.reachable);
  EXPECT_EQ(b.fidelity, 1.0);
  EXPECT_NEAR(fidelity(input_state(pr), b.d_state), 1.0, kTol);
}

TEST(protocol, smolin_member_branches_recover_input) {
  for (double alpha : kAlphas) {
    for (double p : kPs) {
      const TelecloningParams pr = params(alpha, p);
      const auto members = enumerate_member_branches(ResourceKind::kSmolin, pr);
      ASSERT_EQ(members.size(), 256u);
      int impossible = 0;
      for (const MemberBranch& mb : members) {
        EXPECT_NEAR(mb.fidelity, 1.0, kTol);
        if (!mb.reachable) {
          ++impossible;
          EXPECT_LE(mb.probability, kNegligibleProbability);
        }
      }
      // With p = q a quarter of the member/outcome pairs cancel exactly.
      EXPECT_EQ(impossible, p == 0.5 ? 64 : 0);
      for (const BranchRecord& b : enumerate_branches(ResourceKind::kSmolin, pr)) {
        EXPECT_NEAR(b.probability, 1.0 / 64.0, kTol);
        EXPECT_NEAR(b.fidelity, 1.0, kTol);
        const oracle::BranchOracle ref =
            oracle::branch(true, alpha, pr.beta(), p, b.outcome.ae.value(),
                           b.outcome.bf.value(), b.outcome.cg.value(),
                           to_int(b.correction));
        EXPECT_NEAR(b.probability, ref.probability, kTol);
        EXPECT_NEAR(ref.worst_fidelity, 1.0, kTol);
      }
    }
  }
}

TEST(protocol, measurement_order_does_not_matter) {
  MeasurementOrder order = kStandardOrder;
  std::sort(order.begin(), order.end());
  const TelecloningParams pr = params(0.28, 0.9);
  for (ResourceKind kind : {ResourceKind::kGhz, ResourceKind::kSmolin}) {
    const auto reference = enumerate_branches(kind, pr);
    do {
      const auto permuted = enumerate_branches(kind, pr, standard_correction_table(), order);
      for (std::size_t i = 0; i < 64; ++i) {
        EXPECT_NEAR(permuted[i].probability, reference[i].probability, kTol);
        EXPECT_NEAR(permuted[i].fidelity, reference[i].fidelity, kTol);
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
  const MeasurementOrder repeated = {Party::kAlice, Party::kAlice, Party::kBob};
  EXPECT_THROW(enumerate_branches(ResourceKind::kGhz, pr, standard_correction_table(), repeated),
               ContractViolation);
}

TEST(protocol, probabilities_do_not_depend_on_alpha) {
  for (ResourceKind kind : {ResourceKind::kGhz, ResourceKind::kSmolin}) {
    const auto base = enumerate_branches(kind, params(0.0, 0.7));
    for (double alpha : {0.28, 0.6, -0.8, 1.0}) {
      const auto other = enumerate_branches(kind, params(alpha, 0.7));
      for (std::size_t i = 0; i < 64; ++i) {
        EXPECT_NEAR(other[i].probability, base[i].probability, kTol);
      }
    }
  }
}

TEST(protocol, wrong_corrections_break_recovery) {
  CorrectionTable swapped = standard_correction_table();
  for (PauliLabel& label : swapped) {
    if (label == PauliLabel::kI) label = PauliLabel::kZ;
    else if (label == PauliLabel::kZ) label = PauliLabel::kI;
  }
  const auto branches = enumerate_branches(ResourceKind::kGhz, params(0.6, 0.7), swapped);
  double worst = 1.0;
  for (const BranchRecord& b : branches) worst = std::min(worst, b.fidelity);
  EXPECT_LT(worst, 0.99);
}

TEST(protocol, run_once_is_deterministic) {
  const TelecloningParams pr = params(0.6, 0.7);
  for (ResourceKind kind : {ResourceKind::kGhz, ResourceKind::kSmolin}) {
    const RunResult a = run_once(kind, pr, 1234);
    const RunResult b = run_once(kind, pr, 1234);
    EXPECT_EQ(a.branch.outcome, b.branch.outcome);
    EXPECT_EQ(a.resource_member, b.resource_member);
    EXPECT_EQ(a.branch.fidelity, b.branch.fidelity);
    EXPECT_NEAR(a.branch.fidelity, 1.0, kTol);
    EXPECT_EQ(a.transcript.applied_by, Party::kDavid);
    EXPECT_EQ(a.transcript.correction, correction_for(a.branch.outcome));
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(a.transcript.messages[i].sender, kStandardOrder[i]);
    }
  }
}

TEST(protocol, run_branch_probability_matches_exact_table) {
  const TelecloningParams pr = params(0.8, 0.6);
  for (ResourceKind kind : {ResourceKind::kGhz, ResourceKind::kSmolin}) {
    const auto exact = enumerate_branches(kind, pr);
    for (std::uint64_t i = 0; i < 20; ++i) {
      const RunResult r = run_stream(kind, pr, 99, i);
      EXPECT_TRUE(exact[r.branch.outcome.index()].reachable);
      if (kind == ResourceKind::kGhz) {
        EXPECT_NEAR(r.branch.probability, exact[r.branch.outcome.index()].probability, kTol);
      }
    }
  }
}

TEST(protocol, run_once_equals_first_sampled_shot) {
  const TelecloningParams pr = params(0.6, 0.7);
  const RunResult first = run_once(ResourceKind::kSmolin, pr, 77);
  const SampleSummary s = sample_runs(ResourceKind::kSmolin, pr, 1, 77);
  EXPECT_EQ(s.counts[first.branch.outcome.index()], 1u);
}

TEST(protocol, sampling_is_reproducible_and_seed_sensitive) {
  const TelecloningParams pr = params(0.6, 0.7);
  const SampleSummary a = sample_runs(ResourceKind::kGhz, pr, 500, 5);
  const SampleSummary b = sample_runs(ResourceKind::kGhz, pr, 500, 5);
  const SampleSummary c = sample_runs(ResourceKind::kGhz, pr, 500, 6);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.mean_fidelity, b.mean_fidelity);
  EXPECT_NE(a.counts, c.counts);
  std::uint64_t total = 0;
  for (std::uint64_t n : a.counts) total += n;
  EXPECT_EQ(total, 500u);
  EXPECT_NEAR(a.min_fidelity, 1.0, kTol);
  EXPECT_EQ(a.counts[10], 0u);  // impossible outcome never drawn
  EXPECT_THROW(sample_runs(ResourceKind::kGhz, pr, 0, 5), ContractViolation);
}

TEST(protocol, derived_streams_are_distinct) {
  std::mt19937_64 a = derive_stream(42, 0);
  std::mt19937_64 b = derive_stream(42, 1);
  EXPECT_NE(a(), b());
  std::mt19937_64 c = derive_stream(42, 0);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform_unit(c);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
