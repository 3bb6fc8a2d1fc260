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

#include "ricsim/analysis.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <set>

namespace ricsim {
namespace {

constexpr double kUniformProbability = 1.0 / 64.0;

OutcomeTriple triple(int l, int j, int k) {
  return {BellIndex(l), BellIndex(j), BellIndex(k)};
}

// Squared branch coefficient c^2 of a GHZ branch, c in {0, 1, p, q}. Bell
// outcomes 2 and 3 flip the measured pair; the flip pattern of the three
// pairs selects which term of the diluted state survives.
double ghz_branch_weight(const OutcomeTriple& o, double p, double q) {
  const int pattern = (o.ae.value() >= 2 ? 4 : 0) | (o.bf.value() >= 2 ? 2 : 0) |
                      (o.cg.value() >= 2 ? 1 : 0);
  switch (pattern) {
    case 0b000:
    case 0b111:
      return 1.0;
    case 0b101:
    case 0b010:
      return p * p;
    case 0b110:
    case 0b001:
      return q * q;
    default:
      return 0.0;
  }
}

double max_table_diff(const std::vector<BranchRecord>& a,
                      const std::vector<BranchRecord>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i].probability - b[i].probability));
  }
  return worst;
}

std::vector<MeasurementOrder> all_orders() {
  MeasurementOrder order = kStandardOrder;
  std::vector<MeasurementOrder> out;
  std::sort(order.begin(), order.end());
  do {
    out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

// Probability of each outcome computed from the dense 128x128 density
// matrix of the joint register, Tr(P rho).
OutcomeProbabilities dense_route_probabilities(ResourceKind kind,
                                               const TelecloningParams& params) {
  const DenseOperator rho = kron(telecloning_state(params).density_matrix(),
                                 resource_state(kind).density_matrix());
  OutcomeProbabilities out{};
  for (const OutcomeTriple& o : all_outcomes()) {
    DenseOperator projected = rho;
    for (Party sender : kStandardOrder) {
      const BellIndex b = sender == Party::kAlice ? o.ae
                          : sender == Party::kBob ? o.bf
                                                  : o.cg;
      projected = apply_left(bell_projectors()[b.value()], measured_pair(sender),
                             projected);
    }
    out[o.index()] = projected.trace().real();
  }
  return out;
}

void check_states(std::span<const TelecloningParams> grid,
                  VerificationReport& report) {
  const std::string section = "states";
  double norm_dev = 0.0;
  double support_dev = 0.0;
  for (const TelecloningParams& params : grid) {
    const PureState psi = telecloning_state(params);
    norm_dev = std::max(norm_dev, std::abs(psi.norm_squared() - 1.0));
    for (double alpha : {0.0, 1.0}) {
      const PureState edge =
          telecloning_state(TelecloningParams::make(alpha, std::nullopt, params.p()));
      const std::set<std::size_t> support =
          alpha == 1.0 ? std::set<std::size_t>{0b000, 0b101, 0b110}
                       : std::set<std::size_t>{0b111, 0b010, 0b001};
      for (std::size_t i = 0; i < edge.dim(); ++i) {
        if (!support.contains(i)) support_dev = std::max(support_dev, std::abs(edge[i]));
      }
    }
  }
  report.add(section, "diluted state norm", Relation::kAtMost,
             kStructuralTolerance, norm_dev);
  report.add(section, "diluted state support at alpha in {0,1}",
             Relation::kAtMost, kStructuralTolerance, support_dev);

  double ortho_dev = 0.0;
  double projector_dev = 0.0;
  DenseOperator sum = DenseOperator::zero(4);
  for (int i = 0; i < 4; ++i) {
    const PureState bi = bell_state(BellIndex(i));
    for (int j = 0; j < 4; ++j) {
      const PureState bj = bell_state(BellIndex(j));
      Complex overlap = 0.0;
      for (std::size_t k = 0; k < 4; ++k) overlap += std::conj(bi[k]) * bj[k];
      ortho_dev = std::max(ortho_dev, std::abs(overlap - (i == j ? 1.0 : 0.0)));
    }
    const DenseOperator& p = bell_projectors()[i];
    projector_dev = std::max({projector_dev, (p * p).max_abs_diff(p),
                              p.adjoint().max_abs_diff(p)});
    sum += p;
  }
  projector_dev = std::max(projector_dev, sum.max_abs_diff(DenseOperator::identity(4)));
  report.add(section, "Bell states orthonormal", Relation::kAtMost,
             kStructuralTolerance, ortho_dev);
  report.add(section, "Bell projectors idempotent, Hermitian, complete",
             Relation::kAtMost, kStructuralTolerance, projector_dev);

  // Swap (D,E) <-> (F,G) on the Smolin resource.
  const DenseOperator rho = smolin_state().density_matrix();
  DenseOperator swapped = DenseOperator::zero(16);
  for (std::size_t r = 0; r < 16; ++r) {
    for (std::size_t c = 0; c < 16; ++c) {
      const auto swap = [](std::size_t i) { return ((i & 3) << 2) | (i >> 2); };
      swapped(swap(r), swap(c)) = rho(r, c);
    }
  }
  report.add(section, "Smolin resource symmetric under (D,E)<->(F,G)",
             Relation::kAtMost, kStructuralTolerance, swapped.max_abs_diff(rho));
}

void check_pauli(const CorrectionTable& table, std::span<const TelecloningParams> grid,
                 VerificationReport& report) {
  const std::string section = "pauli-algebra";
  int law_violations = 0;
  for (PauliLabel a : kAllPauliLabels) {
    if (pauli_mul_mod_phase(PauliLabel::kI, a) != a) ++law_violations;
    if (pauli_mul_mod_phase(a, a) != PauliLabel::kI) ++law_violations;
    for (PauliLabel b : kAllPauliLabels) {
      if (pauli_mul_mod_phase(a, b) != pauli_mul_mod_phase(b, a)) ++law_violations;
      for (PauliLabel c : kAllPauliLabels) {
        if (pauli_mul_mod_phase(pauli_mul_mod_phase(a, b), c) !=
            pauli_mul_mod_phase(a, pauli_mul_mod_phase(b, c))) {
          ++law_violations;
        }
      }
    }
  }
  report.add(section, "Klein four-group laws (violations)", Relation::kAtMost,
             0.0, law_violations);

  double oracle_dev = 0.0;
  std::array<int, 4> class_sizes{};
  for (const OutcomeTriple& o : all_outcomes()) {
    const DenseOperator product = pauli_matrix(pauli_for(o.ae)) *
                                  pauli_matrix(pauli_for(o.bf)) *
                                  pauli_matrix(pauli_for(o.cg));
    const PauliLabel c = table[o.index()];
    const DenseOperator sigma = pauli_matrix(c);
    const Complex phase = 0.5 * (sigma.adjoint() * product).trace();
    oracle_dev = std::max({oracle_dev, std::abs(std::abs(phase) - 1.0),
                           product.max_abs_diff(phase * sigma)});
    ++class_sizes[to_int(c)];
  }
  report.add(section, "correction table matches 2x2 matrix products",
             Relation::kAtMost, kStructuralTolerance, oracle_dev);
  int size_dev = 0;
  for (int s : class_sizes) size_dev = std::max(size_dev, std::abs(s - 16));
  report.add(section, "each correction class has 16 outcomes",
             Relation::kAtMost, 0.0, size_dev);

  std::set<int> class_one;
  for (const OutcomeTriple& o : all_outcomes()) {
    if (table[o.index()] == PauliLabel::kI) class_one.insert(o.index());
  }
  std::set<int> reference;
  for (const OutcomeTriple& o : reference_identity_class()) reference.insert(o.index());
  std::vector<int> mismatched;
  std::set_symmetric_difference(class_one.begin(), class_one.end(),
                                reference.begin(), reference.end(),
                                std::back_inserter(mismatched));
  report.add(section, "class I equals the explicit 16-term set (mismatches)",
             Relation::kAtMost, 0.0, static_cast<double>(mismatched.size()));

  // The 12 listed GHZ outcomes are the class-I outcomes reachable with GHZ.
  int reachable_mismatch = 0;
  for (const TelecloningParams& params : grid) {
    if (params.p() <= 0.0 || params.p() >= 1.0) continue;
    std::set<int> reachable_class_one;
    for (const BranchRecord& b : enumerate_branches(ResourceKind::kGhz, params, table)) {
      if (b.reachable && class_one.contains(b.outcome.index())) {
        reachable_class_one.insert(b.outcome.index());
      }
    }
    std::set<int> listed;
    for (const OutcomeTriple& o : reference_ghz_identity_outcomes()) listed.insert(o.index());
    if (reachable_class_one != listed) ++reachable_mismatch;
  }
  report.add(section, "listed GHZ identity outcomes = reachable class I (grid points failing)",
             Relation::kAtMost, 0.0, reachable_mismatch);
}

void check_protocol(const CorrectionTable& table,
                    std::span<const TelecloningParams> grid,
                    VerificationReport& report) {
  const std::string section = "locc-protocol";
  double ghz_recovery = 0.0;
  double smolin_recovery = 0.0;
  double sum_dev = 0.0;
  double headline_dev = 0.0;
  double structure_dev = 0.0;
  int nonzero_count_dev = 0;
  double order_dev = 0.0;

  for (const TelecloningParams& params : grid) {
    const double p = params.p();
    const double q = params.q();
    const double scale = 16.0 * params.normalizer();

    for (ResourceKind kind : {ResourceKind::kGhz, ResourceKind::kSmolin}) {
      const std::vector<BranchRecord> branches = enumerate_branches(kind, params, table);
      double total = 0.0;
      for (const BranchRecord& b : branches) total += b.probability;
      sum_dev = std::max(sum_dev, std::abs(total - 1.0));

      for (const MeasurementOrder& order : all_orders()) {
        const std::vector<BranchRecord> permuted =
            enumerate_branches(kind, params, table, order);
        order_dev = std::max(order_dev, max_table_diff(branches, permuted));
        for (std::size_t i = 0; i < branches.size(); ++i) {
          if (!branches[i].reachable) continue;
          order_dev = std::max(
              order_dev,
              1.0 - fidelity(branches[i].d_state, permuted[i].d_state));
        }
      }

      if (kind == ResourceKind::kGhz) {
        int nonzero = 0;
        for (const BranchRecord& b : branches) {
          if (b.reachable) {
            ghz_recovery = std::max(ghz_recovery, 1.0 - b.fidelity);
            ++nonzero;
          }
          structure_dev = std::max(
              structure_dev,
              std::abs(b.probability - ghz_branch_weight(b.outcome, p, q) / scale));
        }
        const int expected_nonzero = 16 * (1 + (p > 0.0) + (q > 0.0));
        nonzero_count_dev = std::max(nonzero_count_dev, std::abs(nonzero - expected_nonzero));
        headline_dev = std::max(
            {headline_dev,
             std::abs(branches[triple(0, 0, 0).index()].probability - 1.0 / scale),
             std::abs(branches[triple(2, 0, 2).index()].probability - p * p / scale),
             std::abs(branches[triple(2, 2, 0).index()].probability - q * q / scale)});
      } else {
        for (const MemberBranch& m : enumerate_member_branches(kind, params, table)) {
          smolin_recovery = std::max(smolin_recovery, 1.0 - m.fidelity);
        }
      }
    }
  }
  report.add(section, "GHZ unit recovery (1 - worst fidelity)", Relation::kAtMost,
             kStructuralTolerance, ghz_recovery);
  report.add(section, "Smolin unit recovery over 64 x 4 member branches",
             Relation::kAtMost, kStructuralTolerance, smolin_recovery);
  report.add(section, "branch probabilities sum to 1", Relation::kAtMost,
             kStructuralTolerance, sum_dev);
  report.add(section, "GHZ P(000)=1/16N, P(202)=p^2/16N, P(220)=q^2/16N",
             Relation::kAtMost, kStructuralTolerance, headline_dev);
  report.add(section, "GHZ branch probabilities are c^2/16N, c in {0,1,p,q}",
             Relation::kAtMost, kStructuralTolerance, structure_dev);
  report.add(section, "GHZ nonzero branch count (deviation)", Relation::kAtMost,
             0.0, nonzero_count_dev);
  report.add(section, "measurement-order independence", Relation::kAtMost,
             kStructuralTolerance, order_dev);

  // Alpha independence of the GHZ table at fixed p.
  double alpha_dev = 0.0;
  std::set<double> ps;
  for (const TelecloningParams& params : grid) ps.insert(params.p());
  for (double p : ps) {
    const std::vector<BranchRecord> base = enumerate_branches(
        ResourceKind::kGhz, TelecloningParams::make(1.0, std::nullopt, p), table);
    for (double alpha : {0.0, 0.28, 0.6}) {
      alpha_dev = std::max(
          alpha_dev,
          max_table_diff(base, enumerate_branches(
                                   ResourceKind::kGhz,
                                   TelecloningParams::make(alpha, std::nullopt, p),
                                   table)));
    }
  }
  report.add(section, "GHZ table independent of alpha", Relation::kAtMost,
             kStructuralTolerance, alpha_dev);

  // Ensemble route vs dense density-matrix route, at the first grid point.
  double route_dev = 0.0;
  for (ResourceKind kind : {ResourceKind::kGhz, ResourceKind::kSmolin}) {
    const OutcomeProbabilities dense = dense_route_probabilities(kind, grid.front());
    const std::vector<BranchRecord> ensemble = enumerate_branches(kind, grid.front(), table);
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
      route_dev = std::max(route_dev, std::abs(dense[i] - ensemble[i].probability));
    }
  }
  report.add(section, "ensemble and density-matrix statistics agree",
             Relation::kAtMost, kStructuralTolerance, route_dev);
}

void check_analysis(std::span<const TelecloningParams> grid,
                    VerificationReport& report) {
  const std::string section = "analysis";
  double uniform_dev = 0.0;
  double total_dev = 0.0;
  for (const TelecloningParams& params : grid) {
    for (ResourceKind kind : {ResourceKind::kGhz, ResourceKind::kSmolin}) {
      const DistributionTable table = exact_distribution(kind, params);
      total_dev = std::max(total_dev, std::abs(table.total() - 1.0));
      if (kind == ResourceKind::kSmolin) {
        for (double prob : table.probabilities) {
          uniform_dev = std::max(uniform_dev, std::abs(prob - kUniformProbability));
        }
      }
    }
  }
  report.add(section, "exact distributions sum to 1", Relation::kAtMost,
             kStructuralTolerance, total_dev);
  report.add(section, "Smolin outcomes uniform at 1/64", Relation::kAtMost,
             kStructuralTolerance, uniform_dev);

  const auto two_point = [](double a1, double p1, double a2, double p2) {
    return std::vector<Hypothesis>{
        {0.5, TelecloningParams::make(a1, std::nullopt, p1)},
        {0.5, TelecloningParams::make(a2, std::nullopt, p2)}};
  };
  std::vector<std::vector<Hypothesis>> priors = {
      two_point(0.6, 0.6, 0.6, 0.9), two_point(0.0, 0.7, 1.0, 0.7),
      two_point(0.28, 0.5, 0.8, 1.0)};
  std::vector<Hypothesis> whole_grid;
  for (const TelecloningParams& params : grid) {
    whole_grid.push_back({1.0 / static_cast<double>(grid.size()), params});
  }
  priors.push_back(whole_grid);

  double smolin_mi = 0.0;
  double bound_dev = 0.0;
  for (const std::vector<Hypothesis>& prior : priors) {
    for (ResourceKind kind : {ResourceKind::kGhz, ResourceKind::kSmolin}) {
      const double mi = mutual_information(kind, prior).mutual_information_bits;
      if (kind == ResourceKind::kSmolin) smolin_mi = std::max(smolin_mi, std::abs(mi));
      const double upper = std::log2(static_cast<double>(prior.size()));
      bound_dev = std::max({bound_dev, -mi, mi - upper});
    }
  }
  report.add(section, "Smolin leaks nothing (worst |I| in bits)", Relation::kAtMost,
             kStructuralTolerance, smolin_mi);
  report.add(section, "0 <= I <= log2 |prior|", Relation::kAtMost,
             kStructuralTolerance, std::max(bound_dev, 0.0));
  const std::vector<Hypothesis> p_prior = priors[0];
  report.add(section, "GHZ leaks p: I bits for p in {0.6, 0.9}",
             Relation::kGreaterThan, 1e-3,
             mutual_information(ResourceKind::kGhz, p_prior).mutual_information_bits);
  report.add(section, "GHZ hides alpha: I bits for alpha in {0, 1} at p=0.7",
             Relation::kAtMost, kStructuralTolerance,
             std::abs(mutual_information(ResourceKind::kGhz, priors[1])
                          .mutual_information_bits));
}

void check_sampling(const VerifyOptions& options, VerificationReport& report) {
  const std::string section = "sampling";
  const TelecloningParams params = TelecloningParams::make(0.6, std::nullopt, 0.7);
  for (ResourceKind kind : {ResourceKind::kGhz, ResourceKind::kSmolin}) {
    const SampleSummary summary =
        sample_runs(kind, params, options.shots, options.seed, options.corrections);
    const GoodnessOfFit fit = chi_square_test(
        summary.counts, exact_distribution(kind, params).probabilities);
    const std::string name(resource_name(kind));
    report.add(section, name + " chi-square statistic vs critical value",
               Relation::kAtMost, fit.critical_value,
               fit.impossible_outcome_observed
                   ? std::numeric_limits<double>::infinity()
                   : fit.statistic);
    report.add(section, name + " sampled runs: 1 - worst fidelity",
               Relation::kAtMost, kAccumulatedTolerance, 1.0 - summary.min_fidelity);
    const bool same = sample_distribution(kind, params, 1000, options.seed) ==
                      sample_distribution(kind, params, 1000, options.seed);
    report.add(section, name + " fixed seed reproduces counts (mismatches)",
               Relation::kAtMost, 0.0, same ? 0.0 : 1.0);
  }
}

}  // namespace

double DistributionTable::total() const {
  double acc = 0.0;
  for (double p : probabilities) acc += p;
  return acc;
}

DistributionTable exact_distribution(ResourceKind kind,
                                     const TelecloningParams& params) {
  DistributionTable table{kind, params, {}};
  for (const BranchRecord& b : enumerate_branches(kind, params)) {
    table.probabilities[b.outcome.index()] = b.probability;
  }
  return table;
}

double shannon_entropy_bits(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

LeakageReport mutual_information(ResourceKind kind,
                                 std::span<const Hypothesis> prior) {
  if (prior.empty()) throw ContractViolation("prior must not be empty");
  double total_weight = 0.0;
  for (const Hypothesis& h : prior) {
    if (!(h.weight > 0.0)) throw ContractViolation("prior weights must be positive");
    total_weight += h.weight;
  }
  if (std::abs(total_weight - 1.0) > kAccumulatedTolerance) {
    throw ContractViolation("prior weights must sum to 1");
  }

  LeakageReport report{kind, {prior.begin(), prior.end()}, 0.0, {}};
  OutcomeProbabilities mixture{};
  double conditional_entropy = 0.0;
  for (const Hypothesis& h : prior) {
    DistributionTable table = exact_distribution(kind, h.params);
    for (int i = 0; i < kNumOutcomes; ++i) {
      mixture[i] += h.weight * table.probabilities[i];
    }
    conditional_entropy += h.weight * shannon_entropy_bits(table.probabilities);
    report.conditionals.push_back(std::move(table));
  }
  report.mutual_information_bits =
      shannon_entropy_bits(mixture) - conditional_entropy;
  return report;
}

double chi_square_critical_value(int degrees_of_freedom, double significance) {
  if (degrees_of_freedom < 1 || !(significance > 0.0 && significance < 1.0)) {
    throw ContractViolation("chi-square: invalid degrees of freedom or significance");
  }
  const boost::math::chi_squared dist(degrees_of_freedom);
  return boost::math::quantile(boost::math::complement(dist, significance));
}

GoodnessOfFit chi_square_test(const OutcomeCounts& counts,
                              const OutcomeProbabilities& expected,
                              double significance) {
  std::uint64_t shots = 0;
  for (std::uint64_t c : counts) shots += c;
  if (shots == 0) throw ContractViolation("chi-square: no samples");

  GoodnessOfFit fit{0.0, -1, 0.0, 0.0, false, false};
  int bins = 0;
  for (int i = 0; i < kNumOutcomes; ++i) {
    if (expected[i] < kNegligibleProbability) {
      if (counts[i] != 0) fit.impossible_outcome_observed = true;
      continue;
    }
    ++bins;
    const double e = expected[i] * static_cast<double>(shots);
    const double d = static_cast<double>(counts[i]) - e;
    fit.statistic += d * d / e;
  }
  if (bins < 2) throw ContractViolation("chi-square: fewer than two possible outcomes");
  fit.degrees_of_freedom = bins - 1;
  fit.critical_value = chi_square_critical_value(fit.degrees_of_freedom, significance);
  const boost::math::chi_squared dist(fit.degrees_of_freedom);
  fit.p_value = boost::math::cdf(boost::math::complement(dist, fit.statistic));
  fit.passed = !fit.impossible_outcome_observed && fit.statistic <= fit.critical_value;
  return fit;
}

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::kAtMost:
      return "<=";
    case Relation::kAtLeast:
      return ">=";
    case Relation::kGreaterThan:
      return ">";
  }
  return "?";
}

void VerificationReport::add(std::string section, std::string name,
                             Relation relation, double bound, double observed) {
  bool passed = false;
  switch (relation) {
    case Relation::kAtMost:
      passed = observed <= bound;
      break;
    case Relation::kAtLeast:
      passed = observed >= bound;
      break;
    case Relation::kGreaterThan:
      passed = observed > bound;
      break;
  }
  checks_.push_back({std::move(section), std::move(name), relation, bound,
                     observed, passed});
}

void VerificationReport::append(const VerificationReport& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool VerificationReport::all_passed() const { return failure_count() == 0; }

std::size_t VerificationReport::failure_count() const {
  return static_cast<std::size_t>(std::count_if(
      checks_.begin(), checks_.end(), [](const CheckResult& c) { return !c.passed; }));
}

std::vector<TelecloningParams> default_grid() {
  std::vector<TelecloningParams> grid;
  for (double alpha : {0.0, 0.28, 0.6, 0.8, 1.0}) {
    for (double p : {0.5, 0.6, 0.7, 0.9, 1.0}) {
      grid.push_back(TelecloningParams::make(alpha, std::nullopt, p));
    }
  }
  return grid;
}

std::vector<TelecloningParams> dense_grid() {
  std::vector<TelecloningParams> grid;
  for (int a = -10; a <= 10; ++a) {
    for (int pi = 0; pi <= 20; ++pi) {
      grid.push_back(TelecloningParams::make(a / 10.0, std::nullopt, pi / 20.0));
    }
  }
  return grid;
}

VerificationReport verify_all(std::span<const TelecloningParams> grid,
                              const VerifyOptions& options) {
  if (grid.empty()) throw ContractViolation("verification grid is empty");
  VerificationReport report;
  check_states(grid, report);
  check_pauli(options.corrections, grid, report);
  check_protocol(options.corrections, grid, report);
  check_analysis(grid, report);
  if (options.include_sampling) check_sampling(options, report);
  report.append(bound_entanglement_suite());
  return report;
}

double smolin_min_pt_eigenvalue(std::span<const int> subset) {
  const std::vector<double> eig =
      hermitian_eigenvalues(partial_transpose(smolin_state().density_matrix(), subset));
  return eig.front();
}

double smolin_unlock_fidelity(BellIndex outcome) {
  constexpr std::array<int, 2> de = {0, 1};
  constexpr std::array<int, 2> fg = {2, 3};
  const MixedState rho = smolin_state();
  DenseOperator conditional = DenseOperator::zero(4);
  double probability = 0.0;
  for (const MixedState::Member& m : rho.ensemble()) {
    std::vector<Complex> v = apply_on_targets(bell_projectors()[outcome.value()], de,
                                              m.state.amplitudes(), 4);
    double n2 = 0.0;
    for (const Complex& z : v) n2 += std::norm(z);
    if (n2 <= kNegligibleProbability) continue;
    probability += m.weight * n2;
    conditional += (m.weight * n2) *
                   partial_trace(PureState::normalized(4, std::move(v)), fg);
  }
  if (probability <= kNegligibleProbability) return 0.0;
  conditional *= 1.0 / probability;
  return fidelity(bell_state(outcome), conditional);
}

VerificationReport bound_entanglement_suite() {
  const std::string section = "bound-entanglement";
  VerificationReport report;

  const DenseOperator rho = smolin_state().density_matrix();
  const std::vector<double> spectrum = hermitian_eigenvalues(rho);
  int rank = 0;
  for (double e : spectrum) rank += e > kAccumulatedTolerance;
  report.add(section, "resource is Hermitian with unit trace",
             Relation::kAtMost, kStructuralTolerance,
             std::max(rho.max_abs_diff(rho.adjoint()), std::abs(rho.trace() - 1.0)));
  report.add(section, "resource is positive semidefinite (min eigenvalue)",
             Relation::kAtLeast, kPsdTolerance, spectrum.front());
  report.add(section, "resource rank (deviation from 4)", Relation::kAtMost, 0.0,
             std::abs(rank - 4));

  const std::array<std::pair<const char*, std::array<int, 2>>, 3> cuts = {
      std::pair{"DE|FG", std::array<int, 2>{0, 1}},
      std::pair{"DF|EG", std::array<int, 2>{0, 2}},
      std::pair{"DG|EF", std::array<int, 2>{0, 3}}};
  for (const auto& [label, subset] : cuts) {
    report.add(section, std::string("PPT across ") + label + " (min eigenvalue)",
               Relation::kAtLeast, kPsdTolerance, smolin_min_pt_eigenvalue(subset));
  }

  for (int i = 0; i < 4; ++i) {
    report.add(section,
               "unlock: (D,E) outcome " + std::to_string(i) +
                   " leaves (F,G) in Phi_" + std::to_string(i) + " (1 - fidelity)",
               Relation::kAtMost, kStructuralTolerance,
               1.0 - smolin_unlock_fidelity(BellIndex(i)));
  }

  double marginal_dev = 0.0;
  const DenseOperator half_identity = 0.5 * DenseOperator::identity(2);
  for (int q = 0; q < 4; ++q) {
    const std::array<int, 1> keep = {q};
    marginal_dev = std::max(marginal_dev,
                            partial_trace(rho, keep).max_abs_diff(half_identity));
  }
  report.add(section, "single-qubit marginals are I/2", Relation::kAtMost,
             kStructuralTolerance, marginal_dev);
  return report;
}

const std::vector<OutcomeTriple>& reference_identity_class() {
  static const std::vector<OutcomeTriple> set = {
      triple(0, 0, 0), triple(0, 1, 1), triple(1, 0, 1), triple(1, 1, 0),
      triple(2, 2, 0), triple(2, 3, 1), triple(3, 2, 1), triple(3, 3, 0),
      triple(0, 2, 2), triple(0, 3, 3), triple(1, 2, 3), triple(1, 3, 2),
      triple(2, 0, 2), triple(2, 1, 3), triple(3, 0, 3), triple(3, 1, 2)};
  return set;
}

const std::vector<OutcomeTriple>& reference_ghz_identity_outcomes() {
  static const std::vector<OutcomeTriple> set = {
      triple(0, 0, 0), triple(0, 1, 1), triple(1, 0, 1), triple(1, 1, 0),
      triple(2, 0, 2), triple(3, 0, 3), triple(3, 1, 2), triple(2, 1, 3),
      triple(2, 2, 0), triple(3, 3, 0), triple(2, 3, 1), triple(3, 2, 1)};
  return set;
}

}  // namespace ricsim
