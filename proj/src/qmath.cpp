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

#include "ricsim/qmath.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ricsim {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

bool all_finite(std::span<const Complex> values) {
  return std::all_of(values.begin(), values.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double squared_norm(std::span<const Complex> values) {
  double acc = 0.0;
  for (const Complex& z : values) acc += std::norm(z);
  return acc;
}

void check_qubit_list(std::span<const int> qubits, int num_qubits,
                      const char* what) {
  if (qubits.empty()) {
    throw ContractViolation(std::string(what) + ": qubit list is empty");
  }
  std::vector<bool> seen(static_cast<std::size_t>(num_qubits), false);
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits) {
      throw ContractViolation(std::string(what) + ": qubit " +
                              std::to_string(q) + " out of range");
    }
    if (seen[static_cast<std::size_t>(q)]) {
      throw ContractViolation(std::string(what) + ": duplicate qubit " +
                              std::to_string(q));
    }
    seen[static_cast<std::size_t>(q)] = true;
  }
}

std::size_t bit_of(int qubit, int num_qubits) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

// offsets[local] is the full-register bit pattern of local index `local`
// over the ordered `qubits`, first qubit most significant.
std::vector<std::size_t> local_offsets(std::span<const int> qubits,
                                       int num_qubits) {
  const std::size_t k = qubits.size();
  std::vector<std::size_t> offsets(std::size_t{1} << k, 0);
  for (std::size_t local = 0; local < offsets.size(); ++local) {
    std::size_t full = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (local & (std::size_t{1} << (k - 1 - i))) {
        full |= bit_of(qubits[i], num_qubits);
      }
    }
    offsets[local] = full;
  }
  return offsets;
}

std::vector<int> complement(std::span<const int> qubits, int num_qubits) {
  std::vector<int> rest;
  for (int q = 0; q < num_qubits; ++q) {
    if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) {
      rest.push_back(q);
    }
  }
  return rest;
}

void check_completeness(std::span<const DenseOperator> projectors,
                        std::size_t dim) {
  if (projectors.empty()) {
    throw ContractViolation("measurement: empty projector set");
  }
  DenseOperator sum = DenseOperator::zero(dim);
  for (const DenseOperator& p : projectors) {
    if (p.dim() != dim) {
      throw ContractViolation("measurement: projector dimension mismatch");
    }
    sum += p;
  }
  if (sum.max_abs_diff(DenseOperator::identity(dim)) > kStructuralTolerance) {
    throw ContractViolation("measurement: projectors do not sum to identity");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DenseOperator

DenseOperator::DenseOperator(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (!is_power_of_two(dim_)) {
    throw ContractViolation("operator dimension must be a power of two");
  }
  if (entries_.size() != dim_ * dim_) {
    throw ContractViolation("operator entry count does not match dimension");
  }
  if (!all_finite(entries_)) {
    throw ContractViolation("operator has non-finite entries");
  }
}

DenseOperator DenseOperator::zero(std::size_t dim) {
  return DenseOperator(dim, std::vector<Complex>(dim * dim));
}

DenseOperator DenseOperator::identity(std::size_t dim) {
  DenseOperator out = zero(dim);
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

int DenseOperator::num_qubits() const { return log2_exact(dim_); }

DenseOperator DenseOperator::adjoint() const {
  DenseOperator out = zero(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

DenseOperator DenseOperator::transpose() const {
  DenseOperator out = zero(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

Complex DenseOperator::trace() const {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) acc += (*this)(i, i);
  return acc;
}

DenseOperator& DenseOperator::operator+=(const DenseOperator& other) {
  if (other.dim_ != dim_) throw ContractViolation("operator dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

DenseOperator& DenseOperator::operator*=(Complex scale) {
  for (Complex& z : entries_) z *= scale;
  return *this;
}

double DenseOperator::max_abs_diff(const DenseOperator& other) const {
  if (other.dim_ != dim_) throw ContractViolation("operator dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
  }
  return worst;
}

bool DenseOperator::is_hermitian(double tol) const {
  return max_abs_diff(adjoint()) <= tol;
}

DenseOperator operator+(DenseOperator a, const DenseOperator& b) {
  a += b;
  return a;
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) throw ContractViolation("operator dimension mismatch");
  const std::size_t n = a.dim();
  DenseOperator out = DenseOperator::zero(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

DenseOperator operator*(Complex scale, DenseOperator a) {
  a *= scale;
  return a;
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  DenseOperator out = DenseOperator::zero(na * nb);
  for (std::size_t ra = 0; ra < na; ++ra) {
    for (std::size_t ca = 0; ca < na; ++ca) {
      for (std::size_t rb = 0; rb < nb; ++rb) {
        for (std::size_t cb = 0; cb < nb; ++cb) {
          out(ra * nb + rb, ca * nb + cb) = a(ra, ca) * b(rb, cb);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// PureState / MixedState

PureState::PureState(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) {
    throw ContractViolation("pure state: unsupported qubit count " +
                            std::to_string(num_qubits_));
  }
  if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
    throw ContractViolation("pure state: amplitude count must be 2^num_qubits");
  }
  if (!all_finite(amplitudes_)) {
    throw ContractViolation("pure state: non-finite amplitude");
  }
  if (std::abs(squared_norm(amplitudes_) - 1.0) > kStructuralTolerance) {
    throw ContractViolation("pure state: squared norm differs from 1");
  }
}

PureState PureState::basis(int num_qubits, std::size_t index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits ||
      index >= (std::size_t{1} << num_qubits)) {
    throw ContractViolation("basis state index out of range");
  }
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  amps[index] = 1.0;
  return PureState(num_qubits, std::move(amps));
}

PureState PureState::normalized(int num_qubits, std::vector<Complex> amplitudes) {
  const double n2 = squared_norm(amplitudes);
  if (!(n2 > kNegligibleProbability)) {
    throw ContractViolation("cannot normalize a zero vector");
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& z : amplitudes) z *= inv;
  return PureState(num_qubits, std::move(amplitudes));
}

double PureState::norm_squared() const { return squared_norm(amplitudes_); }

DenseOperator PureState::density_matrix() const {
  const std::size_t n = dim();
  DenseOperator out = DenseOperator::zero(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      out(r, c) = amplitudes_[r] * std::conj(amplitudes_[c]);
    }
  }
  return out;
}

MixedState::MixedState(std::vector<Member> ensemble)
    : num_qubits_(0), ensemble_(std::move(ensemble)) {
  if (ensemble_.empty()) throw ContractViolation("mixed state: empty ensemble");
  num_qubits_ = ensemble_.front().state.num_qubits();
  double total = 0.0;
  for (const Member& m : ensemble_) {
    if (m.state.num_qubits() != num_qubits_) {
      throw ContractViolation("mixed state: members differ in qubit count");
    }
    if (!(m.weight > 0.0 && m.weight <= 1.0)) {
      throw ContractViolation("mixed state: weight outside (0, 1]");
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > kStructuralTolerance) {
    throw ContractViolation("mixed state: weights do not sum to 1");
  }
}

MixedState MixedState::from_pure(PureState state) {
  return MixedState({Member{1.0, std::move(state)}});
}

DenseOperator MixedState::density_matrix() const {
  const std::size_t n = std::size_t{1} << num_qubits_;
  DenseOperator out = DenseOperator::zero(n);
  for (const Member& m : ensemble_) out += m.weight * m.state.density_matrix();
  return out;
}

// ---------------------------------------------------------------------------
// Operations

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Complex> amps;
  amps.reserve(a.dim() * b.dim());
  for (const Complex& x : a.amplitudes()) {
    for (const Complex& y : b.amplitudes()) amps.push_back(x * y);
  }
  return PureState(a.num_qubits() + b.num_qubits(), std::move(amps));
}

std::vector<Complex> apply_on_targets(const DenseOperator& op,
                                      std::span<const int> targets,
                                      std::span<const Complex> amplitudes,
                                      int num_qubits) {
  check_qubit_list(targets, num_qubits, "apply");
  if (op.dim() != (std::size_t{1} << targets.size())) {
    throw ContractViolation("apply: operator dimension does not match targets");
  }
  if (amplitudes.size() != (std::size_t{1} << num_qubits)) {
    throw ContractViolation("apply: amplitude count does not match register");
  }
  const std::vector<std::size_t> offsets = local_offsets(targets, num_qubits);
  const std::size_t mask = offsets.back();
  const std::size_t local_dim = op.dim();

  struct Entry {
    std::size_t row_offset;
    std::size_t col_offset;
    Complex value;
  };
  std::vector<Entry> nonzero;
  for (std::size_t r = 0; r < local_dim; ++r) {
    for (std::size_t c = 0; c < local_dim; ++c) {
      if (op(r, c) != Complex{}) nonzero.push_back({offsets[r], offsets[c], op(r, c)});
    }
  }

  std::vector<Complex> out(amplitudes.size());
  for (std::size_t base = 0; base < amplitudes.size(); ++base) {
    if (base & mask) continue;
    for (const Entry& e : nonzero) {
      out[base | e.row_offset] += e.value * amplitudes[base | e.col_offset];
    }
  }
  return out;
}

DenseOperator apply_left(const DenseOperator& op, std::span<const int> targets,
                         const DenseOperator& rho) {
  const std::size_t dim = rho.dim();
  DenseOperator out = DenseOperator::zero(dim);
  std::vector<Complex> column(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) column[r] = rho(r, c);
    const std::vector<Complex> mapped =
        apply_on_targets(op, targets, column, rho.num_qubits());
    for (std::size_t r = 0; r < dim; ++r) out(r, c) = mapped[r];
  }
  return out;
}

PureState apply_local(const DenseOperator& op, std::span<const int> targets,
                      const PureState& s) {
  std::vector<Complex> out =
      apply_on_targets(op, targets, s.amplitudes(), s.num_qubits());
  if (std::abs(squared_norm(out) - 1.0) > kStructuralTolerance) {
    throw ContractViolation("apply_local: operator is not norm-preserving");
  }
  return PureState(s.num_qubits(), std::move(out));
}

std::vector<double> outcome_probabilities(
    std::span<const DenseOperator> projectors, std::span<const int> targets,
    const PureState& s) {
  check_qubit_list(targets, s.num_qubits(), "measure");
  check_completeness(projectors, std::size_t{1} << targets.size());
  std::vector<double> probs;
  probs.reserve(projectors.size());
  for (const DenseOperator& p : projectors) {
    probs.push_back(squared_norm(
        apply_on_targets(p, targets, s.amplitudes(), s.num_qubits())));
  }
  return probs;
}

MeasurementResult measure_projective(std::span<const DenseOperator> projectors,
                                     std::span<const int> targets,
                                     const PureState& s, double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw ContractViolation("measure: u must lie in [0, 1)");
  }
  check_qubit_list(targets, s.num_qubits(), "measure");
  check_completeness(projectors, std::size_t{1} << targets.size());
  std::vector<std::vector<Complex>> projected;
  std::vector<double> probs;
  for (const DenseOperator& p : projectors) {
    projected.push_back(apply_on_targets(p, targets, s.amplitudes(), s.num_qubits()));
    probs.push_back(squared_norm(projected.back()));
  }

  std::size_t chosen = probs.size();
  std::size_t last_possible = probs.size();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < kNegligibleProbability) continue;
    last_possible = i;
    cumulative += probs[i];
    if (u < cumulative) {
      chosen = i;
      break;
    }
  }
  if (last_possible == probs.size()) {
    throw InvalidMeasurement("measure: every outcome has negligible probability");
  }
  // Rounding can leave the cumulative sum a hair below u.
  if (chosen == probs.size()) chosen = last_possible;

  return {chosen, probs[chosen],
          PureState::normalized(s.num_qubits(), std::move(projected[chosen]))};
}

DenseOperator partial_trace(const DenseOperator& rho, std::span<const int> keep) {
  const int n = rho.num_qubits();
  check_qubit_list(keep, n, "partial_trace");
  const std::vector<int> env = complement(keep, n);
  const std::vector<std::size_t> keep_off = local_offsets(keep, n);
  const std::vector<std::size_t> env_off =
      env.empty() ? std::vector<std::size_t>{0} : local_offsets(env, n);

  DenseOperator out = DenseOperator::zero(keep_off.size());
  for (std::size_t r = 0; r < keep_off.size(); ++r) {
    for (std::size_t c = 0; c < keep_off.size(); ++c) {
      Complex acc = 0.0;
      for (std::size_t e : env_off) acc += rho(keep_off[r] | e, keep_off[c] | e);
      out(r, c) = acc;
    }
  }
  return out;
}

DenseOperator partial_trace(const PureState& s, std::span<const int> keep) {
  const int n = s.num_qubits();
  check_qubit_list(keep, n, "partial_trace");
  const std::vector<int> env = complement(keep, n);
  const std::vector<std::size_t> keep_off = local_offsets(keep, n);
  const std::vector<std::size_t> env_off =
      env.empty() ? std::vector<std::size_t>{0} : local_offsets(env, n);

  DenseOperator out = DenseOperator::zero(keep_off.size());
  for (std::size_t r = 0; r < keep_off.size(); ++r) {
    for (std::size_t c = 0; c < keep_off.size(); ++c) {
      Complex acc = 0.0;
      for (std::size_t e : env_off) {
        acc += s[keep_off[r] | e] * std::conj(s[keep_off[c] | e]);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

DenseOperator partial_trace(const MixedState& m, std::span<const int> keep) {
  check_qubit_list(keep, m.num_qubits(), "partial_trace");
  DenseOperator out = DenseOperator::zero(std::size_t{1} << keep.size());
  for (const MixedState::Member& member : m.ensemble()) {
    out += member.weight * partial_trace(member.state, keep);
  }
  return out;
}

DenseOperator partial_transpose(const DenseOperator& rho,
                                std::span<const int> subset) {
  const int n = rho.num_qubits();
  check_qubit_list(subset, n, "partial_transpose");
  std::size_t mask = 0;
  for (int q : subset) mask |= bit_of(q, n);

  const std::size_t dim = rho.dim();
  DenseOperator out = DenseOperator::zero(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const std::size_t src_r = (r & ~mask) | (c & mask);
      const std::size_t src_c = (c & ~mask) | (r & mask);
      out(r, c) = rho(src_r, src_c);
    }
  }
  return out;
}

double fidelity(const PureState& target, const PureState& achieved) {
  if (target.dim() != achieved.dim()) {
    throw ContractViolation("fidelity: dimension mismatch");
  }
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < target.dim(); ++i) {
    overlap += std::conj(target[i]) * achieved[i];
  }
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

double fidelity(const PureState& target, const DenseOperator& achieved) {
  if (target.dim() != achieved.dim()) {
    throw ContractViolation("fidelity: dimension mismatch");
  }
  Complex acc = 0.0;
  for (std::size_t r = 0; r < target.dim(); ++r) {
    for (std::size_t c = 0; c < target.dim(); ++c) {
      acc += std::conj(target[r]) * achieved(r, c) * target[c];
    }
  }
  return std::clamp(acc.real(), 0.0, 1.0);
}

std::vector<double> hermitian_eigenvalues(const DenseOperator& h) {
  if (!h.is_hermitian(kAccumulatedTolerance)) {
    throw ContractViolation("eigenvalues: operator is not Hermitian");
  }
  // Real symmetric embedding [[Re, -Im], [Im, Re]]; every eigenvalue of h
  // appears exactly twice in the spectrum of the embedding.
  const auto n = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXd embed(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const Complex z = h(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      embed(r, c) = z.real();
      embed(r, c + n) = -z.imag();
      embed(r + n, c) = z.imag();
      embed(r + n, c + n) = z.real();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(embed,
                                                        Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& all = solver.eigenvalues();
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < 2 * n; i += 2) values.push_back(all(i));
  return values;
}

}  // namespace ricsim
