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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Dense complex linear algebra for small multi-qubit registers.
//
// Basis convention: qubit 0 is the most significant bit of a basis index, so
// for a 3-qubit register the index of |q0 q1 q2> is 4*q0 + 2*q1 + q2. Every
// operator acting on an ordered target list uses the same convention locally:
// the first target is the most significant bit of the operator's index.

namespace ricsim {

using Complex = std::complex<double>;

/// Thrown when a caller breaks an operation's precondition.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a measurement has no outcome with non-negligible probability.
class InvalidMeasurement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kStructuralTolerance = 1e-12;
inline constexpr double kAccumulatedTolerance = 1e-9;
inline constexpr double kPsdTolerance = -1e-10;
inline constexpr double kNegligibleProbability = 1e-14;
inline constexpr int kMaxQubits = 8;

class DenseOperator {
 public:
  /// Row-major `dim`x`dim` matrix; `dim` must be a power of two.
  DenseOperator(std::size_t dim, std::vector<Complex> entries);

  static DenseOperator zero(std::size_t dim);
  static DenseOperator identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  int num_qubits() const;
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  Complex& operator()(std::size_t row, std::size_t col) {
    return entries_[row * dim_ + col];
  }
  std::span<const Complex> entries() const { return entries_; }

  DenseOperator adjoint() const;
  DenseOperator transpose() const;
  Complex trace() const;

  DenseOperator& operator+=(const DenseOperator& other);
  DenseOperator& operator*=(Complex scale);

  /// Largest absolute entrywise difference.
  double max_abs_diff(const DenseOperator& other) const;
  bool is_hermitian(double tol = kStructuralTolerance) const;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

DenseOperator operator+(DenseOperator a, const DenseOperator& b);
DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);
DenseOperator operator*(Complex scale, DenseOperator a);
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

class PureState {
 public:
  /// Validates length 2^num_qubits, finite amplitudes and unit norm.
  PureState(int num_qubits, std::vector<Complex> amplitudes);

  static PureState basis(int num_qubits, std::size_t index);
  /// Rescales `amplitudes` to unit norm; rejects a (near) zero vector.
  static PureState normalized(int num_qubits, std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const;
  /// |s><s|
  DenseOperator density_matrix() const;

 private:
  int num_qubits_;
  std::vector<Complex> amplitudes_;
};

/// Ensemble of weighted pure states. Weights are positive and sum to one.
class MixedState {
 public:
  struct Member {
    double weight;
    PureState state;
  };

  explicit MixedState(std::vector<Member> ensemble);
  static MixedState from_pure(PureState state);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Member>& ensemble() const { return ensemble_; }

  DenseOperator density_matrix() const;

 private:
  int num_qubits_;
  std::vector<Member> ensemble_;
};

/// Amplitude of index (i * 2^nb + j) is a[i] * b[j].
PureState tensor(const PureState& a, const PureState& b);

/// Applies `op` to `targets` of a raw amplitude vector over `num_qubits`
/// qubits. No normalization is performed.
std::vector<Complex> apply_on_targets(const DenseOperator& op,
                                      std::span<const int> targets,
                                      std::span<const Complex> amplitudes,
                                      int num_qubits);

/// (op on `targets`) * rho, for a full-register operator `rho`.
DenseOperator apply_left(const DenseOperator& op, std::span<const int> targets,
                         const DenseOperator& rho);

/// Applies a norm-preserving operator to the ordered `targets`. Throws
/// ContractViolation on dimension mismatch, bad targets, or when the result
/// is no longer normalized.
PureState apply_local(const DenseOperator& op, std::span<const int> targets,
                      const PureState& s);

struct MeasurementResult {
  std::size_t outcome;
  double probability;
  PureState post_state;
};

/// <s|P_i|s> for every projector. Checks completeness of the projector set.
std::vector<double> outcome_probabilities(
    std::span<const DenseOperator> projectors, std::span<const int> targets,
    const PureState& s);

/// Projective measurement with the outcome selected by inverse CDF against
/// `u` in [0, 1).
MeasurementResult measure_projective(std::span<const DenseOperator> projectors,
                                     std::span<const int> targets,
                                     const PureState& s, double u);

/// Reduced density matrix on `keep`, in the order given.
DenseOperator partial_trace(const DenseOperator& rho, std::span<const int> keep);
DenseOperator partial_trace(const PureState& s, std::span<const int> keep);
DenseOperator partial_trace(const MixedState& m, std::span<const int> keep);

/// Transposes the tensor factor of `rho` belonging to the qubits in `subset`.
DenseOperator partial_transpose(const DenseOperator& rho,
                                std::span<const int> subset);

/// |<target|achieved>|^2
double fidelity(const PureState& target, const PureState& achieved);
/// <target|rho|target>
double fidelity(const PureState& target, const DenseOperator& achieved);

/// Ascending eigenvalues of a Hermitian operator.
std::vector<double> hermitian_eigenvalues(const DenseOperator& h);

}  // namespace ricsim
