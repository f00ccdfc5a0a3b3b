#pragma once

#include <Eigen/Dense>

#include "kickedtop/moment_set.hpp"
#include "kickedtop/spin.hpp"

namespace qkt {

/// Reduced state of a qubit pair in the basis (|uu>, |ud>, |du>, |dd>),
/// |u> being the +1 eigenstate of sigma_z and the first factor qubit 1.
class TwoQubitDensity {
 public:
  /// Checks hermiticity and unit trace (1e-10).
  explicit TwoQubitDensity(const Eigen::Matrix4cd& matrix);

  const Eigen::Matrix4cd& matrix() const { return matrix_; }
  Complex operator()(int row, int col) const { return matrix_(row, col); }

  Eigen::Vector4d eigenvalues() const;

 private:
  Eigen::Matrix4cd matrix_;
};

/// Pauli matrices in the |u>, |d> ordering.
const Eigen::Matrix2cd& pauli(int axis);

/// kron(a, b) with a acting on qubit 1.
Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

/// Pair state of a permutation-symmetric N-qubit state from its collective
/// moments:
///   rho = 1/4 [ I + sum_a s_a (sigma_a x I + I x sigma_a)
///                 + sum_ab t_ab sigma_a x sigma_b ]
///   s_a  = 2<J_a>/N
///   t_ab = (2<{J_a, J_b}> - N delta_ab) / (N(N-1))
TwoQubitDensity reduce_to_pair(const MomentSet& moments, int qubits);

/// Largest N accepted by pair_oracle.
inline constexpr int kPairOracleMaxQubits = 12;

/// Reference reduction: expands the Dicke amplitudes over all 2^N product
/// states and traces out qubits 3..N explicitly.
TwoQubitDensity pair_oracle(const SpinState& state);

/// 1 - Tr(rho^2).
double linear_entropy(const TwoQubitDensity& rho);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), where l_i are the square
/// roots of the spectrum of rho (sy x sy) rho* (sy x sy). They are evaluated
/// as singular values of tau = W^T (sy x sy) W with rho = W W^dag, which
/// keeps roundoff-level eigenvalues of rho from entering through a square
/// root. Throws NumericalError if rho has an eigenvalue below -1e-10.
double concurrence(const TwoQubitDensity& rho);

}  // namespace qkt
