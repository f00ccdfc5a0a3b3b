#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "kickedtop/moment_set.hpp"

namespace qkt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Raised when a computed quantity violates a numerical invariant
/// (non-unit norm, negative density-matrix eigenvalue, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// N qubits restricted to the permutation-symmetric sector, i.e. a spin
/// j = N/2 with Dicke basis |j,m>, m = -j..j (ascending).
class SpinSystem {
 public:
  explicit SpinSystem(int qubits);

  int qubits() const { return qubits_; }
  double j() const { return 0.5 * qubits_; }
  int dim() const { return qubits_ + 1; }

  /// Basis index of |j,m>; throws std::out_of_range if m is not one of
  /// -j, -j+1, ..., j.
  int index_of(double m) const;
  double m_at(int index) const { return index - j(); }

  friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

 private:
  int qubits_;
};

/// Unit-norm amplitude vector over the Dicke basis.
class SpinState {
 public:
  /// Validates the norm (within 1e-12).
  SpinState(SpinSystem system, CVector amplitudes);

  /// Rescales an arbitrary non-zero vector to unit norm.
  static SpinState normalized(SpinSystem system, CVector amplitudes);

  const SpinSystem& system() const { return system_; }
  const CVector& amplitudes() const { return amplitudes_; }

 private:
  SpinSystem system_;
  CVector amplitudes_;
};

struct CollectiveOperators {
  SpinSystem system;
  CMatrix jx;
  CMatrix jy;
  CMatrix jz;
  Eigen::MatrixXd jz2;
};

/// Jz diagonal in m; Jx, Jy from the ladder elements
/// <j,m+1|J+|j,m> = sqrt(j(j+1) - m(m+1)).
CollectiveOperators build_collective_ops(const SpinSystem& system);

SpinState dicke_state(const SpinSystem& system, double m);

/// exp(i t H) for Hermitian H, via its eigendecomposition.
CMatrix exp_i_hermitian(const CMatrix& hermitian, double t);

/// R(theta, phi) = exp{i theta [Jx sin(phi) - Jy cos(phi)]}.
CMatrix rotation_operator(const CollectiveOperators& ops, double theta, double phi);

/// R(theta, phi)|j,j>: a product of identical qubits pointing along
/// (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)).
SpinState spin_coherent_state(const CollectiveOperators& ops, double theta, double phi);

/// One period of the kicked top: the turn exp(-i p Jy) followed by the
/// twist exp(-i kappa Jz^2 / 2j). The unitary is stored together with its
/// eigenphase decomposition F|Phi_m> = exp(i Phi_m)|Phi_m>.
class FloquetOperator {
 public:
  FloquetOperator(const CollectiveOperators& ops, double kappa, double p);

  const SpinSystem& system() const { return system_; }
  double kappa() const { return kappa_; }
  double p() const { return p_; }
  const CMatrix& matrix() const { return matrix_; }
  const Eigen::VectorXd& eigenphases() const { return eigenphases_; }
  const CMatrix& eigenvectors() const { return eigenvectors_; }

  /// Components <Phi_m|psi> of a state in the Floquet eigenbasis.
  CVector spectral_coefficients(const SpinState& state) const;

  /// sum_m c_m exp(i n Phi_m)|Phi_m>.
  CVector reconstruct(const CVector& coefficients, long kicks) const;

 private:
  SpinSystem system_;
  double kappa_;
  double p_;
  CMatrix matrix_;
  Eigen::VectorXd eigenphases_;
  CMatrix eigenvectors_;
};

FloquetOperator floquet_operator(const CollectiveOperators& ops, double kappa, double p);

/// F^n |psi> through the eigenphase form.
SpinState evolve(const SpinState& state, const FloquetOperator& floquet, long kicks);

/// First moments <J_a> and symmetrized second moments <J_a J_b + J_b J_a>.
/// Uses the tridiagonal ladder structure, O(dim).
MomentSet moments(const SpinState& state);

}  // namespace qkt
