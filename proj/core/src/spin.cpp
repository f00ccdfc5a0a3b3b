#include "kickedtop/spin.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qkt {

namespace {

constexpr double kNormTolerance = 1e-12;

double ladder(double j, double m) { return std::sqrt(j * (j + 1.0) - m * (m + 1.0)); }

void require_same_system(const SpinSystem& a, const SpinSystem& b, const char* where) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a.qubits()) + " vs " +
                                std::to_string(b.qubits()) + " qubits)");
  }
}

}  // namespace

SpinSystem::SpinSystem(int qubits) : qubits_(qubits) {
  if (qubits < 1) {
    throw std::invalid_argument("SpinSystem: qubit count must be >= 1, got " +
                                std::to_string(qubits));
  }
}

int SpinSystem::index_of(double m) const {
  const double shifted = m + j();
  const double rounded = std::round(shifted);
  if (std::abs(shifted - rounded) > 1e-9 || rounded < 0 || rounded > qubits_) {
    throw std::out_of_range("SpinSystem: m = " + std::to_string(m) +
                            " is not a magnetic quantum number of j = " +
                            std::to_string(j()));
  }
  return static_cast<int>(rounded);
}

SpinState::SpinState(SpinSystem system, CVector amplitudes)
    : system_(system), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != system_.dim()) {
    throw std::invalid_argument("SpinState: expected " + std::to_string(system_.dim()) +
                                " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
  const double norm = amplitudes_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTolerance) {
    throw NumericalError("SpinState: norm " + std::to_string(norm) + " deviates from 1");
  }
}

SpinState SpinState::normalized(SpinSystem system, CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("SpinState::normalized: zero or non-finite vector");
  }
  amplitudes /= norm;
  return SpinState(system, std::move(amplitudes));
}

CollectiveOperators build_collective_ops(const SpinSystem& system) {
  const int dim = system.dim();
  const double j = system.j();

  CMatrix jplus = CMatrix::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; ++k) {
    jplus(k + 1, k) = ladder(j, system.m_at(k));
  }

  CollectiveOperators ops{system, {}, {}, {}, {}};
  ops.jx = 0.5 * (jplus + jplus.adjoint());
  ops.jy = Complex(0.0, -0.5) * (jplus - jplus.adjoint());
  ops.jz = CMatrix::Zero(dim, dim);
  ops.jz2 = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double m = system.m_at(k);
    ops.jz(k, k) = m;
    ops.jz2(k, k) = m * m;
  }
  return ops;
}

SpinState dicke_state(const SpinSystem& system, double m) {
  CVector amplitudes = CVector::Zero(system.dim());
  amplitudes(system.index_of(m)) = 1.0;
  return SpinState(system, std::move(amplitudes));
}

CMatrix exp_i_hermitian(const CMatrix& hermitian, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("exp_i_hermitian: eigendecomposition failed");
  }
  const Eigen::VectorXd& w = solver.eigenvalues();
  CVector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    phases(k) = std::polar(1.0, t * w(k));
  }
  const CMatrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

CMatrix rotation_operator(const CollectiveOperators& ops, double theta, double phi) {
  if (theta == 0.0) {
    const int dim = ops.system.dim();
    return CMatrix::Identity(dim, dim);
  }
  const CMatrix generator = std::sin(phi) * ops.jx - std::cos(phi) * ops.jy;
  return exp_i_hermitian(generator, theta);
}

SpinState spin_coherent_state(const CollectiveOperators& ops, double theta, double phi) {
  const int top = ops.system.dim() - 1;
  // R|j,j> is the last column of R.
  CVector amplitudes = rotation_operator(ops, theta, phi).col(top);
  return SpinState::normalized(ops.system, std::move(amplitudes));
}

FloquetOperator::FloquetOperator(const CollectiveOperators& ops, double kappa, double p)
    : system_(ops.system), kappa_(kappa), p_(p) {
  if (!(kappa >= 0.0)) {
    throw std::invalid_argument("FloquetOperator: kappa must be >= 0");
  }
  const int dim = system_.dim();
  const double twist_scale = kappa / (2.0 * system_.j());

  CVector twist(dim);
  for (int k = 0; k < dim; ++k) {
    const double m = system_.m_at(k);
    twist(k) = std::polar(1.0, -twist_scale * m * m);
  }
  const CMatrix turn = exp_i_hermitian(ops.jy, -p);
  matrix_ = twist.asDiagonal() * turn;

  // F is normal, so its Schur form is diagonal up to roundoff and the Schur
  // vectors are an orthonormal eigenbasis even for degenerate phases.
  Eigen::ComplexSchur<CMatrix> schur(matrix_);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("FloquetOperator: Schur decomposition failed");
  }
  eigenvectors_ = schur.matrixU();
  eigenphases_.resize(dim);
  for (int k = 0; k < dim; ++k) {
    eigenphases_(k) = std::arg(schur.matrixT()(k, k));
  }
}

CVector FloquetOperator::spectral_coefficients(const SpinState& state) const {
  require_same_system(state.system(), system_, "FloquetOperator::spectral_coefficients");
  return eigenvectors_.adjoint() * state.amplitudes();
}

CVector FloquetOperator::reconstruct(const CVector& coefficients, long kicks) const {
  CVector rotated(coefficients.size());
  for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
    rotated(k) = coefficients(k) *
                 std::polar(1.0, static_cast<double>(kicks) * eigenphases_(k));
  }
  return eigenvectors_ * rotated;
}

FloquetOperator floquet_operator(const CollectiveOperators& ops, double kappa, double p) {
  return FloquetOperator(ops, kappa, p);
}

SpinState evolve(const SpinState& state, const FloquetOperator& floquet, long kicks) {
  require_same_system(state.system(), floquet.system(), "evolve");
  if (kicks < 0) {
    throw std::invalid_argument("evolve: kick count must be >= 0");
  }
  if (kicks == 0) {
    return state;
  }
  return SpinState(state.system(),
                   floquet.reconstruct(floquet.spectral_coefficients(state), kicks));
}

MomentSet moments(const SpinState& state) {
  const SpinSystem& system = state.system();
  const CVector& psi = state.amplitudes();
  const int dim = system.dim();
  const double j = system.j();
  const double casimir = j * (j + 1.0);

  // <J+>, <J+^2> and <{J+, Jz}>; the J- counterparts are their conjugates.
  Complex jp = 0.0, jp2 = 0.0, jp_jz = 0.0;
  double jz = 0.0, jz2 = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double m = system.m_at(k);
    const double weight = std::norm(psi(k));
    jz += m * weight;
    jz2 += m * m * weight;
    if (k + 1 < dim) {
      const Complex step = std::conj(psi(k + 1)) * ladder(j, m) * psi(k);
      jp += step;
      jp_jz += (2.0 * m + 1.0) * step;
    }
    if (k + 2 < dim) {
      jp2 += std::conj(psi(k + 2)) * ladder(j, m + 1.0) * ladder(j, m) * psi(k);
    }
  }

  MomentSet out;
  out.first << jp.real(), jp.imag(), jz;
  auto& s = out.second_sym;
  s(0, 0) = casimir - jz2 + jp2.real();
  s(1, 1) = casimir - jz2 - jp2.real();
  s(2, 2) = 2.0 * jz2;
  s(0, 1) = s(1, 0) = jp2.imag();
  s(0, 2) = s(2, 0) = jp_jz.real();
  s(1, 2) = s(2, 1) = jp_jz.imag();
  return out;
}

}  // namespace qkt
