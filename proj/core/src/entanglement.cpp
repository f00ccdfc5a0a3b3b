#include "kickedtop/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qkt {

namespace {

constexpr double kDensityTolerance = 1e-10;
// Eigenvalues of rho at or below this are roundoff of an exact zero.
constexpr double kRankCutoff = 1e-12;

Eigen::Matrix4cd spin_flip() {
  return kron(pauli(1), pauli(1));
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
  }
  return out;
}

}  // namespace

TwoQubitDensity::TwoQubitDensity(const Eigen::Matrix4cd& matrix) : matrix_(matrix) {
  const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= kDensityTolerance)) {
    throw NumericalError("TwoQubitDensity: matrix is not Hermitian (defect " +
                         std::to_string(asym) + ")");
  }
  const Complex trace = matrix_.trace();
  if (!(std::abs(trace - 1.0) <= kDensityTolerance)) {
    throw NumericalError("TwoQubitDensity: trace " + std::to_string(trace.real()) +
                         " differs from 1");
  }
}

Eigen::Vector4d TwoQubitDensity::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

const Eigen::Matrix2cd& pauli(int axis) {
  static const Eigen::Matrix2cd matrices[3] = {
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  if (axis < 0 || axis > 2) {
    throw std::out_of_range("pauli: axis must be 0, 1 or 2");
  }
  return matrices[axis];
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

TwoQubitDensity reduce_to_pair(const MomentSet& moments, int qubits) {
  if (qubits < 2) {
    throw std::invalid_argument("reduce_to_pair: pairwise reduction needs N >= 2, got " +
                                std::to_string(qubits));
  }
  const double n = qubits;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();

  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity();
  for (int a = 0; a < 3; ++a) {
    const double s = 2.0 * moments.first(a) / n;
    rho += s * (kron(pauli(a), id) + kron(id, pauli(a)));
    for (int b = 0; b < 3; ++b) {
      const double t =
          (2.0 * moments.second_sym(a, b) - (a == b ? n : 0.0)) / (n * (n - 1.0));
      rho += t * kron(pauli(a), pauli(b));
    }
  }
  rho *= 0.25;
  // Symmetrize away the last ulp of roundoff in the Hermitian part.
  return TwoQubitDensity(0.5 * (rho + rho.adjoint()));
}

TwoQubitDensity pair_oracle(const SpinState& state) {
  const int n = state.system().qubits();
  if (n < 2 || n > kPairOracleMaxQubits) {
    throw std::invalid_argument("pair_oracle: needs 2 <= N <= " +
                                std::to_string(kPairOracleMaxQubits) + ", got " +
                                std::to_string(n));
  }
  const std::size_t full_dim = std::size_t{1} << n;
  const std::size_t rest_dim = full_dim >> 2;

  // Qubit 1 is the most significant bit; a set bit is spin up. A Dicke
  // index k counts the up spins.
  std::vector<Complex> full(full_dim);
  for (std::size_t b = 0; b < full_dim; ++b) {
    const int ups = __builtin_popcountll(b);
    full[b] = state.amplitudes()(ups) / std::sqrt(binomial(n, ups));
  }

  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 4; ++col) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < rest_dim; ++r) {
        acc += full[row * rest_dim + r] * std::conj(full[col * rest_dim + r]);
      }
      // Pair index 3 (both bits set) is |uu>, the first basis vector.
      rho(3 - row, 3 - col) = acc;
    }
  }
  return TwoQubitDensity(rho);
}

double linear_entropy(const TwoQubitDensity& rho) {
  const Eigen::Matrix4cd& m = rho.matrix();
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return 1.0 - m.cwiseAbs2().sum();
}

double concurrence(const TwoQubitDensity& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("concurrence: eigendecomposition failed");
  }
  const Eigen::Vector4d& p = solver.eigenvalues();
  if (p.minCoeff() < -kDensityTolerance) {
    throw NumericalError("concurrence: density matrix eigenvalue " +
                         std::to_string(p.minCoeff()) + " below -1e-10");
  }

  const int kept = static_cast<int>((p.array() > kRankCutoff).count());
  if (kept == 0) {
    return 0.0;
  }
  Eigen::MatrixXcd w(4, kept);
  for (int k = 0, col = 0; k < 4; ++k) {
    if (p(k) > kRankCutoff) {
      w.col(col++) = std::sqrt(p(k)) * solver.eigenvectors().col(k);
    }
  }

  const Eigen::MatrixXcd tau = w.transpose() * spin_flip() * w;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(tau);
  std::array<double, 4> lambda{0.0, 0.0, 0.0, 0.0};
  const auto& sv = svd.singularValues();
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    lambda[k] = sv(k);
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

}  // namespace qkt
