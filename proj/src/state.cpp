#include "jdpd/state.hpp"

#include <cmath>
#include <stdexcept>

namespace jdpd {

QuantumState QuantumState::pure(Eigen::VectorXcd v) {
  QuantumState s;
  s.mode = StateMode::PureState;
  s.psi = std::move(v);
  return s;
}

QuantumState QuantumState::density(Eigen::MatrixXcd m) {
  QuantumState s;
  s.mode = StateMode::DensityMatrix;
  s.rho = std::move(m);
  return s;
}

QuantumState QuantumState::to_density() const {
  if (mode == StateMode::DensityMatrix) return *this;
  QuantumState s = density(psi * psi.adjoint());
  s.time_ns = time_ns;
  return s;
}

double QuantumState::norm_deviation() const {
  if (mode == StateMode::PureState) return std::abs(psi.squaredNorm() - 1.0);
  return std::abs(rho.trace().real() - 1.0);
}

Eigen::VectorXd QuantumState::probabilities() const {
  if (mode == StateMode::PureState) return psi.cwiseAbs2();
  return rho.diagonal().real();
}

QuantumState ground_state(const OperatorSet& ops, const DeviceParams& params,
                          const FluxBias& bias, double drive_phi0) {
  const Eigen::MatrixXd h = build_hamiltonian_dense(ops, params, bias, drive_phi0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("ground_state: eigensolver failed to converge");
  }
  Eigen::VectorXd v = solver.eigenvectors().col(0);

  // Parity-even potential: pick the even member of a (numerically) degenerate
  // double-well ground pair so that <phi> = 0 comes out by symmetry.
  const int n = static_cast<int>(v.size());
  bool even_potential = true;
  for (int i = 0; i < n / 2; ++i) {
    const double a = h(i, i), b = h(n - 1 - i, n - 1 - i);
    if (std::abs(a - b) > 1e-10 * (std::abs(a) + std::abs(b) + 1.0)) {
      even_potential = false;
      break;
    }
  }
  if (even_potential) {
    Eigen::VectorXd sym(n);
    for (int i = 0; i < n; ++i) sym[i] = v[i] + v[n - 1 - i];
    const double norm = sym.norm();
    if (norm > 1e-6) v = sym / norm;
  } else {
    v.normalize();
  }

  // Deterministic global sign: largest-magnitude component positive.
  int imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0.0) v = -v;

  return QuantumState::pure(v.cast<std::complex<double>>());
}

double expectation(const QuantumState& s, const BandedReal& op, double* imag_residue) {
  const int n = s.size();
  std::complex<double> acc = 0.0;
  if (s.mode == StateMode::PureState) {
    Eigen::VectorXcd tmp(n);
    op.apply(s.psi.data(), tmp.data());
    acc = s.psi.dot(tmp);  // conjugates the left argument
  } else {
    // tr(rho op) = sum_ij rho(i,j) op(j,i)
    for (int i = 0; i < n; ++i) {
      for (int o = -op.lo(); o <= op.hi(); ++o) {
        const int j = i + o;
        if (j < 0 || j >= n) continue;
        acc += s.rho(i, j) * op.at(j, i);
      }
    }
  }
  if (imag_residue) *imag_residue = std::abs(acc.imag());
  return acc.real();
}

double expectation_diag(const QuantumState& s, const std::vector<double>& diag) {
  const Eigen::VectorXd p = s.probabilities();
  double acc = 0.0;
  for (int i = 0; i < p.size(); ++i) acc += p[i] * diag[i];
  return acc;
}

double expectation_momentum(const QuantumState& s, const BandedReal& d1) {
  const int n = s.size();
  std::complex<double> acc = 0.0;
  if (s.mode == StateMode::PureState) {
    Eigen::VectorXcd tmp(n);
    d1.apply(s.psi.data(), tmp.data());
    acc = s.psi.dot(tmp);
  } else {
    for (int i = 0; i < n; ++i) {
      for (int o = -d1.lo(); o <= d1.hi(); ++o) {
        const int j = i + o;
        if (j < 0 || j >= n) continue;
        acc += s.rho(i, j) * d1.at(j, i);
      }
    }
  }
  // n = -i d/dphi
  return (std::complex<double>(0.0, -1.0) * acc).real();
}

std::pair<double, double> well_probabilities(const QuantumState& s, const OperatorSet& ops,
                                             double barrier_position_rad) {
  if (s.size() != static_cast<int>(ops.phi.size())) {
    throw std::invalid_argument("well_probabilities: state/grid size mismatch");
  }
  const Eigen::VectorXd p = s.probabilities();
  double left = 0.0, right = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    (ops.phi[i] < barrier_position_rad ? left : right) += p[i];
  }
  return {left, right};
}

}  // namespace jdpd
