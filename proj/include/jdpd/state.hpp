#pragma once

#include <complex>

#include <Eigen/Dense>

#include "jdpd/operators.hpp"

namespace jdpd {

enum class StateMode { DensityMatrix, PureState };

struct QuantumState {
  StateMode mode = StateMode::PureState;
  Eigen::VectorXcd psi;   // PureState
  Eigen::MatrixXcd rho;   // DensityMatrix
  double time_ns = 0.0;

  int size() const {
    return mode == StateMode::PureState ? static_cast<int>(psi.size())
                                        : static_cast<int>(rho.rows());
  }
  static QuantumState pure(Eigen::VectorXcd v);
  static QuantumState density(Eigen::MatrixXcd m);
  QuantumState to_density() const;

  double norm_deviation() const;           // | ||psi||^2 - 1 | or | tr rho - 1 |
  Eigen::VectorXd probabilities() const;   // |psi_i|^2 or Re diag(rho)
};

// Lowest eigenstate of H(bias, drive) on the operator grid. On a numerically
// parity-even potential the even combination of a near-degenerate ground pair
// is returned, and the global phase is fixed deterministically.
QuantumState ground_state(const OperatorSet& ops, const DeviceParams& params,
                          const FluxBias& bias, double drive_phi0 = 0.0);

// tr(rho op) / <psi|op|psi> for a real banded operator; imaginary residue of
// the trace is returned through *imag_residue when non-null.
double expectation(const QuantumState& s, const BandedReal& op, double* imag_residue = nullptr);
double expectation_diag(const QuantumState& s, const std::vector<double>& diag);
// Conjugate-momentum expectation <-i d/dphi>.
double expectation_momentum(const QuantumState& s, const BandedReal& d1);

// Grid-cell sums of the probability diagonal on either side of the barrier.
std::pair<double, double> well_probabilities(const QuantumState& s, const OperatorSet& ops,
                                             double barrier_position_rad);

}  // namespace jdpd
