#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "jdpd/circuit.hpp"
#include "jdpd/grid.hpp"

namespace jdpd {

// Real matrix stored by diagonals, offsets in [-lo, +hi]. diag(k) holds
// A(i, i+k) at index i; entries outside the matrix are unused. Dense
// operators (spectral differentiation) use lo = hi = n-1.
class BandedReal {
 public:
  BandedReal() = default;
  BandedReal(int n, int lo, int hi);

  int size() const { return n_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }

  double* diag(int offset);              // offset in [-lo, hi]
  const double* diag(int offset) const;
  double at(int i, int j) const;         // 0 outside the band
  void set(int i, int j, double v);

  // y = A x (+ extra_diag elementwise if given)
  void apply(const std::complex<double>* x, std::complex<double>* y,
             const double* extra_diag = nullptr) const;
  // Y = A X, column-major n x n; extra_diag adds to the main diagonal.
  void apply_matrix(const std::complex<double>* X, std::complex<double>* Y,
                    const double* extra_diag = nullptr) const;
  // Y += s * X * A^T, column-major.
  void accumulate_right_transpose(double s, const std::complex<double>* X,
                                  std::complex<double>* Y) const;

  Eigen::MatrixXd dense() const;
  double gershgorin_bound() const;  // max_i sum_j |A(i,j)|

  friend BandedReal operator*(const BandedReal& a, const BandedReal& b);
  BandedReal& operator*=(double s);
  BandedReal& operator+=(const BandedReal& other);  // bands must fit
  static BandedReal diagonal(const std::vector<double>& d);

 private:
  int n_ = 0, lo_ = 0, hi_ = 0;
  std::vector<double> d_;  // (lo+hi+1) rows of length n, row b = offset b-lo
};

enum class DiffMode { Stencil5, Spectral };

// Discrete phase-space operators on a grid. The annihilation operator is the
// harmonic-configuration one, a = (phi/lambda + i lambda n)/sqrt(2); with
// n = -i d/dphi it is the real operator (phi/lambda + lambda d/dphi)/sqrt(2).
struct OperatorSet {
  PhaseGrid grid;
  DiffMode mode = DiffMode::Stencil5;
  double kinetic_coeff_rad_ns = 0.0;  // A in H = (A/2) n^2 + U
  double lambda_rad = 0.0;
  double omega0_rad_ns = 0.0;
  double e_l_rad_ns = 0.0;

  std::vector<double> phi;  // grid coordinates
  BandedReal d1;            // d/dphi (antisymmetric)
  BandedReal kinetic;       // -(A/2) d2/dphi2 (symmetric), rad/ns
  BandedReal a_op;          // annihilation (real)
  BandedReal n_photon;     // a^dagger a, built as the exact discrete product

  bool coarse_grid_warning = false;  // spacing above lambda/2
};

// Throws std::domain_error when spacing exceeds the zero-point length lambda;
// the message names the n_points needed for lambda/2 resolution.
OperatorSet build_operators(const PhaseGrid& grid, const DeviceParams& params,
                            DiffMode mode = DiffMode::Stencil5);

// Diagonal of the potential + drive term in rad/ns:
// V_i = 2 pi U(phi_i)/h - E_L * drive_phi0 * phi_i, drive_phi0 = 2 pi L I / Phi0.
void potential_diagonal_rad_ns(const OperatorSet& ops, const DeviceParams& params,
                               const FluxBias& bias, double drive_current_uA,
                               std::vector<double>& out);

// Dense H = kinetic + diag(V) for eigenproblems, rad/ns.
Eigen::MatrixXd build_hamiltonian_dense(const OperatorSet& ops, const DeviceParams& params,
                                        const FluxBias& bias, double drive_phi0 = 0.0);

}  // namespace jdpd
