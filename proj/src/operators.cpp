#include "jdpd/operators.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "jdpd/constants.hpp"
#include "jdpd/potential.hpp"

namespace jdpd {

void validate(const PhaseGrid& g) {
  if (g.n_points < 32) {
    throw std::invalid_argument("PhaseGrid: n_points must be at least 32");
  }
  if (!(g.phi_max > g.phi_min)) {
    throw std::invalid_argument("PhaseGrid: phi_max must exceed phi_min");
  }
}

BandedReal::BandedReal(int n, int lo, int hi) : n_(n), lo_(lo), hi_(hi) {
  assert(lo >= 0 && hi >= 0 && lo < n && hi < n);
  d_.assign(static_cast<size_t>(lo + hi + 1) * n, 0.0);
}

double* BandedReal::diag(int offset) { return d_.data() + static_cast<size_t>(offset + lo_) * n_; }
const double* BandedReal::diag(int offset) const {
  return d_.data() + static_cast<size_t>(offset + lo_) * n_;
}

double BandedReal::at(int i, int j) const {
  const int o = j - i;
  if (o < -lo_ || o > hi_) return 0.0;
  return diag(o)[i];
}

void BandedReal::set(int i, int j, double v) {
  const int o = j - i;
  assert(o >= -lo_ && o <= hi_);
  diag(o)[i] = v;
}

void BandedReal::apply(const std::complex<double>* x, std::complex<double>* y,
                       const double* extra_diag) const {
  for (int i = 0; i < n_; ++i) y[i] = 0.0;
  for (int o = -lo_; o <= hi_; ++o) {
    const double* c = diag(o);
    const int i0 = std::max(0, -o);
    const int i1 = std::min(n_, n_ - o);
    for (int i = i0; i < i1; ++i) y[i] += c[i] * x[i + o];
  }
  if (extra_diag) {
    for (int i = 0; i < n_; ++i) y[i] += extra_diag[i] * x[i];
  }
}

void BandedReal::apply_matrix(const std::complex<double>* X, std::complex<double>* Y,
                              const double* extra_diag) const {
  const int n = n_;
  for (int j = 0; j < n; ++j) {
    const std::complex<double>* xc = X + static_cast<size_t>(j) * n;
    std::complex<double>* yc = Y + static_cast<size_t>(j) * n;
    if (extra_diag) {
      for (int i = 0; i < n; ++i) yc[i] = extra_diag[i] * xc[i];
    } else {
      for (int i = 0; i < n; ++i) yc[i] = 0.0;
    }
    for (int o = -lo_; o <= hi_; ++o) {
      const double* c = diag(o);
      const int i0 = std::max(0, -o);
      const int i1 = std::min(n, n - o);
      for (int i = i0; i < i1; ++i) yc[i] += c[i] * xc[i + o];
    }
  }
}

void BandedReal::accumulate_right_transpose(double s, const std::complex<double>* X,
                                            std::complex<double>* Y) const {
  // Y(:, j) += s * sum_o A(j, j+o) X(:, j+o)
  const int n = n_;
  for (int j = 0; j < n; ++j) {
    std::complex<double>* yc = Y + static_cast<size_t>(j) * n;
    for (int o = -lo_; o <= hi_; ++o) {
      const int k = j + o;
      if (k < 0 || k >= n) continue;
      const double w = s * diag(o)[j];
      if (w == 0.0) continue;
      const std::complex<double>* xc = X + static_cast<size_t>(k) * n;
      for (int i = 0; i < n; ++i) yc[i] += w * xc[i];
    }
  }
}

Eigen::MatrixXd BandedReal::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
  for (int o = -lo_; o <= hi_; ++o) {
    const double* c = diag(o);
    const int i0 = std::max(0, -o);
    const int i1 = std::min(n_, n_ - o);
    for (int i = i0; i < i1; ++i) m(i, i + o) = c[i];
  }
  return m;
}

double BandedReal::gershgorin_bound() const {
  double best = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int o = -lo_; o <= hi_; ++o) {
      const int j = i + o;
      if (j >= 0 && j < n_) row += std::abs(diag(o)[i]);
    }
    best = std::max(best, row);
  }
  return best;
}

BandedReal operator*(const BandedReal& a, const BandedReal& b) {
  assert(a.n_ == b.n_);
  const int n = a.n_;
  const int lo = std::min(n - 1, a.lo_ + b.lo_);
  const int hi = std::min(n - 1, a.hi_ + b.hi_);
  BandedReal c(n, lo, hi);
  for (int i = 0; i < n; ++i) {
    for (int oa = -a.lo_; oa <= a.hi_; ++oa) {
      const int k = i + oa;
      if (k < 0 || k >= n) continue;
      const double va = a.diag(oa)[i];
      if (va == 0.0) continue;
      for (int ob = -b.lo_; ob <= b.hi_; ++ob) {
        const int j = k + ob;
        if (j < 0 || j >= n) continue;
        c.diag(j - i)[i] += va * b.diag(ob)[k];
      }
    }
  }
  return c;
}

BandedReal& BandedReal::operator*=(double s) {
  for (auto& v : d_) v *= s;
  return *this;
}

BandedReal& BandedReal::operator+=(const BandedReal& other) {
  assert(other.n_ == n_ && other.lo_ <= lo_ && other.hi_ <= hi_);
  for (int o = -other.lo_; o <= other.hi_; ++o) {
    const double* src = other.diag(o);
    double* dst = diag(o);
    for (int i = 0; i < n_; ++i) dst[i] += src[i];
  }
  return *this;
}

BandedReal BandedReal::diagonal(const std::vector<double>& d) {
  BandedReal b(static_cast<int>(d.size()), 0, 0);
  double* m = b.diag(0);
  for (size_t i = 0; i < d.size(); ++i) m[i] = d[i];
  return b;
}

namespace {

// 5-point central stencils with hard-wall truncation at the grid edges.
BandedReal stencil_d1(int n, double h) {
  BandedReal d(n, 2, 2);
  const double c1 = 8.0 / (12.0 * h);
  const double c2 = 1.0 / (12.0 * h);
  for (int i = 0; i < n; ++i) {
    d.diag(-2)[i] = c2;
    d.diag(-1)[i] = -c1;
    d.diag(1)[i] = c1;
    d.diag(2)[i] = -c2;
  }
  return d;
}

BandedReal stencil_d2(int n, double h) {
  BandedReal d(n, 2, 2);
  const double h2 = h * h;
  for (int i = 0; i < n; ++i) {
    d.diag(-2)[i] = -1.0 / (12.0 * h2);
    d.diag(-1)[i] = 16.0 / (12.0 * h2);
    d.diag(0)[i] = -30.0 / (12.0 * h2);
    d.diag(1)[i] = 16.0 / (12.0 * h2);
    d.diag(2)[i] = -1.0 / (12.0 * h2);
  }
  return d;
}

// Band-limited (Fourier) derivatives with periodic embedding over N*h.
// Dense Toeplitz rows assembled from the plane-wave sum; the Nyquist mode is
// dropped from the odd derivative to keep antisymmetry.
void spectral_rows(int n, double h, std::vector<double>& row1, std::vector<double>& row2) {
  row1.assign(n, 0.0);
  row2.assign(n, 0.0);
  const double period = n * h;
  for (int p = 0; p < n; ++p) {
    double s1 = 0.0, s2 = 0.0;
    for (int m = -n / 2; m < n - n / 2; ++m) {
      const double k = kTwoPi * m / period;
      const double arg = kTwoPi * m * p / n;
      if (std::abs(m) * 2 != n) s1 += -k * std::sin(arg);
      s2 += -k * k * std::cos(arg);
    }
    row1[p] = s1 / n;
    row2[p] = s2 / n;
  }
}

BandedReal spectral_op(int n, const std::vector<double>& row, bool odd) {
  BandedReal d(n, n - 1, n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // A(i, j) = row[i - j]; the odd table changes sign with its argument.
      const int p = i - j;
      double v;
      if (p >= 0) {
        v = row[p];
      } else {
        v = odd ? -row[-p] : row[-p];
      }
      d.diag(j - i)[i] = v;
    }
  }
  return d;
}

}  // namespace

OperatorSet build_operators(const PhaseGrid& grid, const DeviceParams& params, DiffMode mode) {
  validate(grid);
  const EnergyScales scales = derive_energies(params);

  OperatorSet ops;
  ops.grid = grid;
  ops.mode = mode;
  ops.kinetic_coeff_rad_ns = scales.kinetic_coeff_rad_ns();
  ops.lambda_rad = scales.lambda_rad();
  ops.omega0_rad_ns = scales.omega0_rad_ns;
  ops.e_l_rad_ns = scales.e_l_rad_ns();

  const int n = grid.n_points;
  const double h = grid.spacing();
  if (h > ops.lambda_rad) {
    const int needed =
        static_cast<int>(std::ceil((grid.phi_max - grid.phi_min) / (0.5 * ops.lambda_rad))) + 1;
    throw std::domain_error(
        "PhaseGrid spacing " + std::to_string(h) + " rad exceeds the zero-point length " +
        std::to_string(ops.lambda_rad) + " rad; use at least n_points = " +
        std::to_string(needed) + " over this interval");
  }
  ops.coarse_grid_warning = (h > 0.5 * ops.lambda_rad);

  ops.phi.resize(n);
  for (int i = 0; i < n; ++i) ops.phi[i] = grid.point(i);

  if (mode == DiffMode::Stencil5) {
    ops.d1 = stencil_d1(n, h);
    ops.kinetic = stencil_d2(n, h);
  } else {
    std::vector<double> row1, row2;
    spectral_rows(n, h, row1, row2);
    ops.d1 = spectral_op(n, row1, true);
    ops.kinetic = spectral_op(n, row2, false);
  }
  ops.kinetic *= -0.5 * ops.kinetic_coeff_rad_ns;

  // a = (phi/lambda + lambda d/dphi)/sqrt(2), real in the phase representation.
  const double c1 = 1.0 / (std::sqrt(2.0) * ops.lambda_rad);
  const double c2 = ops.lambda_rad / std::sqrt(2.0);
  BandedReal a = ops.d1;
  a *= c2;
  std::vector<double> phi_scaled(ops.phi);
  for (auto& v : phi_scaled) v *= c1;
  a += BandedReal::diagonal(phi_scaled);
  ops.a_op = a;

  // a^dagger = c1 phi - c2 d1 (the discrete d1 is exactly antisymmetric).
  BandedReal adag = ops.d1;
  adag *= -c2;
  adag += BandedReal::diagonal(phi_scaled);
  ops.n_photon = adag * a;

  return ops;
}

void potential_diagonal_rad_ns(const OperatorSet& ops, const DeviceParams& params,
                               const FluxBias& bias, double drive_current_uA,
                               std::vector<double>& out) {
  const int n = static_cast<int>(ops.phi.size());
  out.resize(n);
  const double e_l = ops.e_l_rad_ns;
  const double jp = b_plus(params) * std::cos(bias.phi_plus);
  const double jm = b_minus(params) * std::sin(bias.phi_plus);
  const double pm = bias.phi_minus;
  const double drive_phi0 =
      drive_current_uA * 1e-6 * params.l_center_pH * 1e-12 / kPhi0Bar;
  for (int i = 0; i < n; ++i) {
    const double phi = ops.phi[i];
    out[i] = e_l * (0.5 * phi * phi - jp * std::cos(phi + pm) + jm * std::sin(phi + pm) -
                    drive_phi0 * phi);
  }
}

Eigen::MatrixXd build_hamiltonian_dense(const OperatorSet& ops, const DeviceParams& params,
                                        const FluxBias& bias, double drive_phi0) {
  Eigen::MatrixXd h = ops.kinetic.dense();
  const int n = static_cast<int>(ops.phi.size());
  const double e_l = ops.e_l_rad_ns;
  const double jp = b_plus(params) * std::cos(bias.phi_plus);
  const double jm = b_minus(params) * std::sin(bias.phi_plus);
  const double pm = bias.phi_minus;
  for (int i = 0; i < n; ++i) {
    const double phi = ops.phi[i];
    h(i, i) += e_l * (0.5 * phi * phi - jp * std::cos(phi + pm) + jm * std::sin(phi + pm) -
                      drive_phi0 * phi);
  }
  return h;
}

}  // namespace jdpd
